#pragma once

#include "pvoigt/grid.hpp"
#include "pvoigt/kernel_expansion.hpp"
#include "pvoigt/pseudo_voigt.hpp"
#include "pvoigt/reference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvoigt {

/// Rectangular evaluation grid: x_steps uniform points on [x_min, x_max]
/// (endpoints included) crossed with an increasing list of y levels.
template <class Scalar>
struct ScanGrid {
    Scalar x_min = Scalar(0);
    Scalar x_max = Scalar(10);
    int x_steps = 1001;
    std::vector<Scalar> y_values{Scalar(0), Scalar(0.1), Scalar(0.5), Scalar(1)};
};

template <class Scalar>
void validate(const ScanGrid<Scalar>& grid) {
    if (!std::isfinite(grid.x_min) || !std::isfinite(grid.x_max) || !(grid.x_min < grid.x_max))
        throw std::invalid_argument("ScanGrid: need finite x_min < x_max");
    if (grid.x_steps < 2)
        throw std::invalid_argument("ScanGrid: x_steps must be >= 2");
    if (grid.y_values.empty())
        throw std::invalid_argument("ScanGrid: y_values must be non-empty");
    Scalar prev = -std::numeric_limits<Scalar>::infinity();
    for (Scalar y : grid.y_values) {
        if (!std::isfinite(y) || y < Scalar(0))
            throw std::invalid_argument("ScanGrid: every y must be finite and >= 0");
        if (!(y > prev))
            throw std::invalid_argument("ScanGrid: y_values must be strictly increasing");
        prev = y;
    }
}

template <class Scalar>
struct DiscrepancyRow {
    Scalar x{}, y{};
    Scalar k_approx{}, l_approx{};
    Scalar k_ref{}, l_ref{};
    Scalar delta_re{}, delta_im{};
};

/// A maximum together with where it was attained.
template <class Scalar>
struct Extremum {
    Scalar value{};
    Scalar x{};
    Scalar y{};
};

template <class Scalar>
struct DiscrepancyReport {
    std::vector<DiscrepancyRow<Scalar>> rows; ///< y-major, x ascending
    Extremum<Scalar> max_re{};
    Extremum<Scalar> max_im{};
};

/// Per-y summary of a report.
template <class Scalar>
struct PerYMaxima {
    Scalar y{};
    Extremum<Scalar> max_re{};
    Extremum<Scalar> max_im{};
};

/// Thrown when the oracle fails at a grid point; carries the coordinates.
class ScanError : public std::runtime_error {
public:
    ScanError(double x, double y, const std::string& cause)
        : std::runtime_error("scan: oracle failure at x=" + std::to_string(x) +
                             ", y=" + std::to_string(y) + ": " + cause),
          x_(x), y_(y) {}

    double x() const { return x_; }
    double y() const { return y_; }

private:
    double x_;
    double y_;
};

/// Compare the rational approximation against the quadrature reference over
/// the grid. Rows are emitted y-major with x ascending; maxima are tracked
/// with first-found-wins tie-breaking, so the output is deterministic.
template <class Scalar>
DiscrepancyReport<Scalar> scan(const ScanGrid<Scalar>& grid, PseudoVoigtParams<Scalar> p = {},
                               const QuadratureConfig<Scalar>& cfg = {}) {
    validate(grid);
    detail::check_config(cfg);

    const auto xs = linspace(grid.x_min, grid.x_max, grid.x_steps);
    DiscrepancyReport<Scalar> report;
    report.rows.reserve(static_cast<std::size_t>(grid.x_steps) * grid.y_values.size());

    for (Scalar y : grid.y_values) {
        for (Eigen::Index i = 0; i < xs.size(); ++i) {
            const ComplexArgument<Scalar> arg{xs[i], y};
            const FaddeevaValue<Scalar> approx = faddeeva_approx(arg, p);
            Scalar kr, lr;
            try {
                kr = k_reference(arg, cfg);
                lr = l_reference(arg, cfg);
            } catch (const QuadratureError& e) {
                throw ScanError(static_cast<double>(arg.x), static_cast<double>(arg.y), e.what());
            }
            DiscrepancyRow<Scalar> row{arg.x,     arg.y,     approx.re,
                                       approx.im, kr,        lr,
                                       std::abs(kr - approx.re), std::abs(lr - approx.im)};
            if (report.rows.empty() || row.delta_re > report.max_re.value)
                report.max_re = {row.delta_re, row.x, row.y};
            if (report.rows.empty() || row.delta_im > report.max_im.value)
                report.max_im = {row.delta_im, row.x, row.y};
            report.rows.push_back(row);
        }
    }
    return report;
}

/// Rowwise per-y maxima, in the order the y levels appear in the report.
template <class Scalar>
std::vector<PerYMaxima<Scalar>> per_y_maxima(const DiscrepancyReport<Scalar>& report) {
    std::vector<PerYMaxima<Scalar>> out;
    for (const auto& row : report.rows) {
        if (out.empty() || out.back().y != row.y) {
            out.push_back({row.y,
                           {row.delta_re, row.x, row.y},
                           {row.delta_im, row.x, row.y}});
            continue;
        }
        auto& cur = out.back();
        if (row.delta_re > cur.max_re.value)
            cur.max_re = {row.delta_re, row.x, row.y};
        if (row.delta_im > cur.max_im.value)
            cur.max_im = {row.delta_im, row.x, row.y};
    }
    return out;
}

/// One row of the kernel decomposition table: the two expansion terms, their
/// sum, the Gaussian they approximate, and the residual.
template <class Scalar>
struct KernelProfileRow {
    Scalar t{}, f0{}, f1{}, sum{}, exact{}, epsilon{};
};

/// Tabulate the two-term kernel against e^(-t^2) on a uniform t grid.
template <class Scalar>
std::vector<KernelProfileRow<Scalar>> kernel_profile(Scalar t_min, Scalar t_max, int steps) {
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max))
        throw std::invalid_argument("kernel_profile: need finite t_min < t_max");
    if (steps < 2)
        throw std::invalid_argument("kernel_profile: steps must be >= 2");

    const auto coeff = default_coefficients<Scalar>();
    const Scalar a0 = coeff.alpha()[0], b0 = coeff.beta()[0];
    const Scalar a1 = coeff.alpha()[1], b1 = coeff.beta()[1];

    const auto ts = linspace(t_min, t_max, static_cast<Eigen::Index>(steps));
    std::vector<KernelProfileRow<Scalar>> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const Scalar t = ts[i];
        const Scalar at = std::abs(t);
        KernelProfileRow<Scalar> row;
        row.t = t;
        row.f0 = a0 * std::exp(-b0 * at);
        row.f1 = a1 * at * std::exp(-b1 * at);
        row.sum = row.f0 + row.f1;
        row.exact = std::exp(-t * t);
        row.epsilon = row.exact - row.sum;
        rows.push_back(row);
    }
    return rows;
}

/// Which component of w a max-discrepancy search targets.
enum class Component { real_part, imag_part };

template <class Scalar>
struct MaxDiscrepancy {
    Scalar value{};
    Scalar x{};
};

/// Largest |reference - approximation| for one component along x in [0, x_max]
/// at fixed y: coarse uniform scan, then golden-section refinement inside the
/// bracket around the best coarse cell. The refined result is never below the
/// coarse maximum, and the argmax is resolved to better than 1e-6 in x.
template <class Scalar>
MaxDiscrepancy<Scalar> find_max_discrepancy(PseudoVoigtParams<Scalar> p,
                                            const QuadratureConfig<Scalar>& cfg, Component which,
                                            Scalar y, Scalar x_max, int coarse_steps = 2001) {
    if (!std::isfinite(y) || y < Scalar(0))
        throw std::domain_error("find_max_discrepancy: y must be finite and >= 0");
    if (!std::isfinite(x_max) || !(x_max > Scalar(0)))
        throw std::domain_error("find_max_discrepancy: x_max must be positive and finite");
    if (coarse_steps < 2)
        throw std::invalid_argument("find_max_discrepancy: coarse_steps must be >= 2");
    detail::check_config(cfg);

    auto delta = [&](Scalar x) {
        const ComplexArgument<Scalar> arg{x, y};
        try {
            if (which == Component::real_part)
                return std::abs(k_reference(arg, cfg) - voigt_k_approx(arg, p));
            return std::abs(l_reference(arg, cfg) - voigt_l_approx(arg, p));
        } catch (const QuadratureError& e) {
            throw ScanError(static_cast<double>(x), static_cast<double>(y), e.what());
        }
    };

    const auto xs = linspace(Scalar(0), x_max, static_cast<Eigen::Index>(coarse_steps));
    MaxDiscrepancy<Scalar> best{delta(xs[0]), xs[0]};
    Eigen::Index best_idx = 0;
    for (Eigen::Index i = 1; i < xs.size(); ++i) {
        const Scalar v = delta(xs[i]);
        if (v > best.value) {
            best = {v, xs[i]};
            best_idx = i;
        }
    }

    // Golden-section maximization inside the bracket of neighboring cells.
    Scalar lo = xs[best_idx > 0 ? best_idx - 1 : 0];
    Scalar hi = xs[best_idx + 1 < xs.size() ? best_idx + 1 : xs.size() - 1];
    constexpr Scalar inv_phi = Scalar(0.6180339887498948482L);
    Scalar c = hi - inv_phi * (hi - lo);
    Scalar d = lo + inv_phi * (hi - lo);
    Scalar fc = delta(c);
    Scalar fd = delta(d);
    const Scalar x_tol = Scalar(1e-7);
    while (hi - lo > x_tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = delta(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = delta(d);
        }
        const Scalar v = std::max(fc, fd);
        if (v > best.value)
            best = {v, fc > fd ? c : d};
    }
    return best;
}

} // namespace pvoigt
