#pragma once

#include "pvoigt/grid.hpp"
#include "pvoigt/kernel_expansion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pvoigt {

enum class FitObjective { l2, linf };

/// Controls for fit_expansion. The residual is measured on a uniform grid of
/// grid_points samples over [0, t_max] (evenness makes negative t redundant);
/// l2 is the sum of squared residuals, linf the largest absolute one.
template <class Scalar>
struct FitOptions {
    int n_terms = 2;
    Scalar t_max = Scalar(5);
    FitObjective objective = FitObjective::linf;
    Eigen::Index grid_points = 2001;
    int max_iterations = 20000; ///< simplex iterations per start
    /// When set, optimize from this single start instead of the multi-start
    /// sweep. Must have exactly n_terms terms.
    std::optional<KernelExpansion<Scalar>> initial;
};

template <class Scalar>
struct FitResult {
    KernelExpansion<Scalar> expansion;
    Scalar objective_value{};
    bool converged = false;
    long iterations = 0; ///< simplex iterations summed over all starts
};

/// Objective of an existing expansion on the same grid fit_expansion uses;
/// lets callers compare fitted coefficients against fixed ones.
template <class Scalar>
Scalar expansion_objective(const KernelExpansion<Scalar>& e, Scalar t_max, FitObjective objective,
                           Eigen::Index grid_points = 2001) {
    const auto ts = linspace(Scalar(0), t_max, grid_points);
    Scalar linf = Scalar(0), l2 = Scalar(0);
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        const Scalar r = epsilon_error(e, ts[i]);
        linf = std::max(linf, std::abs(r));
        l2 += r * r;
    }
    return objective == FitObjective::linf ? linf : l2;
}

namespace detail {

template <class Scalar>
struct SimplexOutcome {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
    Scalar f{};
    long iterations = 0;
    bool converged = false;
};

/// Deterministic Nelder-Mead minimization (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Ties in the vertex ordering break by index,
/// so identical inputs walk an identical path.
template <class Scalar, class F>
SimplexOutcome<Scalar> nelder_mead(F&& objective,
                                   const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& start,
                                   int max_iterations) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index dim = start.size();
    const Scalar f_tol = Scalar(1e-14);
    const Scalar x_tol = Scalar(1e-10);

    std::vector<Vector> verts(dim + 1, start);
    for (Eigen::Index j = 0; j < dim; ++j) {
        if (start[j] != Scalar(0))
            verts[j + 1][j] *= Scalar(1.05);
        else
            verts[j + 1][j] = Scalar(2.5e-4);
    }
    std::vector<Scalar> fv(dim + 1);
    for (Eigen::Index v = 0; v <= dim; ++v)
        fv[v] = objective(verts[v]);

    std::vector<Eigen::Index> order(dim + 1);
    std::iota(order.begin(), order.end(), 0);

    SimplexOutcome<Scalar> out;
    long it = 0;
    for (; it < max_iterations; ++it) {
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return fv[a] < fv[b]; });
        const Eigen::Index lo = order[0], hi = order[dim];

        Scalar f_spread = Scalar(0), x_spread = Scalar(0);
        for (Eigen::Index v = 1; v <= dim; ++v) {
            f_spread = std::max(f_spread, std::abs(fv[order[v]] - fv[lo]));
            x_spread = std::max(x_spread,
                                (verts[order[v]] - verts[lo]).template lpNorm<Eigen::Infinity>());
        }
        if (f_spread <= f_tol && x_spread <= x_tol) {
            out.converged = true;
            break;
        }

        Vector centroid = Vector::Zero(dim);
        for (Eigen::Index v = 0; v <= dim; ++v)
            if (order[v] != hi)
                centroid += verts[order[v]];
        centroid /= Scalar(dim);

        const Vector reflected = centroid + (centroid - verts[hi]);
        const Scalar f_reflected = objective(reflected);

        if (f_reflected < fv[lo]) {
            const Vector expanded = centroid + Scalar(2) * (centroid - verts[hi]);
            const Scalar f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                verts[hi] = expanded;
                fv[hi] = f_expanded;
            } else {
                verts[hi] = reflected;
                fv[hi] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fv[order[dim - 1]]) {
            verts[hi] = reflected;
            fv[hi] = f_reflected;
            continue;
        }
        const bool outside = f_reflected < fv[hi];
        const Vector contracted =
            outside ? Vector(centroid + Scalar(0.5) * (reflected - centroid))
                    : Vector(centroid + Scalar(0.5) * (verts[hi] - centroid));
        const Scalar f_contracted = objective(contracted);
        if (f_contracted < (outside ? f_reflected : fv[hi])) {
            verts[hi] = contracted;
            fv[hi] = f_contracted;
            continue;
        }
        for (Eigen::Index v = 0; v <= dim; ++v) { // shrink toward the best vertex
            if (order[v] == lo)
                continue;
            verts[order[v]] = verts[lo] + Scalar(0.5) * (verts[order[v]] - verts[lo]);
            fv[order[v]] = objective(verts[order[v]]);
        }
    }

    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return fv[a] < fv[b]; });
    out.x = verts[order[0]];
    out.f = fv[order[0]];
    out.iterations = it;
    return out;
}

} // namespace detail

/// Fit an n-term expansion of e^(-t^2) with alpha_0 pinned to 1 (so the fit
/// is exact at t = 0) and every beta constrained positive.
///
/// Parameters are packed as [beta_0..beta_{n-1}, alpha_1..alpha_{n-1}] and
/// minimized with Nelder-Mead. Without an explicit initial expansion the
/// search multi-starts from a coarse log-spaced beta grid, seeding the free
/// alphas by linear least squares at each start; starts run in a fixed order
/// and the first strict improvement wins, so the result is deterministic.
/// On hitting the iteration cap the best point found so far is still
/// returned, flagged converged = false.
template <class Scalar>
FitResult<Scalar> fit_expansion(const FitOptions<Scalar>& opt) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    const int n = opt.n_terms;
    if (n < 1)
        throw std::invalid_argument("fit_expansion: n_terms must be >= 1");
    if (!std::isfinite(opt.t_max) || !(opt.t_max > Scalar(0)))
        throw std::invalid_argument("fit_expansion: t_max must be positive and finite");
    if (opt.grid_points < 2)
        throw std::invalid_argument("fit_expansion: grid_points must be >= 2");
    if (opt.initial && opt.initial->terms() != n)
        throw std::invalid_argument("fit_expansion: initial expansion must have n_terms terms");

    const auto ts = linspace(Scalar(0), opt.t_max, opt.grid_points);
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
    const Array target = (-ts.square()).exp();

    // Powers t^k for k = 0..n-1, reused by every objective evaluation.
    std::vector<Array> tpow(static_cast<std::size_t>(n));
    tpow[0] = Array::Ones(ts.size());
    for (int k = 1; k < n; ++k)
        tpow[static_cast<std::size_t>(k)] = tpow[static_cast<std::size_t>(k - 1)] * ts;

    auto objective = [&](const Vector& p) -> Scalar {
        for (int k = 0; k < n; ++k)
            if (!(p[k] > Scalar(0)) || !std::isfinite(p[k]))
                return std::numeric_limits<Scalar>::infinity();
        Array model = (-p[0] * ts).exp();
        for (int k = 1; k < n; ++k)
            model += p[n + k - 1] * tpow[static_cast<std::size_t>(k)] * (-p[k] * ts).exp();
        const Array resid = target - model;
        return opt.objective == FitObjective::linf ? resid.abs().maxCoeff()
                                                   : resid.square().sum();
    };

    // Least-squares seed for the linear-in-alpha part, given fixed betas.
    auto seed_alphas = [&](const Vector& betas) -> Vector {
        if (n == 1)
            return Vector(0);
        Matrix design(ts.size(), n - 1);
        for (int k = 1; k < n; ++k)
            design.col(k - 1) =
                (tpow[static_cast<std::size_t>(k)] * (-betas[k] * ts).exp()).matrix();
        const Vector rhs = (target - (-betas[0] * ts).exp()).matrix();
        return design.colPivHouseholderQr().solve(rhs);
    };

    std::vector<Vector> starts;
    if (opt.initial) {
        Vector p(2 * n - 1);
        for (int k = 0; k < n; ++k)
            p[k] = opt.initial->beta()[k];
        for (int k = 1; k < n; ++k)
            p[n + k - 1] = opt.initial->alpha()[k];
        starts.push_back(std::move(p));
    } else {
        const int per_dim = n == 1 ? 9 : n == 2 ? 7 : n == 3 ? 4 : 3;
        const Scalar beta_lo = Scalar(0.5), beta_hi = Scalar(16);
        const Scalar ratio = std::pow(beta_hi / beta_lo, Scalar(1) / Scalar(per_dim - 1));
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        for (;;) {
            Vector betas(n);
            for (int k = 0; k < n; ++k)
                betas[k] = beta_lo * std::pow(ratio, Scalar(idx[static_cast<std::size_t>(k)]));
            Vector p(2 * n - 1);
            p.head(n) = betas;
            if (n > 1)
                p.tail(n - 1) = seed_alphas(betas);
            starts.push_back(std::move(p));
            int k = n - 1;
            while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == per_dim)
                idx[static_cast<std::size_t>(k--)] = 0;
            if (k < 0)
                break;
        }
    }

    FitResult<Scalar> best{default_coefficients<Scalar>(), std::numeric_limits<Scalar>::infinity(),
                           false, 0};
    bool have_best = false;
    Vector best_x;
    for (const Vector& start : starts) {
        auto run = detail::nelder_mead<Scalar>(objective, start, opt.max_iterations);
        best.iterations += run.iterations;
        if (!have_best || run.f < best.objective_value) {
            have_best = true;
            best.objective_value = run.f;
            best.converged = run.converged;
            best_x = run.x;
        }
    }

    typename KernelExpansion<Scalar>::Array alpha(n), beta(n);
    alpha[0] = Scalar(1);
    for (int k = 0; k < n; ++k)
        beta[k] = best_x[k];
    for (int k = 1; k < n; ++k)
        alpha[k] = best_x[n + k - 1];
    best.expansion = KernelExpansion<Scalar>(std::move(alpha), std::move(beta));
    return best;
}

/// Convenience overload matching the common call shape.
template <class Scalar>
FitResult<Scalar> fit_expansion(int n_terms, Scalar t_max, FitObjective objective) {
    FitOptions<Scalar> opt;
    opt.n_terms = n_terms;
    opt.t_max = t_max;
    opt.objective = objective;
    return fit_expansion(opt);
}

} // namespace pvoigt
