#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvoigt {

/// Outcome of one adaptive integration.
template <class Scalar>
struct IntegrationResult {
    Scalar value{};
    Scalar error_estimate{}; ///< sum of per-interval embedded-rule estimates
    int intervals = 0;       ///< intervals accepted into the final sum
    long evaluations = 0;    ///< integrand evaluations performed
    bool converged = false;  ///< every interval met its local error budget
};

/// Thrown when a quadrature-backed operation cannot reach the requested
/// tolerance. Carries the best estimate so callers can still report it.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double achieved_error)
        : std::runtime_error(what), best_(best_estimate), err_(achieved_error) {}

    double best_estimate() const { return best_; }
    double achieved_error() const { return err_; }

private:
    double best_;
    double err_;
};

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1]. Kronrod nodes are listed by
// descending magnitude; the Gauss-7 subset sits at odd indices plus the
// center node.
template <class Scalar>
struct GaussKronrod15 {
    static constexpr Scalar nodes[8] = {
        Scalar(0.991455371120812639206854697526329L),
        Scalar(0.949107912342758524526189684047851L),
        Scalar(0.864864423359769072789712788640926L),
        Scalar(0.741531185599394439863864773280788L),
        Scalar(0.586087235467691130294144838258730L),
        Scalar(0.405845151377397166906606412076961L),
        Scalar(0.207784955007898467600689403773245L),
        Scalar(0.0L),
    };
    static constexpr Scalar kronrod_weights[8] = {
        Scalar(0.022935322010529224963732008058970L),
        Scalar(0.063092092629978553290700663189204L),
        Scalar(0.104790010322250183839876322541518L),
        Scalar(0.140653259715525918745189590510238L),
        Scalar(0.169004726639267902826583426598550L),
        Scalar(0.190350578064785409913256402421014L),
        Scalar(0.204432940075298892414161999234649L),
        Scalar(0.209482141084727828012999174891714L),
    };
    static constexpr Scalar gauss_weights[4] = {
        Scalar(0.129484966168869693270611432679082L),
        Scalar(0.279705391489276667901467771423780L),
        Scalar(0.381830050505118944950369775488975L),
        Scalar(0.417959183673469387755102040816327L),
    };
};

/// Evaluate the embedded pair on [lo, hi]: 15 evaluations shared by both rules.
template <class Scalar, class F>
void gk15_panel(F&& f, Scalar lo, Scalar hi, Scalar& kronrod, Scalar& gauss) {
    using GK = GaussKronrod15<Scalar>;
    const Scalar center = (lo + hi) * Scalar(0.5);
    const Scalar half = (hi - lo) * Scalar(0.5);
    const Scalar fc = f(center);
    Scalar sk = GK::kronrod_weights[7] * fc;
    Scalar sg = GK::gauss_weights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const Scalar d = half * GK::nodes[i];
        const Scalar pair = f(center - d) + f(center + d);
        sk += GK::kronrod_weights[i] * pair;
        if (i % 2 == 1)
            sg += GK::gauss_weights[i / 2] * pair;
    }
    kronrod = sk * half;
    gauss = sg * half;
}

} // namespace detail

/// Adaptive bisection with the Gauss7/Kronrod15 embedded pair.
///
/// Each interval gets an error budget proportional to its length
/// (abs_tol * len / (b - a)); an interval failing its budget is bisected.
/// The worklist is processed left-first, so the accumulation order and
/// therefore the result are deterministic. Once max_subdivisions bisections
/// have been spent, remaining intervals are accepted as-is and the result is
/// flagged non-converged; error_estimate then reports what was achieved.
template <class Scalar, class F>
IntegrationResult<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b, Scalar abs_tol,
                                             int max_subdivisions) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_adaptive: need finite a < b");
    if (!(abs_tol > Scalar(0)))
        throw std::invalid_argument("integrate_adaptive: abs_tol must be positive");
    if (max_subdivisions < 0)
        throw std::invalid_argument("integrate_adaptive: max_subdivisions must be >= 0");

    struct Interval {
        Scalar lo, hi;
    };
    std::vector<Interval> work;
    work.push_back({a, b});

    const Scalar total = b - a;
    IntegrationResult<Scalar> out;
    out.converged = true;
    int splits = 0;

    while (!work.empty()) {
        const Interval iv = work.back();
        work.pop_back();

        Scalar kronrod, gauss;
        detail::gk15_panel(f, iv.lo, iv.hi, kronrod, gauss);
        out.evaluations += 15;

        const Scalar width = iv.hi - iv.lo;
        const Scalar err = std::abs(kronrod - gauss);
        const Scalar budget = abs_tol * (width / total);
        const Scalar mid = (iv.lo + iv.hi) * Scalar(0.5);
        const bool splittable = mid > iv.lo && mid < iv.hi; // stop at fp resolution

        if (err > budget && splittable && splits < max_subdivisions) {
            ++splits;
            work.push_back({mid, iv.hi}); // popped second
            work.push_back({iv.lo, mid}); // popped first: left-to-right accumulation
            continue;
        }

        if (err > budget)
            out.converged = false;
        out.value += kronrod;
        out.error_estimate += err;
        ++out.intervals;
    }
    return out;
}

/// Fixed composite 7-point Gauss rule over `panels` equal panels.
/// Structurally independent of the adaptive path; used to cross-check it.
template <class Scalar, class F>
Scalar integrate_composite_gauss7(F&& f, Scalar a, Scalar b, int panels) {
    using GK = detail::GaussKronrod15<Scalar>;
    if (!(b > a) || panels < 1)
        throw std::invalid_argument("integrate_composite_gauss7: need a < b and panels >= 1");
    const Scalar h = (b - a) / Scalar(panels);
    Scalar sum = Scalar(0);
    for (int p = 0; p < panels; ++p) {
        const Scalar lo = a + h * Scalar(p);
        const Scalar center = lo + h * Scalar(0.5);
        const Scalar half = h * Scalar(0.5);
        Scalar s = GK::gauss_weights[3] * f(center);
        for (int i = 0; i < 3; ++i) {
            const Scalar d = half * GK::nodes[2 * i + 1];
            s += GK::gauss_weights[i] * (f(center - d) + f(center + d));
        }
        sum += s * half;
    }
    return sum;
}

} // namespace pvoigt
