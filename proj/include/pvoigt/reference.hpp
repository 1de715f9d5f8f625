#pragma once

#include "pvoigt/pseudo_voigt.hpp"
#include "pvoigt/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pvoigt {

/// Controls for the reference quadrature.
///
/// t_upper truncates the half-line integrals; at the minimum allowed value 40
/// the integrand factor e^(-t^2/4) is ~1e-174, so the tail is negligible
/// against any admissible tolerance. abs_tol is capped at 1e-9 to keep the
/// oracle well below the 1e-2-scale discrepancies it certifies.
template <class Scalar>
struct QuadratureConfig {
    Scalar t_upper = Scalar(40);
    Scalar abs_tol = Scalar(1e-10);
    int max_subdivisions = 512;
};

namespace detail {

template <class Scalar>
void check_reference_domain(ComplexArgument<Scalar> arg) {
    if (!std::isfinite(arg.x) || !std::isfinite(arg.y))
        throw std::domain_error("reference: x and y must be finite");
    if (arg.y < Scalar(0))
        throw std::domain_error("reference: y must be >= 0");
}

template <class Scalar>
void check_config(const QuadratureConfig<Scalar>& cfg) {
    if (!(cfg.t_upper >= Scalar(40)))
        throw std::invalid_argument("QuadratureConfig: t_upper must be >= 40");
    if (!(cfg.abs_tol > Scalar(0)) || !(cfg.abs_tol <= Scalar(1e-9)))
        throw std::invalid_argument("QuadratureConfig: abs_tol must be in (0, 1e-9]");
    if (cfg.max_subdivisions < 1)
        throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
}

template <class Scalar>
Scalar require_converged(const IntegrationResult<Scalar>& r, const char* who) {
    if (!r.converged)
        throw QuadratureError(std::string(who) + ": tolerance not reached within max_subdivisions",
                              static_cast<double>(r.value),
                              static_cast<double>(r.error_estimate));
    return r.value;
}

} // namespace detail

/// Adaptive evaluation of (1/sqrt(pi)) * Int_0^T e^(-t^2/4) e^(-yt) cos(xt) dt,
/// returning the full integration record (value, achieved error, counts).
template <class Scalar>
IntegrationResult<Scalar> k_reference_detail(ComplexArgument<Scalar> arg,
                                             const QuadratureConfig<Scalar>& cfg = {}) {
    detail::check_reference_domain(arg);
    detail::check_config(cfg);
    constexpr Scalar inv_sqrt_pi = std::numbers::inv_sqrtpi_v<Scalar>;
    const Scalar x = arg.x, y = arg.y;
    auto integrand = [=](Scalar t) {
        return inv_sqrt_pi * std::exp(-Scalar(0.25) * t * t - y * t) * std::cos(x * t);
    };
    return integrate_adaptive(integrand, Scalar(0), cfg.t_upper, cfg.abs_tol,
                              cfg.max_subdivisions);
}

/// As k_reference_detail but with the sin(xt) factor (the L-function integral).
template <class Scalar>
IntegrationResult<Scalar> l_reference_detail(ComplexArgument<Scalar> arg,
                                             const QuadratureConfig<Scalar>& cfg = {}) {
    detail::check_reference_domain(arg);
    detail::check_config(cfg);
    constexpr Scalar inv_sqrt_pi = std::numbers::inv_sqrtpi_v<Scalar>;
    const Scalar x = arg.x, y = arg.y;
    auto integrand = [=](Scalar t) {
        return inv_sqrt_pi * std::exp(-Scalar(0.25) * t * t - y * t) * std::sin(x * t);
    };
    return integrate_adaptive(integrand, Scalar(0), cfg.t_upper, cfg.abs_tol,
                              cfg.max_subdivisions);
}

/// High-accuracy reference for the real part K. Throws QuadratureError
/// (carrying the best estimate and achieved error) if the tolerance was not
/// reached within cfg.max_subdivisions.
template <class Scalar>
Scalar k_reference(ComplexArgument<Scalar> arg, const QuadratureConfig<Scalar>& cfg = {}) {
    return detail::require_converged(k_reference_detail(arg, cfg), "k_reference");
}

/// High-accuracy reference for the imaginary part L.
template <class Scalar>
Scalar l_reference(ComplexArgument<Scalar> arg, const QuadratureConfig<Scalar>& cfg = {}) {
    return detail::require_converged(l_reference_detail(arg, cfg), "l_reference");
}

/// Reference pair w(x, y) = K + iL.
template <class Scalar>
FaddeevaValue<Scalar> w_reference(ComplexArgument<Scalar> arg,
                                  const QuadratureConfig<Scalar>& cfg = {}) {
    return {k_reference(arg, cfg), l_reference(arg, cfg)};
}

/// Fixed-panel cross-check for K: same integral, structurally different rule.
template <class Scalar>
Scalar k_reference_fixed(ComplexArgument<Scalar> arg, Scalar t_upper = Scalar(40),
                         int panels = 10000) {
    detail::check_reference_domain(arg);
    constexpr Scalar inv_sqrt_pi = std::numbers::inv_sqrtpi_v<Scalar>;
    const Scalar x = arg.x, y = arg.y;
    auto integrand = [=](Scalar t) {
        return inv_sqrt_pi * std::exp(-Scalar(0.25) * t * t - y * t) * std::cos(x * t);
    };
    return integrate_composite_gauss7(integrand, Scalar(0), t_upper, panels);
}

/// Fixed-panel cross-check for L.
template <class Scalar>
Scalar l_reference_fixed(ComplexArgument<Scalar> arg, Scalar t_upper = Scalar(40),
                         int panels = 10000) {
    detail::check_reference_domain(arg);
    constexpr Scalar inv_sqrt_pi = std::numbers::inv_sqrtpi_v<Scalar>;
    const Scalar x = arg.x, y = arg.y;
    auto integrand = [=](Scalar t) {
        return inv_sqrt_pi * std::exp(-Scalar(0.25) * t * t - y * t) * std::sin(x * t);
    };
    return integrate_composite_gauss7(integrand, Scalar(0), t_upper, panels);
}

} // namespace pvoigt
