#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pvoigt {

/// Point z = x + iy at which the complex error function is evaluated.
/// Only the closed upper half-plane y >= 0 is a valid domain: the underlying
/// half-line integrals damp with e^(-yt) and diverge for y < 0.
template <class Scalar>
struct ComplexArgument {
    Scalar x{};
    Scalar y{};
};

/// Shape parameter of the rational approximation. 2.75 reproduces the
/// two-term default_coefficients kernel; other values pair with expansions
/// produced by fit_expansion.
template <class Scalar>
struct PseudoVoigtParams {
    Scalar gamma = Scalar(2.75);
};

/// Value pair w = K + iL.
template <class Scalar>
struct FaddeevaValue {
    Scalar re{};
    Scalar im{};
};

namespace detail {

template <class Scalar>
void check_faddeeva_domain(ComplexArgument<Scalar> arg, PseudoVoigtParams<Scalar> p) {
    if (!std::isfinite(arg.x) || !std::isfinite(arg.y))
        throw std::domain_error("faddeeva_approx: x and y must be finite");
    if (arg.y < Scalar(0))
        throw std::domain_error("faddeeva_approx: y must be >= 0");
    if (!std::isfinite(p.gamma) || !(p.gamma > Scalar(0)))
        throw std::domain_error("faddeeva_approx: gamma must be positive and finite");
}

} // namespace detail

/// Rational approximation of w(x, y) = K(x, y) + iL(x, y):
///
///   K ~ (1/sqrt(pi)) [ (y+g)/(x^2+(y+g)^2) + 4g((2y+g)^2 - 4x^2)/((4x^2+(2y+g)^2)^2) ]
///   L ~ (x/sqrt(pi)) [ 1/(x^2+(y+g)^2)     + 16g(2y+g)/((4x^2+(2y+g)^2)^2) ]
///
/// Both parts share x^2, (2y+g)^2 and the two denominators; the evaluation
/// order below is fixed so results are bit-reproducible. x enters K only
/// through x^2 and L only through x^2 plus one leading factor x, which makes
/// the even/odd parities exact in floating point.
template <class Scalar>
FaddeevaValue<Scalar> faddeeva_approx(ComplexArgument<Scalar> arg,
                                      PseudoVoigtParams<Scalar> p = {}) {
    detail::check_faddeeva_domain(arg, p);
    const Scalar g = p.gamma;
    const Scalar x2 = arg.x * arg.x;
    const Scalar ypg = arg.y + g;
    const Scalar s = Scalar(2) * arg.y + g;
    const Scalar s2 = s * s;
    const Scalar d1 = x2 + ypg * ypg; // > 0: contains g^2
    const Scalar d2 = Scalar(4) * x2 + s2;
    const Scalar d2sq = d2 * d2;
    constexpr Scalar inv_sqrt_pi = std::numbers::inv_sqrtpi_v<Scalar>;
    const Scalar k = inv_sqrt_pi * (ypg / d1 + Scalar(4) * g * (s2 - Scalar(4) * x2) / d2sq);
    const Scalar l = arg.x * inv_sqrt_pi * (Scalar(1) / d1 + Scalar(16) * g * s / d2sq);
    return {k, l};
}

/// K component alone (the pseudo-Voigt function).
template <class Scalar>
Scalar voigt_k_approx(ComplexArgument<Scalar> arg, PseudoVoigtParams<Scalar> p = {}) {
    return faddeeva_approx(arg, p).re;
}

/// L component alone. Odd in x; exactly 0 at x = 0.
template <class Scalar>
Scalar voigt_l_approx(ComplexArgument<Scalar> arg, PseudoVoigtParams<Scalar> p = {}) {
    return faddeeva_approx(arg, p).im;
}

} // namespace pvoigt
