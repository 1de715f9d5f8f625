#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pvoigt {

/// Expansion of the Gaussian e^(-t^2) into damped power terms
/// alpha_n |t|^n e^(-beta_n |t|), n = 0..N.
///
/// The term index doubles as the power of |t|, so the coefficient arrays
/// fully determine the series. All beta_n must be positive, otherwise the
/// terms do not decay and the half-line transforms built on top of this
/// expansion diverge.
template <class Scalar>
class KernelExpansion {
public:
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    KernelExpansion(Array alpha, Array beta)
        : alpha_(std::move(alpha)), beta_(std::move(beta)) {
        if (alpha_.size() == 0)
            throw std::invalid_argument("KernelExpansion: at least one term required");
        if (alpha_.size() != beta_.size())
            throw std::invalid_argument("KernelExpansion: alpha/beta size mismatch");
        for (Eigen::Index n = 0; n < beta_.size(); ++n) {
            if (!(beta_[n] > Scalar(0)) || !std::isfinite(beta_[n]))
                throw std::invalid_argument("KernelExpansion: every beta must be positive and finite");
            if (!std::isfinite(alpha_[n]))
                throw std::invalid_argument("KernelExpansion: every alpha must be finite");
        }
    }

    const Array& alpha() const { return alpha_; }
    const Array& beta() const { return beta_; }
    Eigen::Index terms() const { return alpha_.size(); }

private:
    Array alpha_;
    Array beta_;
};

/// The two-term coefficient set used throughout:
/// e^(-t^2) ~ e^(-5.5|t|) + 5.5|t| e^(-2.75|t|).
/// Note beta_0 = 2 * beta_1, which is what makes the half-line kernel
/// substitution below work out.
template <class Scalar = double>
KernelExpansion<Scalar> default_coefficients() {
    typename KernelExpansion<Scalar>::Array alpha(2), beta(2);
    alpha << Scalar(1), Scalar(5.5);
    beta << Scalar(5.5), Scalar(2.75);
    return KernelExpansion<Scalar>(std::move(alpha), std::move(beta));
}

/// Sum of the expansion terms at t. Even in t: |t| is taken once up front,
/// so evaluate_expansion(e, t) and evaluate_expansion(e, -t) are bit-identical.
template <class Scalar>
Scalar evaluate_expansion(const KernelExpansion<Scalar>& e, Scalar t) {
    if (!std::isfinite(t))
        throw std::domain_error("evaluate_expansion: t must be finite");
    const Scalar at = std::abs(t);
    Scalar acc = Scalar(0);
    Scalar tn = Scalar(1); // |t|^n, built incrementally
    for (Eigen::Index n = 0; n < e.terms(); ++n) {
        acc += e.alpha()[n] * tn * std::exp(-e.beta()[n] * at);
        tn *= at;
    }
    return acc;
}

/// Residual e^(-t^2) - evaluate_expansion(e, t). For the default_coefficients
/// expansion this is the error term whose smallness drives everything else.
template <class Scalar>
Scalar epsilon_error(const KernelExpansion<Scalar>& e, Scalar t) {
    return std::exp(-t * t) - evaluate_expansion(e, t);
}

/// Half-line approximation e^(-t^2/4) ~ e^(-gamma t) + gamma t e^(-gamma t / 2),
/// valid for t >= 0. Equals evaluate_expansion(default_coefficients(), t/2) when
/// gamma = 2.75 (substituting t -> t/2 maps one form onto the other).
template <class Scalar>
Scalar half_kernel_approx(Scalar t, Scalar gamma) {
    if (!std::isfinite(t) || t < Scalar(0))
        throw std::domain_error("half_kernel_approx: t must be finite and >= 0");
    if (!std::isfinite(gamma) || !(gamma > Scalar(0)))
        throw std::domain_error("half_kernel_approx: gamma must be positive and finite");
    const Scalar gt = gamma * t;
    return std::exp(-gt) + gamma * t * std::exp(-gt * Scalar(0.5));
}

} // namespace pvoigt
