#pragma once

#include <Eigen/Core>

#include <stdexcept>

namespace pvoigt {

/// Uniform grid of `count` points on [lo, hi], endpoints included.
///
/// Points are computed as lo + (hi - lo) * (i / (count - 1)) so that both
/// endpoints are exact and, for symmetric ranges with odd counts, the
/// midpoint lands exactly on the center (e.g. t = 0 on [-5, 5]).
template <class Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> linspace(Scalar lo, Scalar hi, Eigen::Index count) {
    if (count < 2)
        throw std::invalid_argument("linspace: need at least 2 points");
    Eigen::Array<Scalar, Eigen::Dynamic, 1> out(count);
    const Scalar span = hi - lo;
    for (Eigen::Index i = 0; i < count; ++i)
        out[i] = lo + span * (Scalar(i) / Scalar(count - 1));
    return out;
}

} // namespace pvoigt
