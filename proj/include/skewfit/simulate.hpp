#pragma once

#include "skewfit/likelihood.hpp"
#include "skewfit/model.hpp"
#include "skewfit/rng.hpp"

namespace skewfit {

// n i.i.d. rows through the exact stochastic representation
//   Y = xi + w U V^{-1/2},  U = (-1)^{1(Z<0)} X,
// with (Z, X) jointly Gaussian with cross-covariance delta and V the
// Gamma(nu/2, nu/2) mixing variable (V = 1 for light-tailed models, delta = 0
// for symmetric ones).
Dataset simulate_dataset(const ModelSpec& spec, const AlphaParams& params,
                         long n, RngStream& rng);

}  // namespace skewfit
