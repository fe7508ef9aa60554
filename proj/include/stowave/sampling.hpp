#pragma once

#include <cstdint>

#include "stowave/dynamics.hpp"

namespace stowave {

/// Smooth random field: Gaussian-weighted combination of the first few
/// boundary-compatible sine modes sin(k*pi*(x+L)/(2L)) (tensor products per
/// axis in 2D) with coefficient variance 1/k^2.  A pure function of
/// (grid, seed, modes).
Field sample_smooth_field(const Grid& g, std::uint64_t seed, int modes = 8);

/// Random transformed state rescaled so that e_norm(state) == target exactly
/// (the state norm is 1-homogeneous, so scaling is exact).  Direction is the
/// sampled mode combination; the caller stratifies radii via target_enorm.
State sample_state(const Grid& g, const Params& params, const Nonlinearity& nl, double target_enorm,
                   std::uint64_t seed);

}  // namespace stowave
