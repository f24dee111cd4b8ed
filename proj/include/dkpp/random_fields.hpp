#pragma once

#include <random>

#include "dkpp/spacetime.hpp"

namespace dkpp {

/// A smooth space-time field together with its exact time derivative, for
/// contraction measurements and studies.  Built as a short sum of periodic
/// trig modes in x times trig factors in t, so both blocks are analytic.
struct SmoothSpaceTimeField {
  SpaceTimeField values;
  SpaceTimeField rate;  // exact d/dt of values
};

SmoothSpaceTimeField random_smooth_field(const Grid& grid, const TimeWindow& window,
                                         std::mt19937_64& rng, int n_modes = 6,
                                         int max_wavenumber = 8);

}  // namespace dkpp
