#pragma once

#include <cstdint>
#include <vector>

#include "rpng/engine.hpp"

namespace rpng {

// Simplified wall model on the half line: pedestals are born at the
// wall edge <0,1> at rate lambda0, their left endpoints stay fixed at
// the wall, and the right boundaries move like the basic model's
// boundaries (rate 1 per occupied site, 1/2 per direction, stacking
// preserved). A boundary reaching the wall removes its pedestal.
struct HalfLineResult {
    std::vector<double> times;
    std::vector<std::int64_t> pedestals;      // N_t at each sample
    std::vector<std::int32_t> final_boundaries; // weakly decreasing by layer
    bool window_exhausted = false;
};

// max_site = 0 grows the lattice on demand (never exhausts); a positive
// bound flags and suppresses moves beyond it, as the particle engine's
// boundary flag does.
HalfLineResult run_halfline(double lambda0, double horizon, std::uint64_t seed,
                            const SampleGrid& grid, std::int32_t max_site = 0);

// Symmetric simple exclusion on [-half_width, half_width] from the step
// initial condition (occupied exactly on sites <= 0), each particle
// jumping at total rate 1. Samples the rightmost particle position.
struct ExclusionResult {
    std::vector<double> times;
    std::vector<std::int64_t> rightmost;
    bool window_exhausted = false;
};

// half_width = 0 picks ceil(6*sqrt(T)) + 20, ample for the rightmost
// particle and the depletion front at these horizons.
ExclusionResult run_exclusion_step(double horizon, std::uint64_t seed,
                                   const SampleGrid& grid, std::int32_t half_width = 0);

} // namespace rpng
