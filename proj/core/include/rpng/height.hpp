#pragma once

#include <cstdint>
#include <vector>

#include "rpng/lattice.hpp"

namespace rpng {

// Interface profile over the window edges [-L, L) at a fixed time.
struct HeightProfile {
    std::int32_t half_width = 0;
    double time = 0.0;
    std::vector<std::int32_t> h; // index edge + half_width

    std::int32_t at(std::int32_t edge) const {
        return h[static_cast<std::size_t>(edge + half_width)];
    }
};

// Height at the origin edge from the flow counters:
//   h(e0) = nucleations(e0) - phi^l + phi^r.
// Throws ConsistencyError if negative.
std::int64_t height_at_origin(const LatticeState& state);

// Whole profile integrated outward from h(e0) = h0 using the signed
// occupancies: crossing site x rightward adds n_x for l-particles and
// subtracts n_x for r-particles. Throws ConsistencyError on any
// negative height. Independent of the state's incremental height array.
HeightProfile full_profile(const LatticeState& state, std::int64_t h0);

// Sum of heights over the 2Q edges of [-Q, Q]. Throws
// std::invalid_argument if Q is out of range.
std::int64_t integrated_height(const HeightProfile& profile, std::int32_t q);

// Dual-bookkeeping check: the incrementally maintained height array must
// equal the profile reconstructed from particles via Eq.-style flow
// counting. Throws ConsistencyError on any mismatch.
void check_height_consistency(const LatticeState& state);

} // namespace rpng
