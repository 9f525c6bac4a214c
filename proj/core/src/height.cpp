#include "rpng/height.hpp"

#include <stdexcept>
#include <string>

namespace rpng {

std::int64_t height_at_origin(const LatticeState& state) {
    const std::int64_t h =
        state.origin_nucleations() - state.flow_left() + state.flow_right();
    if (h < 0)
        throw ConsistencyError("origin height identity produced " + std::to_string(h));
    return h;
}

HeightProfile full_profile(const LatticeState& state, std::int64_t h0) {
    const std::int32_t L = state.half_width();
    HeightProfile p;
    p.half_width = L;
    p.time = state.time();
    p.h.resize(static_cast<std::size_t>(2 * L));

    auto set = [&](std::int32_t edge, std::int64_t h) {
        if (h < 0)
            throw ConsistencyError("reconstructed height negative at edge " +
                                   std::to_string(edge));
        p.h[state.edge_index(edge)] = static_cast<std::int32_t>(h);
    };

    set(0, h0);
    // Rightward: crossing site x the height drops by the signed count.
    std::int64_t h = h0;
    for (std::int32_t x = 1; x < L; ++x) {
        h -= state.signed_occupancy(x);
        set(x, h);
    }
    // Leftward: crossing site x the height rises by the signed count.
    h = h0;
    for (std::int32_t x = 0; x > -L; --x) {
        h += state.signed_occupancy(x);
        set(x - 1, h);
    }
    return p;
}

std::int64_t integrated_height(const HeightProfile& profile, std::int32_t q) {
    if (q < 1 || q > profile.half_width)
        throw std::invalid_argument("Q out of range");
    std::int64_t sum = 0;
    for (std::int32_t x = -q; x < q; ++x) sum += profile.at(x);
    return sum;
}

void check_height_consistency(const LatticeState& state) {
    const auto profile = full_profile(state, height_at_origin(state));
    const auto incremental = state.heights();
    for (std::size_t i = 0; i < incremental.size(); ++i) {
        if (incremental[i] != profile.h[i])
            throw ConsistencyError(
                "height bookkeeping mismatch at edge " +
                std::to_string(static_cast<std::int32_t>(i) - state.half_width()) +
                ": incremental " + std::to_string(incremental[i]) +
                " vs reconstructed " + std::to_string(profile.h[i]));
    }
}

} // namespace rpng
