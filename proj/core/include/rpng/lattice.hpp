#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rpng/errors.hpp"
#include "rpng/marks.hpp"

namespace rpng {

enum class Species : std::uint8_t { empty, left, right };

struct SiteOccupancy {
    std::int32_t count = 0;
    Species species = Species::empty;
};

// What a single mark did to the state. Consumed by level-line tracers
// and the coupled-run event classifier.
struct MarkEffect {
    enum class Type : std::uint8_t { none, jump, nucleate };
    Type type = Type::none;
    std::int32_t edge = 0;     // edge whose height changed (jump: crossed edge)
    std::int8_t height_delta = 0;
    std::int8_t direction = 0; // jump only: +1 right, -1 left
    Species moved = Species::empty;
};

// Particle configuration of the zero-range-with-annihilation system on
// the window sites [-L, L], plus the origin-edge flow counters and an
// incrementally maintained height array over edges [-L, L).
//
// Occupancy is stored signed: +n means n r-particles, -n means n
// l-particles. A site holding both species cannot be represented, which
// is exactly the model's exclusivity rule; annihilation is the signed
// addition itself.
class LatticeState {
public:
    explicit LatticeState(std::int32_t half_width);

    // Fixture builder: (site, signed count) pairs, +n r-particles / -n
    // l-particles. Heights are integrated from h(first edge) = base, and
    // must stay non-negative.
    static LatticeState from_occupancies(std::int32_t half_width,
                                         std::span<const std::pair<std::int32_t, std::int32_t>> occ,
                                         std::int32_t leftmost_height = 0);

    std::int32_t half_width() const { return half_width_; }
    double time() const { return time_; }

    std::int32_t signed_occupancy(std::int32_t site) const { return occ_[site_index(site)]; }
    SiteOccupancy occupancy(std::int32_t site) const {
        const std::int32_t s = signed_occupancy(site);
        if (s == 0) return {0, Species::empty};
        return {s > 0 ? s : -s, s > 0 ? Species::right : Species::left};
    }

    // Incrementally maintained height over edge <edge, edge+1>.
    std::int32_t height(std::int32_t edge) const { return height_[edge_index(edge)]; }
    std::span<const std::int32_t> heights() const { return height_; }
    std::span<const std::int32_t> occupancies() const { return occ_; }

    std::int64_t flow_left() const { return flow_left_; }    // phi^l through e0
    std::int64_t flow_right() const { return flow_right_; }  // phi^r through e0
    std::int64_t origin_nucleations() const { return origin_nucleations_; }
    bool boundary_touched() const { return boundary_touched_; }

    // Applies one mark of the graphical construction. Throws
    // ConsistencyError if the mark is out of time order or outside the
    // window (a corrupt log).
    MarkEffect apply_mark(const Mark& m);

    // Direct transitions for the event-driven engine. The caller
    // guarantees `site` is non-empty for apply_jump.
    MarkEffect apply_jump(std::int32_t site, int direction, double t);
    MarkEffect apply_nucleation(std::int32_t edge, double t, bool defect);

    // Cheap per-site state used by engines to maintain active sets.
    bool occupied(std::int32_t site) const { return occ_[site_index(site)] != 0; }

    std::size_t site_index(std::int32_t site) const {
        return static_cast<std::size_t>(site + half_width_);
    }
    std::size_t edge_index(std::int32_t edge) const {
        return static_cast<std::size_t>(edge + half_width_);
    }

private:
    void touch_boundary_if(std::int32_t site);
    MarkEffect move_particle(std::int32_t from, int direction, double t);

    std::int32_t half_width_;
    double time_ = 0.0;
    std::vector<std::int32_t> occ_;    // 2L+1 sites, signed
    std::vector<std::int32_t> height_; // 2L edges
    std::int64_t flow_left_ = 0;
    std::int64_t flow_right_ = 0;
    std::int64_t origin_nucleations_ = 0;
    bool boundary_touched_ = false;
};

inline MarkEffect apply_mark(LatticeState& state, const Mark& m) { return state.apply_mark(m); }

} // namespace rpng
