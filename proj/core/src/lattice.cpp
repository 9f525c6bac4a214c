#include "rpng/lattice.hpp"

#include <string>

namespace rpng {

LatticeState::LatticeState(std::int32_t half_width)
    : half_width_(half_width),
      occ_(static_cast<std::size_t>(2 * half_width + 1), 0),
      height_(static_cast<std::size_t>(2 * half_width), 0) {
    if (half_width < 1) throw std::invalid_argument("half_width must be >= 1");
}

LatticeState LatticeState::from_occupancies(
    std::int32_t half_width,
    std::span<const std::pair<std::int32_t, std::int32_t>> occ,
    std::int32_t leftmost_height) {
    LatticeState s(half_width);
    for (const auto& [site, count] : occ) {
        if (site < -half_width || site > half_width)
            throw std::invalid_argument("occupancy site outside window");
        s.occ_[s.site_index(site)] = count;
    }
    // Integrate heights left to right: crossing site x the height drops
    // by the signed occupancy (+ for r-particles, - for l-particles).
    std::int32_t h = leftmost_height;
    for (std::int32_t x = -half_width; x < half_width; ++x) {
        h -= s.occ_[s.site_index(x)];
        if (h < 0)
            throw ConsistencyError("occupancy fixture yields negative height at edge " +
                                   std::to_string(x));
        s.height_[s.edge_index(x)] = h;
    }
    h -= s.occ_[s.site_index(half_width)];
    if (h != 0)
        throw ConsistencyError("occupancy fixture does not close to height 0 at the right boundary");
    // Make the origin-edge identity hold for synthetic states.
    s.origin_nucleations_ = s.height_[s.edge_index(0)];
    return s;
}

void LatticeState::touch_boundary_if(std::int32_t site) {
    if (site == -half_width_ || site == half_width_) boundary_touched_ = true;
}

MarkEffect LatticeState::move_particle(std::int32_t from, int direction, double t) {
    const std::int32_t to = from + direction;
    const std::int32_t signed_occ = occ_[site_index(from)];
    const int sign = signed_occ > 0 ? +1 : -1; // +1 r-particle, -1 l-particle
    occ_[site_index(from)] -= sign;
    occ_[site_index(to)] += sign; // signed addition = annihilation when opposite
    const std::int32_t edge = direction > 0 ? from : to;

    const std::size_t ei = edge_index(edge);
    height_[ei] += direction * sign;
    if (height_[ei] < 0)
        throw ConsistencyError("negative height at edge " + std::to_string(edge));

    if (edge == 0) {
        // Crossing e0 moves the origin flows of Eq.-style bookkeeping:
        // h(e0) = nucleations(e0) - phi^l + phi^r.
        if (sign > 0)
            flow_right_ += direction;
        else
            flow_left_ += direction;
    }
    touch_boundary_if(to);
    time_ = t;

    MarkEffect eff;
    eff.type = MarkEffect::Type::jump;
    eff.edge = edge;
    eff.height_delta = static_cast<std::int8_t>(direction * sign);
    eff.direction = static_cast<std::int8_t>(direction);
    eff.moved = sign > 0 ? Species::right : Species::left;
    return eff;
}

MarkEffect LatticeState::apply_jump(std::int32_t site, int direction, double t) {
    return move_particle(site, direction, t);
}

MarkEffect LatticeState::apply_nucleation(std::int32_t edge, double t, bool defect) {
    occ_[site_index(edge)] -= 1;     // l-particle at x
    occ_[site_index(edge + 1)] += 1; // r-particle at x+1
    height_[edge_index(edge)] += 1;
    if (edge == 0) origin_nucleations_ += 1;
    if (edge == -half_width_ || edge == half_width_ - 1) boundary_touched_ = true;
    touch_boundary_if(edge);
    touch_boundary_if(edge + 1);
    time_ = t;

    MarkEffect eff;
    eff.type = MarkEffect::Type::nucleate;
    eff.edge = edge;
    eff.height_delta = 1;
    (void)defect;
    return eff;
}

MarkEffect LatticeState::apply_mark(const Mark& m) {
    if (m.time < time_)
        throw ConsistencyError("mark out of time order at t=" + std::to_string(m.time));
    if (m.edge < -half_width_ || m.edge >= half_width_)
        throw ConsistencyError("mark edge " + std::to_string(m.edge) + " outside window");

    if (is_nucleation(m.kind))
        return apply_nucleation(m.edge, m.time, m.kind == MarkKind::defect_nucleation);

    // Arrow at edge <x, x+1>: left arrows move from x+1, right arrows
    // from x, and only act when the source holds the arrow's species.
    const int dir = arrow_direction(m.kind);
    const std::int32_t src = dir > 0 ? m.edge : m.edge + 1;
    const std::int32_t s = occ_[site_index(src)];
    const bool acts = arrow_moves_r(m.kind) ? s > 0 : s < 0;
    if (!acts) {
        time_ = m.time;
        return {};
    }
    return move_particle(src, dir, m.time);
}

} // namespace rpng
