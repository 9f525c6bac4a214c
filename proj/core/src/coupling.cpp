#include "rpng/coupling.hpp"

#include <algorithm>
#include <string>

namespace rpng {

namespace detail {

CouplingTracker::CouplingTracker(LatticeState base, LatticeState perturbed,
                                 const CoupledRunOptions& opts, std::uint64_t seed)
    : base_(std::move(base)),
      pert_(std::move(perturbed)),
      opts_(opts),
      thin_rng_(stream_key(seed, 0x7468696eULL /* thinning lane */, 0)) {
    if (base_.half_width() != pert_.half_width())
        throw std::invalid_argument("coupled states must share a window");
    const auto hb = base_.heights();
    const auto hp = pert_.heights();
    tilde_.resize(hb.size());
    for (std::size_t i = 0; i < hb.size(); ++i) {
        tilde_[i] = hp[i] - hb[i];
        if (tilde_[i] < 0)
            throw ConsistencyError("initial coupled states not ordered (h' < h)");
    }
}

void CouplingTracker::consume(const Mark& m) {
    MarkEffect base_eff;
    if (m.kind == MarkKind::defect_nucleation) {
        // Thinning level drawn for every defect mark so the pairing is
        // independent of the fraction.
        const double u = thin_rng_.next_unit();
        if (u <= opts_.base_defect_fraction) base_eff = base_.apply_mark(m);
    } else {
        base_eff = base_.apply_mark(m);
    }
    const MarkEffect pert_eff = pert_.apply_mark(m);

    const int d = static_cast<int>(pert_eff.height_delta) -
                  static_cast<int>(base_eff.height_delta);
    if (d == 0) return;

    const std::size_t ei = base_.edge_index(m.edge);
    tilde_[ei] += d;
    if (tilde_[ei] < 0)
        throw ConsistencyError("discrepancy went negative at edge " +
                               std::to_string(m.edge) + ", t=" + std::to_string(m.time));

    if (opts_.trace_virtual_jumps && is_arrow(m.kind)) {
        VirtualJumpEvent ev;
        ev.time = m.time;
        ev.edge = m.edge;
        ev.direction = static_cast<std::int8_t>(arrow_direction(m.kind));
        ev.source_site = ev.direction > 0 ? m.edge : m.edge + 1;
        ev.species = (d * ev.direction > 0) ? Species::right : Species::left;
        trace_.push_back(ev);
    }
}

CoupledSamplePoint CouplingTracker::sample_point(double t) const {
    const std::int32_t L = base_.half_width();
    auto tilde_at = [&](std::int32_t edge) -> std::int32_t {
        if (edge < -L || edge >= L) return 0;
        return tilde_[base_.edge_index(edge)];
    };
    CoupledSamplePoint p;
    p.time = t;
    p.delta = static_cast<std::int64_t>(pert_.height(0)) -
              std::max(pert_.height(-1), pert_.height(1));
    const std::int32_t d0 = tilde_at(-1) - tilde_at(0);
    const std::int32_t d1 = tilde_at(0) - tilde_at(1);
    p.virtual_l_at_0 = d0 < 0 ? -d0 : 0;
    p.virtual_r_at_1 = d1 > 0 ? d1 : 0;
    for (std::int32_t x = 2; x <= L; ++x) {
        const std::int32_t d = tilde_at(x - 1) - tilde_at(x);
        p.virtual_tail += d < 0 ? -d : d;
        if (d < 0) p.escaped_virtual += -d; // virtual-l at x >= 2
    }
    for (std::int32_t x = -L; x <= -1; ++x) {
        const std::int32_t d = tilde_at(x - 1) - tilde_at(x);
        if (d > 0) p.escaped_virtual += d; // virtual-r at x <= -1
    }
    return p;
}

void CouplingTracker::verify(double t) const {
    check_height_consistency(base_);
    check_height_consistency(pert_);
    const auto hb = base_.heights();
    const auto hp = pert_.heights();
    for (std::size_t i = 0; i < hb.size(); ++i) {
        if (hp[i] - hb[i] != tilde_[i])
            throw ConsistencyError("discrepancy bookkeeping mismatch at t=" +
                                   std::to_string(t));
    }
}

} // namespace detail

VirtualSite virtual_occupancy(std::span<const std::int32_t> tilde, std::int32_t half_width,
                              std::int32_t site) {
    auto at = [&](std::int32_t edge) -> std::int32_t {
        if (edge < -half_width || edge >= half_width) return 0;
        return tilde[static_cast<std::size_t>(edge + half_width)];
    };
    const std::int32_t d = at(site - 1) - at(site);
    if (d == 0) return {0, Species::empty};
    return {d > 0 ? d : -d, d > 0 ? Species::right : Species::left};
}

SymmetryAudit virtual_symmetry_audit(const CoupledRunResult& run) {
    SymmetryAudit a;
    if (!run.t_star) return a;
    for (const auto& ev : run.trace) {
        if (ev.time <= *run.t_star) continue;
        if (ev.source_site == 0 || ev.source_site == 1) continue;
        if (ev.direction > 0)
            ++a.right_count;
        else
            ++a.left_count;
    }
    a.p_value = binomial_two_sided_p(a.right_count, a.right_count + a.left_count);
    return a;
}

SymmetryAudit pooled_symmetry_audit(std::span<const CoupledRunResult> runs) {
    SymmetryAudit pooled;
    for (const auto& run : runs) {
        const SymmetryAudit a = virtual_symmetry_audit(run);
        pooled.left_count += a.left_count;
        pooled.right_count += a.right_count;
    }
    pooled.p_value =
        binomial_two_sided_p(pooled.right_count, pooled.right_count + pooled.left_count);
    return pooled;
}

DominationWitness domination_witness(const MarkLog& log, std::int32_t site,
                                     const SampleGrid& grid) {
    const std::int32_t L = log.params.half_width;
    if (site <= -L || site >= L)
        throw std::invalid_argument("witness site must be strictly inside the window");

    LatticeState state(L);
    DominationWitness w;
    w.site = site;
    std::int32_t xl = 0, xr = 0, y = 0, ymax = 0, ymin = 0;

    auto record = [&](double t) {
        w.times.push_back(t);
        w.x_left.push_back(xl);
        w.x_right.push_back(xr);
        w.y.push_back(y);
        w.y_range.push_back(ymax - ymin);
        const std::int32_t n = state.occupancy(site).count;
        w.occupancy.push_back(n);
        if (n > xl + xr + (ymax - ymin)) w.holds = false;
    };

    std::size_t next = 0;
    for (const Mark& m : log.marks) {
        while (next < grid.times.size() && grid.times[next] < m.time) record(grid.times[next++]);
        if (is_nucleation(m.kind)) {
            if (m.edge == site) {
                y += 1;
                if (y > ymax) ymax = y;
            } else if (m.edge == site - 1) {
                y -= 1;
                if (y < ymin) ymin = y;
            }
        } else {
            const std::int32_t toward = arrow_direction(m.kind) > 0 ? m.edge + 1 : m.edge;
            const std::int32_t away = arrow_direction(m.kind) > 0 ? m.edge : m.edge + 1;
            std::int32_t& walk = arrow_moves_r(m.kind) ? xr : xl;
            if (toward == site) walk += 1;
            if (away == site && walk > 0) walk -= 1;
        }
        state.apply_mark(m);
    }
    while (next < grid.times.size()) record(grid.times[next++]);
    return w;
}

CoupledStepResult coupled_step(LatticeState& base, LatticeState& perturbed, const Mark& m) {
    if (base.half_width() != perturbed.half_width())
        throw std::invalid_argument("coupled states must share a window");
    CoupledStepResult r;
    if (m.kind != MarkKind::defect_nucleation) r.base_effect = base.apply_mark(m);
    r.perturbed_effect = perturbed.apply_mark(m);
    const int d = static_cast<int>(r.perturbed_effect.height_delta) -
                  static_cast<int>(r.base_effect.height_delta);
    if (d != 0 && is_arrow(m.kind)) {
        VirtualJumpEvent ev;
        ev.time = m.time;
        ev.edge = m.edge;
        ev.direction = static_cast<std::int8_t>(arrow_direction(m.kind));
        ev.source_site = ev.direction > 0 ? m.edge : m.edge + 1;
        ev.species = (d * ev.direction > 0) ? Species::right : Species::left;
        r.virtual_jump = ev;
    }
    return r;
}

} // namespace rpng
