#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rpng/engine.hpp"
#include "rpng/lattice.hpp"
#include "rpng/marks.hpp"
#include "rpng/stats.hpp"

namespace rpng {

// One unit of discrepancy gradient moving across an edge. Recorded
// whenever a single arrow changes the discrepancy h~ = h' - h at its
// edge; the virtual particle always moves in the arrow's direction, and
// its species follows from the sign of the change.
struct VirtualJumpEvent {
    double time = 0.0;
    std::int32_t edge = 0;       // edge whose discrepancy changed
    std::int8_t direction = 0;   // +1 right, -1 left
    std::int32_t source_site = 0;
    Species species = Species::empty;
};

// Per-sample summary of a coupled run.
struct CoupledSamplePoint {
    double time = 0.0;
    std::int64_t delta = 0;              // h'(e0) - max(h'(e-1), h'(e1))
    std::int32_t virtual_l_at_0 = 0;     // virtual l-particles at site 0
    std::int32_t virtual_r_at_1 = 0;     // virtual r-particles at site 1
    std::int64_t virtual_tail = 0;       // sum of n~ over sites >= 2
    // Virtual-r mass at sites <= -1 plus virtual-l mass at sites >= 2;
    // expected to be zero after T*.
    std::int64_t escaped_virtual = 0;
};

struct CoupledRunOptions {
    std::vector<std::int32_t> watch_edges;
    bool check_consistency = true;
    bool trace_virtual_jumps = false;
    // Fraction of defect marks the base system also consumes (coupled
    // thinning: base defect rate = fraction * lambda0). 0 = homogeneous
    // base. Thinning levels come from a stream keyed by the log seed.
    double base_defect_fraction = 0.0;
    // Per-sample hook with both states and the discrepancy per edge.
    std::function<void(std::size_t idx, double t, const LatticeState& base,
                       const LatticeState& perturbed, std::span<const std::int32_t> tilde)>
        on_sample;
};

struct CoupledRunResult {
    Trajectory base;
    Trajectory perturbed;
    std::vector<CoupledSamplePoint> points;
    // First sample time after which virtual_l_at_0 and virtual_r_at_1
    // stay positive through the horizon; absent if positivity fails at
    // the final sample (censored estimator).
    std::optional<double> t_star;
    std::vector<VirtualJumpEvent> trace;
};

// Field view of the discrepancy around a site.
struct VirtualSite {
    std::int32_t count = 0;
    Species species = Species::empty;
};
VirtualSite virtual_occupancy(std::span<const std::int32_t> tilde, std::int32_t half_width,
                              std::int32_t site);

struct SymmetryAudit {
    std::int64_t left_count = 0;
    std::int64_t right_count = 0;
    double p_value = 1.0; // two-sided binomial test of left/right balance
};

// Counts traced virtual jumps after the detected T* with source site
// outside {0, 1}. Empty trace or absent T* yields empty statistics.
SymmetryAudit virtual_symmetry_audit(const CoupledRunResult& run);
SymmetryAudit pooled_symmetry_audit(std::span<const CoupledRunResult> runs);

namespace detail {

// Shared per-mark coupling core; kept out of line of sight of callers.
class CouplingTracker {
public:
    CouplingTracker(LatticeState base, LatticeState perturbed, const CoupledRunOptions& opts,
                    std::uint64_t seed);

    void consume(const Mark& m);
    CoupledSamplePoint sample_point(double t) const;
    void verify(double t) const;

    const LatticeState& base() const { return base_; }
    const LatticeState& perturbed() const { return pert_; }
    std::vector<VirtualJumpEvent>& trace() { return trace_; }
    std::span<const std::int32_t> tilde() const { return tilde_; }

private:
    LatticeState base_;
    LatticeState pert_;
    std::vector<std::int32_t> tilde_; // h' - h per edge, >= 0 always
    CoupledRunOptions opts_;
    SplitMix64 thin_rng_;
    std::vector<VirtualJumpEvent> trace_;
};

} // namespace detail

// Runs the unperturbed and defect systems on one mark stream: both
// consume every arrow and bulk nucleation, only the perturbed system
// consumes defect nucleations (or, under thinning, the base consumes
// the sub-stream selected by base_defect_fraction). Throws
// ConsistencyError the moment h' < h anywhere.
template <class Cursor>
CoupledRunResult run_coupled(Cursor& cursor, const SampleGrid& grid,
                             LatticeState base, LatticeState perturbed,
                             const CoupledRunOptions& opts = {}) {
    detail::CouplingTracker tracker(std::move(base), std::move(perturbed), opts,
                                    cursor.params().seed);
    CoupledRunResult out;
    out.base.samples.reserve(grid.times.size());
    out.perturbed.samples.reserve(grid.times.size());
    out.points.reserve(grid.times.size());

    RunOptions sample_opts;
    sample_opts.watch_edges = opts.watch_edges;
    sample_opts.check_consistency = false; // tracker verifies both states

    std::size_t next = 0;
    auto emit = [&](double t) {
        if (opts.check_consistency) tracker.verify(t);
        out.base.samples.push_back(detail::make_sample(t, tracker.base(), sample_opts));
        out.perturbed.samples.push_back(detail::make_sample(t, tracker.perturbed(), sample_opts));
        out.points.push_back(tracker.sample_point(t));
        if (opts.on_sample)
            opts.on_sample(out.points.size() - 1, t, tracker.base(), tracker.perturbed(),
                           tracker.tilde());
    };

    while (auto m = cursor.next()) {
        while (next < grid.times.size() && grid.times[next] < m->time) emit(grid.times[next++]);
        tracker.consume(*m);
    }
    while (next < grid.times.size()) emit(grid.times[next++]);

    out.base.boundary_touched = tracker.base().boundary_touched();
    out.perturbed.boundary_touched = tracker.perturbed().boundary_touched();
    out.trace = std::move(tracker.trace());

    // Censored T* estimator over the sampled positivity record.
    std::size_t first_good = out.points.size();
    for (std::size_t i = out.points.size(); i-- > 0;) {
        if (out.points[i].virtual_l_at_0 > 0 && out.points[i].virtual_r_at_1 > 0)
            first_good = i;
        else
            break;
    }
    if (first_good < out.points.size())
        out.t_star = out.points[first_good].time;
    return out;
}

template <class Cursor>
CoupledRunResult run_coupled(Cursor& cursor, const SampleGrid& grid,
                             const CoupledRunOptions& opts = {}) {
    const std::int32_t L = cursor.params().half_width;
    return run_coupled(cursor, grid, LatticeState(L), LatticeState(L), opts);
}

// ---------------------------------------------------------------------
// Pathwise domination witness (reflected-walk bound on site occupancy).

// Reflected walks and the nucleation-difference walk for one site,
// sampled on a grid, plus the occupancy they must dominate.
struct DominationWitness {
    std::int32_t site = 0;
    std::vector<double> times;
    std::vector<std::int32_t> x_left;   // reflected walk driven by l-arrows
    std::vector<std::int32_t> x_right;  // reflected walk driven by r-arrows
    std::vector<std::int32_t> y;        // nucleation difference walk
    std::vector<std::int32_t> y_range;  // running max - running min of y
    std::vector<std::int32_t> occupancy;
    bool holds = true; // occupancy <= x_left + x_right + y_range at all samples
};

DominationWitness domination_witness(const MarkLog& log, std::int32_t site,
                                     const SampleGrid& grid);

struct DominationBulk {
    bool all_hold = true;
    std::int64_t sites_checked = 0;
    std::int64_t checks = 0;
    std::int64_t violations = 0;
};

// Streams a log once, maintaining the witness walks for every interior
// site, and checks the domination inequality at each sample time. Sites
// 0 and 1 are skipped when the log carries defect marks (the bound is
// local and does not cover the defect edge's own nucleations).
template <class Cursor>
DominationBulk check_domination_all_sites(Cursor& cursor, const SampleGrid& grid) {
    const std::int32_t L = cursor.params().half_width;
    const bool has_defect = cursor.params().lambda0 > 0.0;
    LatticeState state(L);
    const std::size_t n_sites = static_cast<std::size_t>(2 * L + 1);
    std::vector<std::int32_t> xl(n_sites, 0), xr(n_sites, 0);
    std::vector<std::int32_t> y(n_sites, 0), ymax(n_sites, 0), ymin(n_sites, 0);

    auto idx = [&](std::int32_t site) { return static_cast<std::size_t>(site + L); };

    DominationBulk out;
    std::size_t next = 0;
    auto check_all = [&]() {
        for (std::int32_t x = -L + 1; x < L; ++x) {
            if (has_defect && (x == 0 || x == 1)) continue;
            const std::size_t i = idx(x);
            const std::int32_t n = state.occupancy(x).count;
            const std::int32_t bound = xl[i] + xr[i] + (ymax[i] - ymin[i]);
            ++out.checks;
            if (n > bound) {
                out.all_hold = false;
                ++out.violations;
            }
        }
    };

    while (auto m = cursor.next()) {
        while (next < grid.times.size() && grid.times[next] < m->time) {
            check_all();
            ++next;
        }
        if (is_nucleation(m->kind)) {
            // Y^x counts nucleations on <x,x+1> minus those on <x-1,x>.
            const std::size_t a = idx(m->edge), b = idx(m->edge + 1);
            y[a] += 1;
            if (y[a] > ymax[a]) ymax[a] = y[a];
            y[b] -= 1;
            if (y[b] < ymin[b]) ymin[b] = y[b];
        } else {
            auto& walk = arrow_moves_r(m->kind) ? xr : xl;
            // Toward-arrows push the walk up; away-arrows push it down,
            // reflected at zero.
            const std::int32_t toward =
                arrow_direction(m->kind) > 0 ? m->edge + 1 : m->edge;
            const std::int32_t away = arrow_direction(m->kind) > 0 ? m->edge : m->edge + 1;
            walk[idx(toward)] += 1;
            if (walk[idx(away)] > 0) walk[idx(away)] -= 1;
        }
        state.apply_mark(*m);
    }
    while (next < grid.times.size()) {
        check_all();
        ++next;
    }
    out.sites_checked = 2 * L - 1 - (has_defect ? 2 : 0);
    return out;
}

// ---------------------------------------------------------------------
// Four-case fixture support: expose a single coupled step on explicit
// states, reporting the classified virtual jump (if any).
struct CoupledStepResult {
    MarkEffect base_effect;
    MarkEffect perturbed_effect;
    std::optional<VirtualJumpEvent> virtual_jump;
};
CoupledStepResult coupled_step(LatticeState& base, LatticeState& perturbed, const Mark& m);

} // namespace rpng
