#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rpng/active_set.hpp"
#include "rpng/height.hpp"
#include "rpng/lattice.hpp"
#include "rpng/marks.hpp"
#include "rpng/rng.hpp"

namespace rpng {

// Default window rule: L = ceil(4 * (1 + lambda) * T). Interface
// endpoints are dominated by walks of drift at most lambda, so activity
// reaching that distance by time T is vanishingly unlikely; the
// boundary_touched flag catches violations regardless.
inline std::int32_t auto_half_width(double lambda, double horizon) {
    const double w = std::ceil(4.0 * (1.0 + lambda) * horizon);
    return w < 4.0 ? 4 : static_cast<std::int32_t>(w);
}

struct SampleGrid {
    std::vector<double> times; // strictly increasing, within (0, horizon]

    // count uniform times i*horizon/count, i = 1..count.
    static SampleGrid uniform(double horizon, int count) {
        SampleGrid g;
        g.times.reserve(static_cast<std::size_t>(count));
        for (int i = 1; i <= count; ++i)
            g.times.push_back(horizon * static_cast<double>(i) / count);
        return g;
    }
};

struct TrajectorySample {
    double time = 0.0;
    std::int64_t height_origin = 0;
    std::int64_t flow_left = 0;
    std::int64_t flow_right = 0;
    std::int64_t origin_nucleations = 0;
    bool boundary_touched = false;
    std::vector<std::int32_t> watch_heights; // parallel to RunOptions::watch_edges

    friend bool operator==(const TrajectorySample&, const TrajectorySample&) = default;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    bool boundary_touched = false;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct RunOptions {
    std::vector<std::int32_t> watch_edges;
    // Verify at every sample that the incremental height array matches
    // the particle reconstruction and the origin-edge flow identity.
    bool check_consistency = true;
    // Optional per-sample hook (snapshot export and the like).
    std::function<void(std::size_t, const LatticeState&)> on_sample;
};

struct NullEffectObserver {
    void on_effect(const Mark&, const MarkEffect&, const LatticeState&) {}
};

namespace detail {

inline TrajectorySample make_sample(double t, const LatticeState& state,
                                    const RunOptions& opts) {
    TrajectorySample s;
    s.time = t;
    s.height_origin = state.height(0);
    s.flow_left = state.flow_left();
    s.flow_right = state.flow_right();
    s.origin_nucleations = state.origin_nucleations();
    s.boundary_touched = state.boundary_touched();
    s.watch_heights.reserve(opts.watch_edges.size());
    for (std::int32_t e : opts.watch_edges) s.watch_heights.push_back(state.height(e));
    return s;
}

inline void emit_sample(Trajectory& out, double t, const LatticeState& state,
                        const RunOptions& opts, std::size_t idx) {
    if (opts.check_consistency) {
        check_height_consistency(state);
        if (height_at_origin(state) != state.height(0))
            throw ConsistencyError("origin flow identity violated at a sample");
    }
    out.samples.push_back(make_sample(t, state, opts));
    if (opts.on_sample) opts.on_sample(idx, state);
}

} // namespace detail

// Applies every mark of the cursor in chronological order, sampling the
// state on the grid (a sample at time s reflects all marks with time
// <= s). The observer sees every mark that changed the state.
template <class Cursor, class Observer = NullEffectObserver>
Trajectory run_faithful(Cursor& cursor, const SampleGrid& grid, LatticeState state,
                        const RunOptions& opts = {}, Observer&& obs = {}) {
    Trajectory out;
    out.samples.reserve(grid.times.size());
    std::size_t next = 0;
    while (auto m = cursor.next()) {
        while (next < grid.times.size() && grid.times[next] < m->time) {
            detail::emit_sample(out, grid.times[next], state, opts, next);
            ++next;
        }
        const MarkEffect eff = state.apply_mark(*m);
        if (eff.type != MarkEffect::Type::none) obs.on_effect(*m, eff, state);
    }
    while (next < grid.times.size()) {
        detail::emit_sample(out, grid.times[next], state, opts, next);
        ++next;
    }
    out.boundary_touched = state.boundary_touched();
    return out;
}

inline Trajectory run_faithful(const MarkLog& log, const SampleGrid& grid,
                               const RunOptions& opts = {}) {
    LogCursor cur(log);
    return run_faithful(cur, grid, LatticeState(log.params.half_width), opts);
}

// Streams marks without materializing them; memory stays O(half_width).
inline Trajectory run_faithful(const MarkParams& params, const SampleGrid& grid,
                               const RunOptions& opts = {}) {
    MarkStream stream(params);
    return run_faithful(stream, grid, LatticeState(params.half_width), opts);
}

// Event-driven engine. Instead of replaying every Poisson mark it
// schedules work only where something can happen: each non-empty site
// jumps at total rate 1 (1/2 per direction), nucleation fires at rate
// lambda per edge plus lambda0 at the defect edge. Distributionally
// equivalent to the faithful engine; the replay entry point consumes a
// mark log through the same state core and must reproduce the faithful
// trajectory exactly.
class OptimizedEngine {
public:
    OptimizedEngine(std::int32_t half_width, double lambda, double lambda0)
        : state_(half_width),
          active_(static_cast<std::size_t>(2 * half_width + 1)),
          lambda_(lambda),
          lambda0_(lambda0) {}

    const LatticeState& state() const { return state_; }

    template <class Observer = NullEffectObserver>
    Trajectory run(double horizon, std::uint64_t seed, const SampleGrid& grid,
                   const RunOptions& opts = {}, Observer&& obs = {}) {
        SplitMix64 rng(stream_key(seed, 0x4f70744eULL /* engine stream */, 0));
        Trajectory out;
        out.samples.reserve(grid.times.size());
        const std::int32_t L = state_.half_width();
        const double nuc_rate = lambda_ * 2.0 * L;
        double t = state_.time();
        std::size_t next = 0;

        while (true) {
            const double jump_rate = static_cast<double>(active_.size());
            const double total = jump_rate + nuc_rate + lambda0_;
            double t_event;
            if (total <= 0.0) {
                t_event = horizon + 1.0;
            } else {
                t_event = t + rng.next_exponential(total);
            }
            while (next < grid.times.size() && grid.times[next] < t_event) {
                detail::emit_sample(out, grid.times[next], state_, opts, next);
                ++next;
            }
            // Grid times never exceed the horizon, so everything left was
            // just emitted.
            if (t_event > horizon) break;
            t = t_event;

            const double u = rng.next_unit() * total;
            MarkEffect eff;
            Mark pseudo; // observers receive a synthesized mark
            pseudo.time = t;
            if (u <= jump_rate) {
                const auto idx = active_.at(static_cast<std::size_t>(rng.next_below(active_.size())));
                const std::int32_t site = static_cast<std::int32_t>(idx) - L;
                const int dir = rng.next_coin() ? +1 : -1;
                eff = state_.apply_jump(site, dir, t);
                sync_site(site);
                sync_site(site + dir);
                pseudo.edge = eff.edge;
                pseudo.kind = synth_arrow_kind(eff);
            } else if (u <= jump_rate + nuc_rate) {
                const std::int32_t edge = static_cast<std::int32_t>(rng.next_below(
                                              static_cast<std::uint64_t>(2 * L))) - L;
                eff = state_.apply_nucleation(edge, t, false);
                sync_site(edge);
                sync_site(edge + 1);
                pseudo.edge = edge;
                pseudo.kind = MarkKind::nucleation;
            } else {
                eff = state_.apply_nucleation(kDefectEdge, t, true);
                sync_site(kDefectEdge);
                sync_site(kDefectEdge + 1);
                pseudo.edge = kDefectEdge;
                pseudo.kind = MarkKind::defect_nucleation;
            }
            obs.on_effect(pseudo, eff, state_);
        }
        out.boundary_touched = state_.boundary_touched();
        return out;
    }

    // Mark-replay mode: consumes a log through the optimized engine's
    // bookkeeping. Trajectories must match run_faithful byte for byte.
    template <class Cursor, class Observer = NullEffectObserver>
    Trajectory replay(Cursor& cursor, const SampleGrid& grid, const RunOptions& opts = {},
                      Observer&& obs = {}) {
        Trajectory out;
        out.samples.reserve(grid.times.size());
        std::size_t next = 0;
        while (auto m = cursor.next()) {
            while (next < grid.times.size() && grid.times[next] < m->time) {
                detail::emit_sample(out, grid.times[next], state_, opts, next);
                ++next;
            }
            if (is_arrow(m->kind)) {
                // Skip no-op arrows without touching the state core.
                const std::int32_t src = arrow_direction(m->kind) > 0 ? m->edge : m->edge + 1;
                const std::int32_t s = state_.signed_occupancy(src);
                if (arrow_moves_r(m->kind) ? s <= 0 : s >= 0) continue;
            }
            const MarkEffect eff = state_.apply_mark(*m);
            if (eff.type == MarkEffect::Type::jump) {
                const std::int32_t src = eff.direction > 0 ? eff.edge : eff.edge + 1;
                sync_site(src);
                sync_site(src + eff.direction);
            } else {
                sync_site(eff.edge);
                sync_site(eff.edge + 1);
            }
            obs.on_effect(*m, eff, state_);
        }
        while (next < grid.times.size()) {
            detail::emit_sample(out, grid.times[next], state_, opts, next);
            ++next;
        }
        out.boundary_touched = state_.boundary_touched();
        return out;
    }

private:
    static MarkKind synth_arrow_kind(const MarkEffect& eff) {
        if (eff.moved == Species::right)
            return eff.direction > 0 ? MarkKind::r_right : MarkKind::r_left;
        return eff.direction > 0 ? MarkKind::l_right : MarkKind::l_left;
    }

    void sync_site(std::int32_t site) {
        active_.sync(state_.site_index(site), state_.occupied(site));
    }

    LatticeState state_;
    ActiveSet active_;
    double lambda_;
    double lambda0_;
};

} // namespace rpng
