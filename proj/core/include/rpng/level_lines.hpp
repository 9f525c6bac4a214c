#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "rpng/engine.hpp"
#include "rpng/lattice.hpp"
#include "rpng/marks.hpp"

namespace rpng {

// Space-time boundary curve of one layer's plateaux: alternating
// vertical (time) and horizontal (jump / birth / merge) segments, in
// (time, site) vertices. Closed curves are finished plateau histories;
// open curves reached the horizon.
struct LevelCurve {
    std::int32_t layer = 0;
    bool closed = false;
    // The open curve attached to the layer's widest surviving plateau;
    // at most one per layer.
    bool candidate_unbounded = false;
    std::vector<std::pair<double, std::int32_t>> vertices; // (time, site)
};

struct LevelLineSet {
    double horizon = 0.0;
    std::int32_t max_layer = 0;
    std::vector<LevelCurve> curves;

    std::int64_t loops_in_layer(std::int32_t layer) const;
    std::int64_t open_in_layer(std::int32_t layer) const;
};

// Height read off the curve geometry alone: the number of curves whose
// horizontal segments cross below (edge, time) an odd number of times.
// Must equal the engine height exactly at any non-event (edge, time).
std::int64_t probe_height(const LevelLineSet& set, std::int32_t edge, double time);

// Observer tracking every layer's plateau intervals and their boundary
// strands. Feed it each state-changing effect; call finish() once.
class LevelLineTracer {
public:
    void on_effect(const Mark&, const MarkEffect& eff, const LatticeState& state);
    LevelLineSet finish(double horizon);

private:
    struct Interval {
        std::int32_t right;        // covers edges [left, right)
        std::int32_t left_strand;  // strand id of the l-boundary
        std::int32_t right_strand; // strand id of the r-boundary
    };
    struct Layer {
        std::map<std::int32_t, Interval> by_left;
        std::map<std::int32_t, std::int32_t> right_to_left;
    };
    struct Strand {
        std::int32_t layer;
        std::int32_t birth_site;
        double birth_time;
        std::int32_t site; // current position
        double death_time = -1.0;
        std::int32_t birth_partner = -1;
        std::int32_t death_partner = -1;
        std::vector<std::pair<double, std::int32_t>> jumps; // (time, new site)
    };

    Layer& layer(std::int32_t k);
    std::int32_t new_strand(std::int32_t k, std::int32_t site, double t);
    void gain_edge(std::int32_t k, std::int32_t edge, double t, const LatticeState& state);
    void lose_edge(std::int32_t k, std::int32_t edge, double t);

    std::vector<Layer> layers_;
    std::vector<Strand> strands_;
};

struct LevelLineRun {
    LevelLineSet lines;
    Trajectory trajectory;
};

// Faithful run of the log with full level-line tracing; the trajectory
// is sampled on the grid with the usual options (probe edges go in
// opts.watch_edges).
LevelLineRun trace_level_lines(const MarkLog& log, const SampleGrid& grid,
                               const RunOptions& opts = {});

// ---------------------------------------------------------------------
// First-layer plateau trace: endpoints (L_t, R_t) of the layer-1
// plateau containing the origin edge, with the +inf/-inf convention
// encoded by sentinels when the origin is uncovered.

inline constexpr std::int32_t kNoLeftEnd = std::numeric_limits<std::int32_t>::max();
inline constexpr std::int32_t kNoRightEnd = std::numeric_limits<std::int32_t>::min();

struct FirstLayerTrace {
    std::vector<double> times;
    std::vector<std::int32_t> left;  // L_t or kNoLeftEnd
    std::vector<std::int32_t> right; // R_t or kNoRightEnd
    // Covering of the compact [-K, K]:
    std::int32_t k = 0;
    double last_uncovered = 0.0; // last sample time with [-K,K] not covered
    bool covered_at_horizon = false;
};

// Observer maintaining only the layer-1 interval set; O(log n) per
// event, no geometry stored. Works under either engine.
class FirstLayerTracker {
public:
    explicit FirstLayerTracker(std::int32_t covering_half_width)
        : covering_k_(covering_half_width) {}

    void on_effect(const Mark&, const MarkEffect& eff, const LatticeState& state);
    void sample(double t);
    FirstLayerTrace take(double horizon);

private:
    std::int32_t covering_k_;
    std::map<std::int32_t, std::int32_t> intervals_; // left -> right
    FirstLayerTrace trace_;
};

// Convenience drivers: faithful over a log, or event-driven from
// parameters (for replicated statistics).
FirstLayerTrace first_layer_trace(const MarkLog& log, const SampleGrid& grid,
                                  std::int32_t covering_half_width);
FirstLayerTrace first_layer_trace(const MarkParams& params, const SampleGrid& grid,
                                  std::int32_t covering_half_width);

} // namespace rpng
