#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rpng/rng.hpp"

namespace rpng {

// One Poisson mark family of the graphical construction. Arrow families
// are named <species>_<direction>: r_left moves an r-particle one step
// left, l_right moves an l-particle one step right, and so on. The
// ordinal doubles as the on-disk encoding and the timestamp tiebreak.
enum class MarkKind : std::uint8_t {
    r_left = 0,   // left arrow acting on r-particles
    l_left = 1,   // left arrow acting on l-particles
    r_right = 2,  // right arrow acting on r-particles
    l_right = 3,  // right arrow acting on l-particles
    nucleation = 4,
    defect_nucleation = 5, // extra nucleation stream, defect edge only
};

constexpr int kMarkKindCount = 6;

constexpr bool is_arrow(MarkKind k) { return static_cast<int>(k) < 4; }
constexpr bool is_nucleation(MarkKind k) { return !is_arrow(k); }
// Arrow direction: +1 right, -1 left.
constexpr int arrow_direction(MarkKind k) {
    return (k == MarkKind::r_right || k == MarkKind::l_right) ? +1 : -1;
}
// True if the arrow moves r-particles.
constexpr bool arrow_moves_r(MarkKind k) {
    return k == MarkKind::r_left || k == MarkKind::r_right;
}

std::string_view mark_kind_name(MarkKind k);
std::optional<MarkKind> mark_kind_from_name(std::string_view name);

// A time-stamped Harris event on edge <edge, edge+1>.
struct Mark {
    double time = 0.0;
    std::int32_t edge = 0;
    MarkKind kind = MarkKind::nucleation;

    friend bool operator==(const Mark&, const Mark&) = default;
};

// Total order used everywhere: (time, edge, kind ordinal). Simultaneous
// continuous-time events have probability zero; the tiebreak only guards
// against floating-point coincidence across streams.
constexpr bool mark_before(const Mark& a, const Mark& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.edge != b.edge) return a.edge < b.edge;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
}

// Generation parameters. The window holds edges <x, x+1> for
// -half_width <= x < half_width and sites -half_width..half_width.
struct MarkParams {
    double lambda = 0.0;        // bulk nucleation rate per edge
    double lambda0 = 0.0;       // defect nucleation rate at edge 0
    std::int32_t half_width = 1;
    double horizon = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const MarkParams&, const MarkParams&) = default;
};

// Throws std::invalid_argument on non-finite or out-of-range values.
void validate(const MarkParams& p);

constexpr std::int32_t kDefectEdge = 0;

// Lazy chronological merge of the per-edge-per-family Poisson streams.
// Each (edge, family) pair owns a counter-based RNG stream keyed by
// (seed, edge, family), so the produced sequence is deterministic in the
// seed and, for the shared edge range, independent of the window size.
// Memory is O(half_width); marks are produced in mark_before() order.
class MarkStream {
public:
    explicit MarkStream(const MarkParams& params);

    const MarkParams& params() const { return params_; }

    // Next mark in chronological order, or nullopt past the horizon.
    std::optional<Mark> next();

private:
    struct Source {
        double next_time;
        SplitMix64 rng;
        double rate;
        std::int32_t edge;
        MarkKind kind;
    };

    void heap_sift_down(std::size_t i);
    static bool source_before(const Source& a, const Source& b);

    MarkParams params_;
    std::vector<Source> heap_; // binary min-heap by (time, edge, kind)
};

// A materialized, replayable mark log.
struct MarkLog {
    MarkParams params;
    std::vector<Mark> marks;

    friend bool operator==(const MarkLog&, const MarkLog&) = default;
};

// Collects the full stream. Deterministic in the parameters.
MarkLog generate_marks(double lambda, double lambda0, std::int32_t half_width,
                       double horizon, std::uint64_t seed);
MarkLog generate_marks(const MarkParams& params);

// Cursor over a materialized log, same interface as MarkStream.
class LogCursor {
public:
    explicit LogCursor(const MarkLog& log) : log_(&log) {}
    const MarkParams& params() const { return log_->params; }
    std::optional<Mark> next() {
        if (pos_ >= log_->marks.size()) return std::nullopt;
        return log_->marks[pos_++];
    }

private:
    const MarkLog* log_;
    std::size_t pos_ = 0;
};

} // namespace rpng
