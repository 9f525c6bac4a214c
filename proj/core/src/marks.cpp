#include "rpng/marks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace rpng {

namespace {

constexpr std::string_view kKindNames[kMarkKindCount] = {
    "r_left", "l_left", "r_right", "l_right", "nuc", "nuc0",
};

} // namespace

std::string_view mark_kind_name(MarkKind k) {
    return kKindNames[static_cast<int>(k)];
}

std::optional<MarkKind> mark_kind_from_name(std::string_view name) {
    for (int i = 0; i < kMarkKindCount; ++i) {
        if (kKindNames[i] == name) return static_cast<MarkKind>(i);
    }
    return std::nullopt;
}

void validate(const MarkParams& p) {
    if (!std::isfinite(p.lambda) || p.lambda < 0.0)
        throw std::invalid_argument("lambda must be finite and >= 0");
    if (!std::isfinite(p.lambda0) || p.lambda0 < 0.0)
        throw std::invalid_argument("lambda0 must be finite and >= 0");
    if (p.half_width < 1)
        throw std::invalid_argument("window half-width must be >= 1");
    if (!std::isfinite(p.horizon) || p.horizon <= 0.0)
        throw std::invalid_argument("horizon must be finite and > 0");
}

MarkStream::MarkStream(const MarkParams& params) : params_(params) {
    validate(params_);
    const std::int32_t lo = -params_.half_width;
    const std::int32_t hi = params_.half_width; // edges lo..hi-1

    auto add_source = [&](std::int32_t edge, MarkKind kind, double rate) {
        if (rate <= 0.0) return;
        Source s;
        s.rng = SplitMix64(stream_key(params_.seed,
                                      static_cast<std::uint64_t>(static_cast<std::int64_t>(edge)),
                                      static_cast<std::uint64_t>(kind)));
        s.rate = rate;
        s.edge = edge;
        s.kind = kind;
        s.next_time = s.rng.next_exponential(rate);
        if (s.next_time <= params_.horizon) heap_.push_back(s);
    };

    for (std::int32_t e = lo; e < hi; ++e) {
        add_source(e, MarkKind::r_left, 0.5);
        add_source(e, MarkKind::l_left, 0.5);
        add_source(e, MarkKind::r_right, 0.5);
        add_source(e, MarkKind::l_right, 0.5);
        add_source(e, MarkKind::nucleation, params_.lambda);
    }
    add_source(kDefectEdge, MarkKind::defect_nucleation, params_.lambda0);

    // Build the heap bottom-up.
    if (!heap_.empty()) {
        for (std::size_t i = heap_.size() / 2; i-- > 0;) heap_sift_down(i);
    }
}

bool MarkStream::source_before(const Source& a, const Source& b) {
    if (a.next_time != b.next_time) return a.next_time < b.next_time;
    if (a.edge != b.edge) return a.edge < b.edge;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
}

void MarkStream::heap_sift_down(std::size_t i) {
    const std::size_t n = heap_.size();
    while (true) {
        std::size_t best = i;
        const std::size_t l = 2 * i + 1, r = 2 * i + 2;
        if (l < n && source_before(heap_[l], heap_[best])) best = l;
        if (r < n && source_before(heap_[r], heap_[best])) best = r;
        if (best == i) return;
        std::swap(heap_[i], heap_[best]);
        i = best;
    }
}

std::optional<Mark> MarkStream::next() {
    if (heap_.empty()) return std::nullopt;
    Source& top = heap_.front();
    Mark m{top.next_time, top.edge, top.kind};

    // Advance the popped stream; enforce strict per-stream increase so
    // ties can only occur across streams (resolved by edge/kind).
    double t = top.next_time + top.rng.next_exponential(top.rate);
    if (t <= top.next_time)
        t = std::nextafter(top.next_time, std::numeric_limits<double>::infinity());
    if (t > params_.horizon) {
        top = heap_.back();
        heap_.pop_back();
        if (!heap_.empty()) heap_sift_down(0);
    } else {
        top.next_time = t;
        heap_sift_down(0);
    }
    return m;
}

MarkLog generate_marks(const MarkParams& params) {
    MarkStream stream(params);
    MarkLog log;
    log.params = params;
    // Arrow families contribute intensity 2 per edge; reserve accordingly.
    const double expect = (2.0 + params.lambda) * 2.0 * params.half_width * params.horizon +
                          params.lambda0 * params.horizon;
    if (expect < 1e8) log.marks.reserve(static_cast<std::size_t>(expect * 1.05) + 16);
    while (auto m = stream.next()) log.marks.push_back(*m);
    return log;
}

MarkLog generate_marks(double lambda, double lambda0, std::int32_t half_width,
                       double horizon, std::uint64_t seed) {
    return generate_marks(MarkParams{lambda, lambda0, half_width, horizon, seed});
}

} // namespace rpng
