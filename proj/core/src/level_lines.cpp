#include "rpng/level_lines.hpp"

#include <algorithm>
#include <string>

namespace rpng {

std::int64_t LevelLineSet::loops_in_layer(std::int32_t layer) const {
    std::int64_t n = 0;
    for (const auto& c : curves) n += (c.layer == layer && c.closed) ? 1 : 0;
    return n;
}

std::int64_t LevelLineSet::open_in_layer(std::int32_t layer) const {
    std::int64_t n = 0;
    for (const auto& c : curves) n += (c.layer == layer && !c.closed) ? 1 : 0;
    return n;
}

std::int64_t probe_height(const LevelLineSet& set, std::int32_t edge, double time) {
    std::int64_t h = 0;
    for (const auto& c : set.curves) {
        std::int64_t crossings = 0;
        auto crosses = [&](double t0, std::int32_t s0, double t1, std::int32_t s1) {
            // Horizontal segments only; they all span exactly one edge.
            if (t0 != t1 || s0 == s1) return;
            if (t0 > time) return;
            if (std::min(s0, s1) == edge) ++crossings;
        };
        for (std::size_t i = 1; i < c.vertices.size(); ++i)
            crosses(c.vertices[i - 1].first, c.vertices[i - 1].second,
                    c.vertices[i].first, c.vertices[i].second);
        if (c.closed && c.vertices.size() > 1)
            crosses(c.vertices.back().first, c.vertices.back().second,
                    c.vertices.front().first, c.vertices.front().second);
        h += crossings & 1;
    }
    return h;
}

LevelLineTracer::Layer& LevelLineTracer::layer(std::int32_t k) {
    if (static_cast<std::size_t>(k) > layers_.size()) layers_.resize(static_cast<std::size_t>(k));
    return layers_[static_cast<std::size_t>(k - 1)];
}

std::int32_t LevelLineTracer::new_strand(std::int32_t k, std::int32_t site, double t) {
    Strand s;
    s.layer = k;
    s.birth_site = site;
    s.birth_time = t;
    s.site = site;
    strands_.push_back(std::move(s));
    return static_cast<std::int32_t>(strands_.size() - 1);
}

void LevelLineTracer::gain_edge(std::int32_t k, std::int32_t edge, double t,
                                const LatticeState& state) {
    Layer& lay = layer(k);
    const std::int32_t L = state.half_width();
    const bool left_cov = edge - 1 >= -L && state.height(edge - 1) >= k;
    const bool right_cov = edge + 1 < L && state.height(edge + 1) >= k;

    if (!left_cov && !right_cov) {
        // Pedestal: fresh interval [edge, edge+1] with a linked strand pair.
        const std::int32_t sl = new_strand(k, edge, t);
        const std::int32_t sr = new_strand(k, edge + 1, t);
        strands_[sl].birth_partner = sr;
        strands_[sr].birth_partner = sl;
        lay.by_left[edge] = Interval{edge + 1, sl, sr};
        lay.right_to_left[edge + 1] = edge;
        return;
    }
    if (left_cov && !right_cov) {
        // Interval [a, edge] extends right; its r-strand hops to edge+1.
        const auto rit = lay.right_to_left.find(edge);
        if (rit == lay.right_to_left.end())
            throw ConsistencyError("level-line tracker lost an interval (extend right)");
        const std::int32_t a = rit->second;
        Interval& iv = lay.by_left.at(a);
        strands_[iv.right_strand].jumps.emplace_back(t, edge + 1);
        strands_[iv.right_strand].site = edge + 1;
        iv.right = edge + 1;
        lay.right_to_left.erase(rit);
        lay.right_to_left[edge + 1] = a;
        return;
    }
    if (!left_cov && right_cov) {
        // Interval [edge+1, b] extends left; its l-strand hops to edge.
        const auto it = lay.by_left.find(edge + 1);
        if (it == lay.by_left.end())
            throw ConsistencyError("level-line tracker lost an interval (extend left)");
        Interval iv = it->second;
        strands_[iv.left_strand].jumps.emplace_back(t, edge);
        strands_[iv.left_strand].site = edge;
        lay.by_left.erase(it);
        lay.by_left[edge] = iv;
        lay.right_to_left[iv.right] = edge;
        return;
    }
    // Both neighbors covered: plateaux [a, edge] and [edge+1, b] merge.
    // The two inner strands die, joined by the horizontal segment at t.
    const auto rit = lay.right_to_left.find(edge);
    const auto it = lay.by_left.find(edge + 1);
    if (rit == lay.right_to_left.end() || it == lay.by_left.end())
        throw ConsistencyError("level-line tracker lost an interval (merge)");
    const std::int32_t a = rit->second;
    Interval& left_iv = lay.by_left.at(a);
    const Interval right_iv = it->second;
    Strand& dying_r = strands_[left_iv.right_strand];
    Strand& dying_l = strands_[right_iv.left_strand];
    dying_r.death_time = t;
    dying_l.death_time = t;
    dying_r.death_partner = right_iv.left_strand;
    dying_l.death_partner = left_iv.right_strand;
    left_iv.right = right_iv.right;
    left_iv.right_strand = right_iv.right_strand;
    lay.by_left.erase(it);
    lay.right_to_left.erase(rit);
    lay.right_to_left[left_iv.right] = a;
    return;
}

void LevelLineTracer::lose_edge(std::int32_t k, std::int32_t edge, double t) {
    Layer& lay = layer(k);
    if (auto it = lay.by_left.find(edge); it != lay.by_left.end()) {
        Interval iv = it->second;
        if (iv.right == edge + 1) {
            // Width-one plateau vanishes; close the loop.
            Strand& sl = strands_[iv.left_strand];
            Strand& sr = strands_[iv.right_strand];
            sl.death_time = t;
            sr.death_time = t;
            sl.death_partner = iv.right_strand;
            sr.death_partner = iv.left_strand;
            lay.by_left.erase(it);
            lay.right_to_left.erase(iv.right);
            return;
        }
        // Shrinks from the left; l-strand hops right.
        strands_[iv.left_strand].jumps.emplace_back(t, edge + 1);
        strands_[iv.left_strand].site = edge + 1;
        lay.by_left.erase(it);
        lay.by_left[edge + 1] = iv;
        lay.right_to_left[iv.right] = edge + 1;
        return;
    }
    if (auto rit = lay.right_to_left.find(edge + 1); rit != lay.right_to_left.end()) {
        // Shrinks from the right; r-strand hops left.
        const std::int32_t a = rit->second;
        Interval& iv = lay.by_left.at(a);
        strands_[iv.right_strand].jumps.emplace_back(t, edge);
        strands_[iv.right_strand].site = edge;
        iv.right = edge;
        lay.right_to_left.erase(rit);
        lay.right_to_left[edge] = a;
        return;
    }
    // Plateaux never split: an interior edge cannot drop below the
    // layer while both neighbors stay in it.
    throw ConsistencyError("level set lost an interior edge at layer " + std::to_string(k));
}

void LevelLineTracer::on_effect(const Mark&, const MarkEffect& eff, const LatticeState& state) {
    const double t = state.time();
    const std::int32_t h = state.height(eff.edge);
    if (eff.height_delta > 0)
        gain_edge(h, eff.edge, t, state);
    else
        lose_edge(h + 1, eff.edge, t);
}

LevelLineSet LevelLineTracer::finish(double horizon) {
    LevelLineSet set;
    set.horizon = horizon;
    set.max_layer = static_cast<std::int32_t>(layers_.size());

    std::vector<std::int32_t> widest_strand(layers_.size(), -1);
    for (std::size_t k = 0; k < layers_.size(); ++k) {
        std::int64_t best = -1;
        for (const auto& [a, iv] : layers_[k].by_left) {
            const std::int64_t w = static_cast<std::int64_t>(iv.right) - a;
            if (w > best) {
                best = w;
                widest_strand[k] = iv.left_strand;
            }
        }
    }

    std::vector<std::int32_t> strand_curve(strands_.size(), -1);
    std::vector<bool> visited(strands_.size(), false);

    // Appends strand `sid` to the curve, walking birth->end when
    // from_birth, and returns the strand linked at the exit end (-1 at
    // the horizon). Death links join death ends, birth links join birth
    // ends, so traversal direction alternates along the curve.
    auto append = [&](LevelCurve& c, std::int32_t curve_id, std::int32_t sid,
                      bool from_birth) -> std::int32_t {
        Strand& s = strands_[static_cast<std::size_t>(sid)];
        visited[static_cast<std::size_t>(sid)] = true;
        strand_curve[static_cast<std::size_t>(sid)] = curve_id;
        const double end_time = s.death_time >= 0.0 ? s.death_time : horizon;
        if (from_birth) {
            c.vertices.emplace_back(s.birth_time, s.birth_site);
            std::int32_t site = s.birth_site;
            for (const auto& [t, to] : s.jumps) {
                c.vertices.emplace_back(t, site);
                c.vertices.emplace_back(t, to);
                site = to;
            }
            c.vertices.emplace_back(end_time, site);
            return s.death_partner;
        }
        c.vertices.emplace_back(end_time, s.site);
        for (std::size_t j = s.jumps.size(); j-- > 0;) {
            const auto& [t, to] = s.jumps[j];
            c.vertices.emplace_back(t, to);
            c.vertices.emplace_back(t, j > 0 ? s.jumps[j - 1].second : s.birth_site);
        }
        c.vertices.emplace_back(s.birth_time, s.birth_site);
        return s.birth_partner;
    };

    auto walk = [&](std::int32_t start, bool start_from_birth, bool closed) {
        LevelCurve c;
        c.layer = strands_[static_cast<std::size_t>(start)].layer;
        c.closed = closed;
        const auto curve_id = static_cast<std::int32_t>(set.curves.size());
        std::int32_t sid = start;
        bool from_birth = start_from_birth;
        while (sid >= 0 && !visited[static_cast<std::size_t>(sid)]) {
            sid = append(c, curve_id, sid, from_birth);
            from_birth = !from_birth;
        }
        set.curves.push_back(std::move(c));
    };

    // Open curves: start from each surviving strand's horizon end.
    for (std::size_t i = 0; i < strands_.size(); ++i) {
        if (visited[i] || strands_[i].death_time >= 0.0) continue;
        walk(static_cast<std::int32_t>(i), false, false);
    }
    // Everything left is a loop.
    for (std::size_t i = 0; i < strands_.size(); ++i) {
        if (visited[i]) continue;
        walk(static_cast<std::int32_t>(i), true, true);
    }

    for (std::size_t k = 0; k < widest_strand.size(); ++k) {
        if (widest_strand[k] < 0) continue;
        const std::int32_t cid = strand_curve[static_cast<std::size_t>(widest_strand[k])];
        if (cid >= 0) set.curves[static_cast<std::size_t>(cid)].candidate_unbounded = true;
    }
    return set;
}

LevelLineRun trace_level_lines(const MarkLog& log, const SampleGrid& grid,
                               const RunOptions& opts) {
    LevelLineTracer tracer;
    LogCursor cur(log);
    LevelLineRun run;
    run.trajectory =
        run_faithful(cur, grid, LatticeState(log.params.half_width), opts, tracer);
    run.lines = tracer.finish(log.params.horizon);
    return run;
}

// ---------------------------------------------------------------------

void FirstLayerTracker::on_effect(const Mark&, const MarkEffect& eff,
                                  const LatticeState& state) {
    const std::int32_t h = state.height(eff.edge);
    const std::int32_t edge = eff.edge;

    // Interval [a, b] covers edges a..b-1.
    auto covering = [&](std::int32_t e) {
        auto it = intervals_.upper_bound(e);
        if (it == intervals_.begin()) return intervals_.end();
        --it;
        return it->second > e ? it : intervals_.end();
    };

    if (eff.height_delta > 0 && h == 1) {
        const auto left_iv = covering(edge - 1);
        const auto right_iv = intervals_.find(edge + 1);
        const bool left_cov = left_iv != intervals_.end();
        const bool right_cov = right_iv != intervals_.end();
        if (!left_cov && !right_cov) {
            intervals_[edge] = edge + 1;
        } else if (left_cov && right_cov) {
            left_iv->second = right_iv->second;
            intervals_.erase(right_iv);
        } else if (left_cov) {
            left_iv->second = edge + 1;
        } else {
            const std::int32_t b = right_iv->second;
            intervals_.erase(right_iv);
            intervals_[edge] = b;
        }
    } else if (eff.height_delta < 0 && h == 0) {
        if (auto it = intervals_.find(edge); it != intervals_.end()) {
            const std::int32_t b = it->second;
            intervals_.erase(it);
            if (b != edge + 1) intervals_[edge + 1] = b;
            return;
        }
        const auto it = covering(edge);
        if (it == intervals_.end() || it->second != edge + 1)
            throw ConsistencyError("first-layer tracker lost an interval");
        it->second = edge;
    }
}

void FirstLayerTracker::sample(double t) {
    trace_.times.push_back(t);
    std::int32_t l = kNoLeftEnd, r = kNoRightEnd;
    if (!intervals_.empty()) {
        auto it = intervals_.upper_bound(0);
        if (it != intervals_.begin()) {
            --it;
            if (it->second > 0) { // covers edge 0 iff a <= 0 < b
                l = it->first;
                r = it->second;
            }
        }
    }
    trace_.left.push_back(l);
    trace_.right.push_back(r);
    const bool covered = l != kNoLeftEnd && l <= -covering_k_ && r >= covering_k_;
    if (!covered) trace_.last_uncovered = t;
}

FirstLayerTrace FirstLayerTracker::take(double horizon) {
    trace_.k = covering_k_;
    trace_.covered_at_horizon =
        !trace_.times.empty() && trace_.last_uncovered < trace_.times.back();
    (void)horizon;
    return std::move(trace_);
}

namespace {

template <class Cursor>
FirstLayerTrace run_first_layer(Cursor& cursor, std::int32_t half_width,
                                const SampleGrid& grid, std::int32_t covering_half_width,
                                double horizon) {
    FirstLayerTracker tracker(covering_half_width);
    LatticeState state(half_width);
    std::size_t next = 0;
    while (auto m = cursor.next()) {
        while (next < grid.times.size() && grid.times[next] < m->time)
            tracker.sample(grid.times[next++]);
        const MarkEffect eff = state.apply_mark(*m);
        if (eff.type != MarkEffect::Type::none) tracker.on_effect(*m, eff, state);
    }
    while (next < grid.times.size()) tracker.sample(grid.times[next++]);
    return tracker.take(horizon);
}

} // namespace

FirstLayerTrace first_layer_trace(const MarkLog& log, const SampleGrid& grid,
                                  std::int32_t covering_half_width) {
    LogCursor cur(log);
    return run_first_layer(cur, log.params.half_width, grid, covering_half_width,
                           log.params.horizon);
}

FirstLayerTrace first_layer_trace(const MarkParams& params, const SampleGrid& grid,
                                  std::int32_t covering_half_width) {
    MarkStream stream(params);
    return run_first_layer(stream, params.half_width, grid, covering_half_width,
                           params.horizon);
}

} // namespace rpng
