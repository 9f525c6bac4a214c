#include "rpng/halfline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rpng/active_set.hpp"
#include "rpng/errors.hpp"
#include "rpng/rng.hpp"

namespace rpng {

namespace {

// Boundaries are kept weakly decreasing by layer: entry i is the right
// boundary of the (i+1)-th pedestal from the bottom, and stacking means
// b[i+1] <= b[i] at all times.
struct HalfLineSystem {
    std::vector<std::int32_t> boundaries;
    std::vector<std::int32_t> count; // boundaries per site, index = site
    ActiveSet active{1};
    std::int32_t max_site;
    bool exhausted = false;

    explicit HalfLineSystem(std::int32_t max_site_) : max_site(max_site_) {
        count.resize(16, 0);
        active.grow(count.size());
    }

    void ensure_site(std::int32_t site) {
        if (static_cast<std::size_t>(site) >= count.size()) {
            count.resize(static_cast<std::size_t>(site) * 2, 0);
            active.grow(count.size());
        }
    }

    void sync(std::int32_t site) {
        active.sync(static_cast<std::size_t>(site), count[static_cast<std::size_t>(site)] > 0);
    }

    void check_order(std::size_t i) {
        const bool ok =
            (i == 0 || boundaries[i - 1] >= boundaries[i]) &&
            (i + 1 >= boundaries.size() || boundaries[i] >= boundaries[i + 1]);
        if (!ok) throw ConsistencyError("half-line stacking order violated");
    }

    std::size_t first_at(std::int32_t site) const {
        return static_cast<std::size_t>(
            std::lower_bound(boundaries.begin(), boundaries.end(), site,
                             std::greater<std::int32_t>()) -
            boundaries.begin());
    }
    std::size_t last_at(std::int32_t site) const {
        return static_cast<std::size_t>(
            std::upper_bound(boundaries.begin(), boundaries.end(), site,
                             std::greater<std::int32_t>()) -
            boundaries.begin()) - 1;
    }

    void birth() {
        // New pedestal on top: boundary at site 1, highest layer.
        boundaries.push_back(1);
        check_order(boundaries.size() - 1);
        ensure_site(1);
        count[1] += 1;
        sync(1);
    }

    void jump(std::int32_t site, int direction) {
        if (direction > 0) {
            if (max_site > 0 && site + 1 > max_site) {
                exhausted = true;
                return;
            }
            // The lowest-layer boundary at this site is free to extend.
            const std::size_t i = first_at(site);
            boundaries[i] += 1;
            check_order(i);
            ensure_site(site + 1);
            count[static_cast<std::size_t>(site)] -= 1;
            count[static_cast<std::size_t>(site) + 1] += 1;
            sync(site);
            sync(site + 1);
        } else {
            // The topmost boundary at this site shrinks; at site 1 the
            // wall annihilates its pedestal.
            const std::size_t i = last_at(site);
            count[static_cast<std::size_t>(site)] -= 1;
            if (site == 1) {
                if (i != boundaries.size() - 1)
                    throw ConsistencyError("dying pedestal was not the topmost");
                boundaries.pop_back();
            } else {
                boundaries[i] -= 1;
                check_order(i);
                count[static_cast<std::size_t>(site) - 1] += 1;
                sync(site - 1);
            }
            sync(site);
        }
    }
};

} // namespace

HalfLineResult run_halfline(double lambda0, double horizon, std::uint64_t seed,
                            const SampleGrid& grid, std::int32_t max_site) {
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
        throw std::invalid_argument("lambda0 must be finite and > 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon must be finite and > 0");

    SplitMix64 rng(stream_key(seed, 0x68616c66ULL /* halfline lane */, 0));
    HalfLineSystem sys(max_site);
    HalfLineResult out;
    out.times.reserve(grid.times.size());
    out.pedestals.reserve(grid.times.size());

    double t = 0.0;
    std::size_t next = 0;
    while (true) {
        const double total = lambda0 + static_cast<double>(sys.active.size());
        const double t_event = t + rng.next_exponential(total);
        while (next < grid.times.size() && grid.times[next] < t_event) {
            out.times.push_back(grid.times[next]);
            out.pedestals.push_back(static_cast<std::int64_t>(sys.boundaries.size()));
            ++next;
        }
        if (t_event > horizon) break;
        t = t_event;
        const double u = rng.next_unit() * total;
        if (u <= lambda0) {
            sys.birth();
        } else {
            const auto site = static_cast<std::int32_t>(
                sys.active.at(static_cast<std::size_t>(rng.next_below(sys.active.size()))));
            sys.jump(site, rng.next_coin() ? +1 : -1);
        }
    }
    out.final_boundaries = sys.boundaries;
    out.window_exhausted = sys.exhausted;
    return out;
}

ExclusionResult run_exclusion_step(double horizon, std::uint64_t seed,
                                   const SampleGrid& grid, std::int32_t half_width) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw std::invalid_argument("horizon must be finite and > 0");
    if (half_width <= 0)
        half_width = static_cast<std::int32_t>(std::ceil(6.0 * std::sqrt(horizon))) + 20;

    const std::int32_t W = half_width;
    const auto idx = [W](std::int32_t site) { return static_cast<std::size_t>(site + W); };

    std::vector<std::uint8_t> occupied(static_cast<std::size_t>(2 * W + 1), 0);
    std::vector<std::int32_t> position; // one entry per particle
    position.reserve(static_cast<std::size_t>(W) + 1);
    for (std::int32_t x = -W; x <= 0; ++x) {
        occupied[idx(x)] = 1;
        position.push_back(x);
    }

    SplitMix64 rng(stream_key(seed, 0x65786373ULL /* exclusion lane */, 0));
    ExclusionResult out;
    out.times.reserve(grid.times.size());
    out.rightmost.reserve(grid.times.size());

    std::int32_t rightmost = 0;
    double t = 0.0;
    std::size_t next = 0;
    const double total = static_cast<double>(position.size()); // constant particle count
    while (true) {
        const double t_event = t + rng.next_exponential(total);
        while (next < grid.times.size() && grid.times[next] < t_event) {
            out.times.push_back(grid.times[next]);
            out.rightmost.push_back(rightmost);
            ++next;
        }
        if (t_event > horizon) break;
        t = t_event;

        const auto p = static_cast<std::size_t>(rng.next_below(position.size()));
        const int dir = rng.next_coin() ? +1 : -1;
        const std::int32_t from = position[p];
        const std::int32_t to = from + dir;
        if (to > W || to < -W) {
            out.window_exhausted = true; // activity reached the window edge
            continue;
        }
        if (occupied[idx(to)]) continue; // exclusion: blocked attempt
        occupied[idx(from)] = 0;
        occupied[idx(to)] = 1;
        position[p] = to;
        if (from == -W) out.window_exhausted = true; // depletion front at the edge
        if (to > rightmost) {
            rightmost = to;
        } else if (from == rightmost && dir < 0) {
            rightmost = to;
        }
    }
    return out;
}

} // namespace rpng
