#include "rpng/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpng/parallel.hpp"
#include "rpng/stats.hpp"

namespace rpng {

ReplicaSeries series_at_origin(const Trajectory& t) {
    ReplicaSeries s;
    s.boundary_touched = t.boundary_touched;
    s.times.reserve(t.samples.size());
    s.heights.reserve(t.samples.size());
    for (const auto& p : t.samples) {
        s.times.push_back(p.time);
        s.heights.push_back(static_cast<double>(p.height_origin));
    }
    return s;
}

ReplicaSeries series_at_watch(const Trajectory& t, std::size_t idx) {
    ReplicaSeries s;
    s.boundary_touched = t.boundary_touched;
    s.times.reserve(t.samples.size());
    s.heights.reserve(t.samples.size());
    for (const auto& p : t.samples) {
        s.times.push_back(p.time);
        s.heights.push_back(static_cast<double>(p.watch_heights.at(idx)));
    }
    return s;
}

SpeedEstimate estimate_speed(std::span<const ReplicaSeries> replicas, double fit_lo,
                             double fit_hi, std::int32_t edge_label) {
    if (replicas.size() < 2)
        throw std::invalid_argument("estimate_speed needs at least 2 replicas");
    if (!(fit_lo < fit_hi))
        throw std::invalid_argument("empty fit window");

    std::vector<double> slopes;
    int excluded = 0;
    std::vector<double> xs, ys;
    for (const auto& r : replicas) {
        if (r.boundary_touched) {
            ++excluded;
            continue;
        }
        xs.clear();
        ys.clear();
        for (std::size_t i = 0; i < r.times.size(); ++i) {
            if (r.times[i] >= fit_lo && r.times[i] <= fit_hi) {
                xs.push_back(r.times[i]);
                ys.push_back(r.heights[i]);
            }
        }
        if (xs.size() < 2)
            throw std::invalid_argument("fit window contains fewer than 2 samples");
        slopes.push_back(lsq_slope(xs, ys));
    }
    if (slopes.empty())
        throw ValidityError("every replica touched the window boundary");

    const MeanStderr ms = mean_stderr(slopes);
    SpeedEstimate e;
    e.v_hat = ms.mean;
    e.stderr_ = ms.stderr_;
    e.replicas_used = static_cast<int>(slopes.size());
    e.replicas_excluded = excluded;
    e.fit_lo = fit_lo;
    e.fit_hi = fit_hi;
    e.edge = edge_label;
    return e;
}

std::vector<Trajectory> run_replicas_optimized(double lambda, double lambda0,
                                               std::int32_t half_width, double horizon,
                                               int replicas, std::uint64_t seed,
                                               const SampleGrid& grid,
                                               const RunOptions& opts, int jobs) {
    std::vector<Trajectory> out(static_cast<std::size_t>(replicas));
    parallel_for(replicas, jobs, [&](int r) {
        OptimizedEngine engine(half_width, lambda, lambda0);
        out[static_cast<std::size_t>(r)] =
            engine.run(horizon, stream_key(seed, 0x7265706cULL, static_cast<std::uint64_t>(r)),
                       grid, opts);
    });
    return out;
}

namespace {

PhaseScanPoint scan_point(double lambda, double lambda0, double horizon, int replicas,
                          std::uint64_t seed, const ScanOptions& opts) {
    const std::int32_t L =
        opts.half_width > 0 ? opts.half_width : auto_half_width(lambda, horizon);
    const SampleGrid grid = SampleGrid::uniform(horizon, opts.samples);
    RunOptions ropts;
    ropts.watch_edges = {opts.ref_edge};
    const auto runs = run_replicas_optimized(lambda, lambda0, L, horizon, replicas, seed,
                                             grid, ropts, opts.jobs);

    std::vector<ReplicaSeries> origin, ref;
    origin.reserve(runs.size());
    ref.reserve(runs.size());
    for (const auto& t : runs) {
        origin.push_back(series_at_origin(t));
        ref.push_back(series_at_watch(t, 0));
    }
    PhaseScanPoint p;
    p.lambda0 = lambda0;
    p.origin = estimate_speed(origin, horizon / 2.0, horizon, 0);
    p.ref = estimate_speed(ref, horizon / 2.0, horizon, opts.ref_edge);
    return p;
}

} // namespace

PhaseScan phase_scan(double lambda, std::span<const double> lambda0_grid, double horizon,
                     int replicas, std::uint64_t seed, const ScanOptions& opts) {
    if (lambda0_grid.empty()) throw std::invalid_argument("empty lambda0 grid");
    for (std::size_t i = 1; i < lambda0_grid.size(); ++i)
        if (!(lambda0_grid[i] > lambda0_grid[i - 1]))
            throw std::invalid_argument("lambda0 grid must be strictly increasing");

    PhaseScan scan;
    scan.lambda = lambda;
    scan.horizon = horizon;
    scan.replicas = replicas;
    for (std::size_t i = 0; i < lambda0_grid.size(); ++i) {
        scan.points.push_back(scan_point(lambda, lambda0_grid[i], horizon, replicas,
                                         stream_key(seed, 0x7363616eULL, i), opts));
    }

    for (const auto& p : scan.points) {
        const double excess = p.origin.v_hat - lambda;
        if (excess > opts.detection_sigmas * p.origin.stderr_) {
            scan.lambda_c = p.lambda0;
            break;
        }
    }
    scan.lambda_c_out_of_range = !scan.lambda_c.has_value();

    std::vector<double> xs, ys;
    for (const auto& p : scan.points) {
        if (p.lambda0 >= opts.slope_min_lambda0) {
            xs.push_back(p.lambda0);
            ys.push_back(p.origin.v_hat);
        }
    }
    if (xs.size() >= 2) scan.supercritical_slope = lsq_slope(xs, ys);
    return scan;
}

AntennaReport antenna_check(double lambda, double lambda0, std::int32_t ref_edge,
                            double horizon, int replicas, std::uint64_t seed,
                            const ScanOptions& opts) {
    ScanOptions o = opts;
    o.ref_edge = ref_edge;
    const PhaseScanPoint p = scan_point(lambda, lambda0, horizon, replicas, seed, o);

    AntennaReport rep;
    rep.lambda = lambda;
    rep.lambda0 = lambda0;
    rep.ref = p.ref;
    rep.tolerance = std::max(0.05, 3.0 * p.ref.stderr_);
    rep.pass = std::abs(p.ref.v_hat - lambda) <= rep.tolerance;
    rep.slow_convergence = ref_edge != 0 && std::abs(ref_edge) <= 2;
    return rep;
}

} // namespace rpng
