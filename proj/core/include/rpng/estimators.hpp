#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rpng/engine.hpp"

namespace rpng {

// Height time series of one replica at one edge.
struct ReplicaSeries {
    std::vector<double> times;
    std::vector<double> heights;
    bool boundary_touched = false;
};

ReplicaSeries series_at_origin(const Trajectory& t);
// Heights of the idx-th watch edge of the run options.
ReplicaSeries series_at_watch(const Trajectory& t, std::size_t idx);

struct SpeedEstimate {
    double v_hat = 0.0;
    double stderr_ = 0.0; // replica-to-replica standard error
    int replicas_used = 0;
    int replicas_excluded = 0;
    double fit_lo = 0.0;
    double fit_hi = 0.0;
    std::int32_t edge = 0;
};

// Per replica: least-squares slope of height vs time over samples in
// [fit_lo, fit_hi]; the estimate is the replica mean with its standard
// error. Boundary-touched replicas are excluded; all excluded throws
// ValidityError, fewer than 2 replicas throws std::invalid_argument.
SpeedEstimate estimate_speed(std::span<const ReplicaSeries> replicas, double fit_lo,
                             double fit_hi, std::int32_t edge_label = 0);

struct ScanOptions {
    std::int32_t ref_edge = 10;       // comparison edge away from the defect
    double slope_min_lambda0 = 1.5;   // points >= this enter the slope fit
    int jobs = 0;                      // worker threads; 0 = auto
    std::int32_t half_width = 0;       // 0 = auto window
    int samples = 200;
    double detection_sigmas = 3.0;     // lambda_c threshold in stderr units
};

struct PhaseScanPoint {
    double lambda0 = 0.0;
    SpeedEstimate origin;
    SpeedEstimate ref;
};

struct PhaseScan {
    double lambda = 0.0;
    double horizon = 0.0;
    int replicas = 0;
    std::vector<PhaseScanPoint> points;
    // Smallest grid lambda0 where v(e0) - lambda exceeds the detection
    // threshold; absent (with the flag set) when no point triggers.
    std::optional<double> lambda_c;
    bool lambda_c_out_of_range = false;
    std::optional<double> supercritical_slope;
};

// Replicated event-driven runs per grid point, measured at the origin
// and at the reference edge. The grid must be strictly increasing.
PhaseScan phase_scan(double lambda, std::span<const double> lambda0_grid, double horizon,
                     int replicas, std::uint64_t seed, const ScanOptions& opts = {});

struct AntennaReport {
    bool pass = false;
    double lambda = 0.0;
    double lambda0 = 0.0;
    double tolerance = 0.0;
    SpeedEstimate ref;
    // Edges next to the defect converge noticeably slower; flag them.
    bool slow_convergence = false;
};

// Checks that the growth speed at ref_edge stays at the bulk value
// lambda: passes when |v(ref) - lambda| <= max(0.05, 3 stderr).
AntennaReport antenna_check(double lambda, double lambda0, std::int32_t ref_edge,
                            double horizon, int replicas, std::uint64_t seed,
                            const ScanOptions& opts = {});

// Shared replica driver: event-driven runs with the given watch edges.
std::vector<Trajectory> run_replicas_optimized(double lambda, double lambda0,
                                               std::int32_t half_width, double horizon,
                                               int replicas, std::uint64_t seed,
                                               const SampleGrid& grid,
                                               const RunOptions& opts, int jobs);

} // namespace rpng
