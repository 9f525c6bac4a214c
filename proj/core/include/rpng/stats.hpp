#pragma once

#include <cstdint>
#include <span>

namespace rpng {

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0; // standard error of the mean
    std::size_t n = 0;
};

MeanStderr mean_stderr(std::span<const double> values);

// Least-squares slope of y against x. Requires >= 2 distinct x.
double lsq_slope(std::span<const double> x, std::span<const double> y);

// Two-sided binomial test of p = 1/2 given `successes` out of `n`.
// Exact for small n, normal approximation with continuity correction
// beyond. Returns 1.0 for n = 0.
double binomial_two_sided_p(std::int64_t successes, std::int64_t n);

// Survival function of the standard normal, Phi(-z).
double normal_sf(double z);

} // namespace rpng
