#include "rpng/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rpng {

MeanStderr mean_stderr(std::span<const double> values) {
    MeanStderr r;
    r.n = values.size();
    if (r.n == 0) return r;
    double sum = 0.0;
    for (double v : values) sum += v;
    r.mean = sum / static_cast<double>(r.n);
    if (r.n < 2) return r;
    double ss = 0.0;
    for (double v : values) {
        const double d = v - r.mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(r.n - 1);
    r.stderr_ = std::sqrt(var / static_cast<double>(r.n));
    return r;
}

double lsq_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("lsq_slope needs two equally sized series");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("lsq_slope: degenerate x values");
    return sxy / sxx;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double binomial_two_sided_p(std::int64_t successes, std::int64_t n) {
    if (n <= 0) return 1.0;
    const std::int64_t k = std::max(successes, n - successes);
    if (2 * k == n) return 1.0;
    if (n <= 1024) {
        // Exact tail: P(X >= k) for X ~ Bin(n, 1/2), doubled.
        double tail = 0.0;
        for (std::int64_t i = k; i <= n; ++i) {
            const double logp = std::lgamma(static_cast<double>(n + 1)) -
                                std::lgamma(static_cast<double>(i + 1)) -
                                std::lgamma(static_cast<double>(n - i + 1)) -
                                static_cast<double>(n) * std::log(2.0);
            tail += std::exp(logp);
        }
        return std::min(1.0, 2.0 * tail);
    }
    const double mean = static_cast<double>(n) / 2.0;
    const double sd = std::sqrt(static_cast<double>(n)) / 2.0;
    const double z = (static_cast<double>(k) - 0.5 - mean) / sd;
    return std::min(1.0, 2.0 * normal_sf(z));
}

} // namespace rpng
