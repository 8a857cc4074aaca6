#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace arw::stats {

inline double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

// Lower median.
inline double median(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    const std::size_t k = (xs.size() - 1) / 2;
    std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
    return xs[k];
}

struct MeanCI {
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double se = 0.0;
};

// 95% normal-approximation interval.
inline MeanCI mean_ci95(std::span<const double> xs) {
    MeanCI ci;
    ci.mean = mean(xs);
    ci.se = xs.size() > 1 ? std::sqrt(sample_variance(xs) / static_cast<double>(xs.size())) : 0.0;
    ci.lo = ci.mean - 1.959963984540054 * ci.se;
    ci.hi = ci.mean + 1.959963984540054 * ci.se;
    return ci;
}

inline MeanCI proportion_ci95(std::uint64_t hits, std::uint64_t n) {
    MeanCI ci;
    if (n == 0) return ci;
    ci.mean = static_cast<double>(hits) / static_cast<double>(n);
    ci.se = std::sqrt(ci.mean * (1.0 - ci.mean) / static_cast<double>(n));
    ci.lo = ci.mean - 1.959963984540054 * ci.se;
    ci.hi = ci.mean + 1.959963984540054 * ci.se;
    return ci;
}

}  // namespace arw::stats
