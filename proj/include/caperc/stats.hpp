#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace caperc::stats {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double stderror = 0.0;  // sqrt(variance / count)
    std::size_t count = 0;
};

Moments moments(const std::vector<double>& xs);

struct GofResult {
    double statistic = 0.0;
    double p_value = 0.0;
    int dof = 0;
};

// Chi-square test of integer counts against Poisson(mean); upper bins
// pooled so every expected count is >= 5. Requires >= 500 samples.
GofResult poisson_gof(const std::vector<long long>& samples, double mean);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Percentile bootstrap CI (1000 resamples) of an arbitrary statistic
// over paired samples; used for covariance and nu_ell estimates.
Interval bootstrap_ci(const std::vector<double>& xs, double (*statistic)(const std::vector<double>&),
                      double level, std::uint64_t seed);

double sample_covariance(const std::vector<double>& xs, const std::vector<double>& ys);

// Bootstrap CI of the covariance of paired samples.
Interval covariance_ci(const std::vector<double>& xs, const std::vector<double>& ys, double level,
                       std::uint64_t seed);

double quantile(std::vector<double> xs, double p);

}  // namespace caperc::stats
