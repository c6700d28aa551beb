#include "caperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "caperc/rng.hpp"

namespace caperc::stats {

Moments moments(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("moments: empty sample");
    Moments m;
    m.count = xs.size();
    double sum = 0.0;
    for (double x : xs) sum += x;
    m.mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.variance = xs.size() > 1 ? ss / static_cast<double>(xs.size() - 1) : 0.0;
    m.stderror = std::sqrt(m.variance / static_cast<double>(xs.size()));
    return m;
}

GofResult poisson_gof(const std::vector<long long>& samples, double mean) {
    if (samples.size() < 500) throw std::invalid_argument("poisson_gof: need >= 500 samples");
    if (!(mean > 0.0)) throw std::invalid_argument("poisson_gof: mean must be > 0");
    const double n = static_cast<double>(samples.size());

    long long max_obs = 0;
    for (long long s : samples) {
        if (s < 0) throw std::invalid_argument("poisson_gof: negative count");
        max_obs = std::max(max_obs, s);
    }

    // Expected Poisson masses, upper tail folded into the last cell.
    std::vector<double> expected;
    double p = std::exp(-mean), cum = 0.0;
    for (long long v = 0; v <= max_obs; ++v) {
        expected.push_back(n * p);
        cum += p;
        p *= mean / static_cast<double>(v + 1);
    }
    expected.push_back(n * (1.0 - cum));
    std::vector<double> observed(expected.size(), 0.0);
    for (long long s : samples) observed[static_cast<std::size_t>(s)] += 1.0;

    // Pool cells from the top until every expected count is >= 5.
    while (expected.size() > 2 && expected.back() < 5.0) {
        expected[expected.size() - 2] += expected.back();
        observed[observed.size() - 2] += observed.back();
        expected.pop_back();
        observed.pop_back();
    }
    // Pooling from the bottom as well, for means large enough to starve cell 0.
    while (expected.size() > 2 && expected.front() < 5.0) {
        expected[1] += expected[0];
        observed[1] += observed[0];
        expected.erase(expected.begin());
        observed.erase(observed.begin());
    }

    GofResult r;
    for (std::size_t i = 0; i < expected.size(); ++i)
        r.statistic += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    r.dof = static_cast<int>(expected.size()) - 1;
    if (r.dof < 1) {
        r.dof = 1;
        r.p_value = 1.0;
        return r;
    }
    boost::math::chi_squared dist(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

double sample_covariance(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("sample_covariance: need paired samples");
    const double mx = moments(xs).mean, my = moments(ys).mean;
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (xs[i] - mx) * (ys[i] - my);
    return s / static_cast<double>(xs.size() - 1);
}

namespace {
Interval percentile_interval(std::vector<double> stats_sorted, double level) {
    std::sort(stats_sorted.begin(), stats_sorted.end());
    const double alpha = (1.0 - level) / 2.0;
    Interval iv;
    iv.lo = quantile(stats_sorted, alpha);
    iv.hi = quantile(stats_sorted, 1.0 - alpha);
    return iv;
}
}  // namespace

Interval bootstrap_ci(const std::vector<double>& xs, double (*statistic)(const std::vector<double>&),
                      double level, std::uint64_t seed) {
    if (xs.empty()) throw std::invalid_argument("bootstrap_ci: empty sample");
    rng::Engine eng(rng::derive(seed, 0xb007));
    std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
    std::vector<double> stats;
    stats.reserve(1000);
    std::vector<double> resample(xs.size());
    for (int b = 0; b < 1000; ++b) {
        for (auto& v : resample) v = xs[pick(eng)];
        stats.push_back(statistic(resample));
    }
    return percentile_interval(std::move(stats), level);
}

Interval covariance_ci(const std::vector<double>& xs, const std::vector<double>& ys, double level,
                       std::uint64_t seed) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("covariance_ci: need paired samples");
    rng::Engine eng(rng::derive(seed, 0xb007));
    std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
    std::vector<double> stats;
    stats.reserve(1000);
    std::vector<double> rx(xs.size()), ry(ys.size());
    for (int b = 0; b < 1000; ++b) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::size_t j = pick(eng);
            rx[i] = xs[j];
            ry[i] = ys[j];
        }
        stats.push_back(sample_covariance(rx, ry));
    }
    return percentile_interval(std::move(stats), level);
}

double quantile(std::vector<double> xs, double p) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(xs.begin(), xs.end());
    const double pos = p * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

}  // namespace caperc::stats
