#include "caperc/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace caperc::theory {

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::Supercritical: return "supercritical";
        case Regime::Intermediate: return "intermediate";
        case Regime::IntermediateStrict: return "intermediate-strict";
        case Regime::CriticalTop: return "critical-top";
        case Regime::CriticalBottom: return "critical-bottom";
        case Regime::Subcritical: return "subcritical";
    }
    return "?";
}

Regime classify_regime(const ColorParams& params) {
    const double top = params.lambda_star.front();                 // lambda_1^*
    const double bottom = params.lambda_star.back();               // lambda_k^*
    const double second = params.lambda_star[params.lambda_star.size() - 2];
    if (top > 1.0) return Regime::Supercritical;
    if (top == 1.0) return Regime::CriticalTop;
    if (bottom < 1.0) return Regime::Subcritical;
    if (bottom == 1.0) {
        if (second < 1.0) return Regime::CriticalBottom;
        return Regime::Intermediate;
    }
    if (second < 1.0) return Regime::IntermediateStrict;
    return Regime::Intermediate;
}

double rate_I(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("rate_I: lambda must be > 0");
    return lambda - 1.0 - std::log(lambda);
}

double entropy_J(double q, double x) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("entropy_J: q must be in (0,1)");
    if (x < q || x > 1.0) throw std::domain_error("entropy_J: x must be in [q,1]");
    if (x == 1.0) return std::log(1.0 / q);
    if (x == q) return 0.0;
    return x * std::log(x / q) + (1.0 - x) * std::log((1.0 - x) / (1.0 - q));
}

RhoResult rho(double q, double lambda) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("rho: q must be in (0,1)");
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::domain_error("rho: lambda must be in (0,1)");
    const double I = rate_I(lambda);
    auto f = [&](double x) { return (I + entropy_J(q, x)) / x; };

    // Global dense grid; no unimodality is assumed.
    const double step = 1e-3;
    double best_x = q, best = f(q);
    for (double x = q; x < 1.0; x += step) {
        const double v = f(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    if (f(1.0) < best) {
        best = f(1.0);
        best_x = 1.0;
    }

    // Golden-section refinement in the bracket around the best grid point.
    double lo = std::max(q, best_x - step), hi = std::min(1.0, best_x + step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    while (std::fabs(fc - fd) > 1e-10 || (hi - lo) > 1e-10) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
        if (hi - lo < 1e-14) break;
    }
    RhoResult r;
    r.argmin = 0.5 * (lo + hi);
    r.value = std::min({f(r.argmin), best});
    if (f(r.argmin) > best) r.argmin = best_x;
    return r;
}

double a_of(double q, double lambda) { return 1.0 / rho(q, lambda).value; }

double mu(double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("mu: lambda must be > 0");
    if (lambda <= 1.0) return 0.0;
    auto f = [&](double t) { return 1.0 - std::exp(-lambda * t) - t; };
    double lo = 1e-12, hi = 1.0;  // f > 0 near 0 (f'(0) = lambda-1 > 0), f(1) < 0
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

A1Result a1(const ColorParams& params) {
    const int k = params.k;
    if (k > 20) throw std::invalid_argument("a1: k too large for subset system");
    A1Result result;
    const std::uint32_t full = (std::uint32_t{1} << k) - 1;
    std::vector<double> x(static_cast<std::size_t>(full) + 1, 0.0);
    x[0] = 1.0;

    // Subsets in increasing size; each x_S solves the scalar fixed point
    // x = exp(A + B(x-1)) with A from the already-known smaller sets and
    // B the total intensity of colors outside S. Iteration from 0 picks
    // the minimal (extinction) solution and increases monotonically.
    std::vector<std::uint32_t> order;
    for (std::uint32_t s = 1; s <= full; ++s) order.push_back(s);
    std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (std::uint32_t s : order) {
        double A = 0.0, B = 0.0;
        for (int j = 0; j < k; ++j) {
            const double lj = params.lambdas[static_cast<std::size_t>(j)];
            if (s & (std::uint32_t{1} << j))
                A += lj * (x[s & ~(std::uint32_t{1} << j)] - 1.0);
            else
                B += lj;
        }
        // Minimal root of g(v) = exp(A + B(v-1)) - v in [0, 1]. g is
        // convex with g(0) > 0, so Newton from 0 approaches the smallest
        // root from below; it also survives the tangent (critical) case
        // where plain fixed-point iteration stalls.
        double v = 0.0;
        for (int it = 0; it < 200; ++it) {
            const double e = std::exp(A + B * (v - 1.0));
            const double g = e - v;
            const double dg = B * e - 1.0;
            if (std::fabs(g) < 1e-16) break;
            const double step = dg < 0.0 ? -g / dg : g;  // fall back to iteration
            v += step;
            if (std::fabs(step) < 1e-16) break;
        }
        x[s] = std::clamp(v, 0.0, 1.0);
    }
    for (std::uint32_t s = 0; s <= full; ++s) result.subset_fixed_points[s] = x[s];

    if (params.lambda_star.front() <= 1.0) {
        result.a1 = 0.0;  // avoiding the heaviest color already kills the giant
        return result;
    }
    double sum = 0.0;
    for (std::uint32_t s = 0; s <= full; ++s)
        sum += (std::popcount(s) % 2 == 0 ? 1.0 : -1.0) * x[s];
    result.a1 = std::clamp(sum, 0.0, 1.0);
    return result;
}

double a2(const ColorParams& params) {
    if (classify_regime(params) != Regime::IntermediateStrict)
        throw std::domain_error("a2: requires lambda_k^* > 1 > lambda_{k-1}^*");
    return a_of(mu(params.lambda_star.back()), params.lambdas.back());
}

double beta_top(const ColorParams& params) {
    for (double l : params.lambdas)
        if (l >= 1.0) throw std::domain_error("beta_top: requires every lambda < 1");
    double prod = 1.0;
    for (double l : params.lambdas) prod *= l / (1.0 - l);
    double fact = 1.0;
    for (int j = 2; j < params.k; ++j) fact *= j;  // (k-1)!
    double beta = fact / 2.0 * prod;
    if (params.k == 2) beta += gamma_m(params, 2);  // repeated edges join the size-2 count
    return beta;
}

double gamma_m(const ColorParams& params, int m) {
    if (m < 2) throw std::invalid_argument("gamma_m: m must be >= 2");
    if (m == 2) {
        double s = 0.0;
        for (std::size_t i = 0; i < params.lambdas.size(); ++i)
            for (std::size_t j = i + 1; j < params.lambdas.size(); ++j)
                s += params.lambdas[i] * params.lambdas[j];
        return 0.5 * s;
    }
    return std::pow(params.Lambda, m) / (2.0 * m);
}

}  // namespace caperc::theory
