// Acceptance battery. Each criterion is a standalone check invoked as
// `acceptance <1..12>`; with no argument all twelve run. One PASS/FAIL
// line per criterion; exit status is nonzero if any selected check fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "caperc/ca.hpp"
#include "caperc/census.hpp"
#include "caperc/montecarlo.hpp"
#include "caperc/rng.hpp"
#include "caperc/stats.hpp"
#include "caperc/theory.hpp"

using namespace caperc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. CA-partition equals the brute-force oracle on a random sweep.
bool crit1() {
    const auto start = std::chrono::steady_clock::now();
    rng::Engine eng(0xace);
    std::uniform_int_distribution<int> pick_n(2, 8), pick_k(2, 4);
    std::bernoulli_distribution edge(0.3);
    int mismatches = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        ColoredMultigraph g;
        g.n = pick_n(eng);
        g.k = pick_k(eng);
        g.layers.resize(static_cast<std::size_t>(g.k));
        for (auto& layer : g.layers)
            for (int u = 0; u < g.n; ++u)
                for (int v = u + 1; v < g.n; ++v)
                    if (edge(eng)) layer.emplace_back(u, v);
        if (!(ca_partition(g).partition == ca_partition_oracle(g))) ++mismatches;
    }
    const double elapsed = seconds_since(start);
    std::printf("  mismatches=%d elapsed=%.2fs\n", mismatches, elapsed);
    return mismatches == 0 && elapsed < 5.0;
}

// 2. Ladder gadget: open all singletons; closed 2*ell+1 pairs.
bool crit2() {
    for (int ell = 1; ell <= 5; ++ell) {
        const int n = 2 * (2 * ell + 2);
        const auto open = ca_partition(figure1_gadget(ell, false));
        if (open.max_size != 1 || open.histogram.at(1) != n) return false;
        const auto closed = ca_partition(figure1_gadget(ell, true));
        if (closed.max_size != 2) return false;
        if (closed.histogram.at(2) != 2 * ell + 1) return false;
        if (closed.histogram.at(1) != 2) return false;
    }
    std::printf("  ell=1..5 exact\n");
    return true;
}

// 3. Subcritical: max CA size <= k, and the census reproduces the
//    size counts (N_m = Y_m for m >= 3, N_2 = Y_2 + C_2).
bool crit3() {
    mc::ExperimentConfig cfg;
    cfg.params = ColorParams::make({0.3, 0.3, 0.3});
    cfg.n = 100000;
    cfg.trials = 200;
    cfg.master_seed = 1003;
    cfg.measure.census = true;
    const auto result = mc::run(cfg);

    int bounded = 0, census_consistent = 0;
    for (const auto& r : result.records) {
        if (r.max_ca_size <= 3) ++bounded;
        bool ok = true;
        const auto& c = *r.census;
        auto N = [&](int m) {
            const auto it = r.N.find(m);
            return it == r.N.end() ? 0LL : it->second;
        };
        auto Y = [&](int m) {
            const auto it = c.y.find(m);
            return it == c.y.end() ? 0LL : it->second;
        };
        int max_m = r.N.empty() ? 1 : r.N.rbegin()->first;
        for (int m = 3; m <= max_m; ++m)
            if (N(m) != Y(m)) ok = false;
        if (N(2) != Y(2) + c.c2) ok = false;
        if (ok) ++census_consistent;
    }
    std::printf("  max<=k in %d/200, census-consistent in %d/200\n", bounded, census_consistent);
    return bounded >= 180 && census_consistent >= 198;
}

// 4. Subcritical Poisson limit for N_3 and independence of (N_2, N_3).
bool crit4() {
    mc::ExperimentConfig cfg;
    cfg.params = ColorParams::make({0.3, 0.3, 0.3});
    cfg.n = 100000;
    cfg.trials = 2000;
    cfg.master_seed = 1004;
    const auto result = mc::run(cfg);

    std::vector<long long> n3;
    n3.reserve(result.records.size());
    for (const auto& r : result.records) {
        const auto it = r.N.find(3);
        n3.push_back(it == r.N.end() ? 0 : it->second);
    }
    const double beta3 = theory::beta_top(cfg.params);
    const auto gof = stats::poisson_gof(n3, beta3);
    const auto indep = mc::independence_check(result.records, 2, 3);
    std::printf("  beta3=%.6f gof p=%.4f cov=[%.5f, %.5f]\n", beta3, gof.p_value, indep.ci.lo,
                indep.ci.hi);
    return gof.p_value >= 0.01 && indep.ci.lo <= 0.0 && indep.ci.hi >= 0.0;
}

// 5. Cycle census means match gamma_2, gamma_3, gamma_4 within 3 SE.
bool crit5() {
    mc::ExperimentConfig cfg;
    cfg.params = ColorParams::make({0.4, 0.4});
    cfg.n = 100000;
    cfg.trials = 2000;
    cfg.master_seed = 1005;
    cfg.measure.ca = false;
    cfg.measure.census = true;
    cfg.max_cycle_len = 6;
    const auto result = mc::run(cfg);

    std::vector<double> c2, c3, c4;
    for (const auto& r : result.records) {
        const auto& c = *r.census;
        auto cm = [&](int m) {
            const auto it = c.cm.find(m);
            return it == c.cm.end() ? 0.0 : static_cast<double>(it->second);
        };
        c2.push_back(static_cast<double>(c.c2));
        c3.push_back(cm(3));
        c4.push_back(cm(4));
    }
    bool ok = true;
    const std::vector<std::pair<std::vector<double>*, int>> checks{{&c2, 2}, {&c3, 3}, {&c4, 4}};
    for (const auto& [xs, m] : checks) {
        const auto mm = stats::moments(*xs);
        const double want = theory::gamma_m(cfg.params, m);
        std::printf("  C_%d mean=%.5f want=%.5f se=%.5f\n", m, mm.mean, want, mm.stderror);
        if (std::fabs(mm.mean - want) > 3.0 * mm.stderror) ok = false;
    }
    return ok;
}

// 6. Supercritical linear law: mean max CA / n near a1.
bool crit6() {
    mc::ExperimentConfig cfg;
    cfg.params = ColorParams::make({1.5, 1.5});
    cfg.n = 100000;
    cfg.trials = 50;
    cfg.master_seed = 1006;
    const auto result = mc::run(cfg);
    const auto scaled = mc::max_ca_scaling(result.records, cfg.n, mc::Normalization::ByN);
    const double a1 = theory::a1(cfg.params).a1;
    std::printf("  mean/n=%.5f a1=%.5f\n", scaled.moments.mean, a1);
    return std::fabs(scaled.moments.mean - a1) <= 0.01;
}

// 7. Intermediate log law: mean max CA / log n near a2, and the
//    convergence table moves toward a2 as n grows.
bool crit7() {
    const auto params = ColorParams::make({1.5, 0.5});
    const double a2 = theory::a2(params);

    std::vector<double> means;
    for (int n : {10000, 100000, 1000000}) {
        mc::ExperimentConfig cfg;
        cfg.params = params;
        cfg.n = n;
        cfg.trials = 20;
        cfg.master_seed = rng::derive(1007, static_cast<std::uint64_t>(n));
        const auto result = mc::run(cfg);
        means.push_back(mc::max_ca_scaling(result.records, n, mc::Normalization::ByLogN).moments.mean);
        std::printf("  n=%d mean/log n=%.4f (a2=%.4f)\n", n, means.back(), a2);
    }
    const double final_mean = means.back();
    const bool in_band = std::fabs(final_mean - a2) <= 0.25 * a2;
    bool toward = true;
    for (std::size_t i = 1; i < means.size(); ++i)
        if (std::fabs(means[i] - a2) >= std::fabs(means[i - 1] - a2)) toward = false;
    std::printf("  band=[%.4f, %.4f] in_band=%d toward=%d\n", 0.75 * a2, 1.25 * a2, in_band,
                toward);
    return in_band && toward;
}

// 8. Black-cluster LLN: statistic near a(0.5, 0.5).
bool crit8() {
    const auto stat = mc::black_cluster_max(1000000, 0.5, 0.5, 20, 1008);
    const double a = theory::a_of(0.5, 0.5);
    std::printf("  mean=%.4f a=%.4f band=[%.4f, %.4f]\n", stat.moments.mean, a, 0.8 * a, 1.2 * a);
    return std::fabs(stat.moments.mean - a) <= 0.2 * a;
}

// 9. Single-layer LLN: max component / log n near 1/I, tail bound holds.
bool crit9() {
    const double I = theory::rate_I(0.5);
    const auto big = mc::single_layer_max_component(1000000, 0.5, 20, 1009);
    const double want = 1.0 / I;
    std::printf("  mean=%.4f 1/I=%.4f band=[%.4f, %.4f]\n", big.stat.moments.mean, want,
                0.85 * want, 1.15 * want);
    const bool in_band = std::fabs(big.stat.moments.mean - want) <= 0.15 * want;

    // Tail bound from t = 2 on: at t = 1 the empirical tail is exactly 1
    // and the exponential bound is vacuous.
    const auto small = mc::single_layer_max_component(100000, 0.5, 20, 10091);
    bool tail_ok = true;
    for (std::size_t t = 2; t < small.tail_fraction.size(); ++t) {
        const double bound = std::exp(-I * static_cast<double>(t));
        const double se = std::sqrt(bound * (1.0 - bound) / static_cast<double>(small.total_vertices));
        if (small.tail_fraction[t] > bound + 4.0 * se) {
            tail_ok = false;
            std::printf("  tail violated at t=%zu: %.6g > %.6g\n", t, small.tail_fraction[t],
                        bound + 4.0 * se);
        }
    }
    std::printf("  tail_ok=%d\n", tail_ok);
    return in_band && tail_ok;
}

// 10. Giant component sandwich around mu_lambda.
bool crit10() {
    bool ok = true;
    for (double lambda : {1.5, 2.0}) {
        const auto rep = mc::giant_sandwich_check(100000, lambda, 0.02, 100, 1010);
        std::printf("  lambda=%.1f mu=%.4f inside=%d/100\n", lambda, rep.mu, rep.inside);
        if (!rep.pass) ok = false;
    }
    return ok;
}

// 11. Critical tightness: 90% quantile does not double per decade.
bool crit11() {
    const auto rep = mc::critical_tightness(ColorParams::make({1.0, 0.5}),
                                            {10000, 100000, 1000000}, 200, 1011);
    for (const auto& row : rep.rows)
        std::printf("  n=%d q50=%.1f q90=%.1f q99=%.1f\n", row.n, row.q50, row.q90, row.q99);
    std::printf("  growth_flag=%d\n", rep.growth_flag);
    return !rep.growth_flag;
}

// 12. Theory self-consistency sweep.
bool crit12() {
    bool ok = true;
    for (auto lams : {std::vector<double>{1.5, 1.5}, {1.2, 0.8, 0.6}, {2.0, 1.0}}) {
        const auto params = ColorParams::make(lams);
        const auto r = theory::a1(params);
        for (int i = 0; i < params.k; ++i) {
            const double xi = r.subset_fixed_points.at(std::uint32_t{1} << i);
            const double want = 1.0 - theory::mu(params.lambda_star[static_cast<std::size_t>(i)]);
            if (std::fabs(xi - want) > 1e-9) ok = false;
        }
    }
    rng::Engine eng(1012);
    std::uniform_real_distribution<double> unif(0.02, 0.98);
    for (int rep = 0; rep < 100; ++rep) {
        const double q = unif(eng), lambda = unif(eng);
        const double rho = theory::rho(q, lambda).value;
        const double I = theory::rate_I(lambda);
        if (rho < I - 1e-12 || rho > I + std::log(1.0 / q) + 1e-12) ok = false;
    }
    const bool flip = theory::a1(ColorParams::make({1.01, 1.01})).a1 > 0.0 &&
                      theory::a1(ColorParams::make({0.99, 0.99})).a1 == 0.0;
    std::printf("  extinction/mu agreement, rho bracketing (100 pts), a1 sign flip=%d\n", flip);
    return ok && flip;
}

struct Criterion {
    int id;
    const char* label;
    bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "oracle equivalence", crit1},
    {2, "ladder gadget battery", crit2},
    {3, "subcritical bound and census consistency", crit3},
    {4, "subcritical Poisson limit", crit4},
    {5, "cycle census means", crit5},
    {6, "supercritical linear law", crit6},
    {7, "intermediate log law", crit7},
    {8, "black-cluster LLN", crit8},
    {9, "single-layer LLN and tail bound", crit9},
    {10, "giant sandwich", crit10},
    {11, "critical tightness", crit11},
    {12, "theory self-consistency", crit12},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        std::printf("criterion %d (%s):\n", c.id, c.label);
        const bool ok = c.fn();
        std::printf("criterion %d: %s\n", c.id, ok ? "PASS" : "FAIL");
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
