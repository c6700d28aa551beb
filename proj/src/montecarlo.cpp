#include "caperc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <unordered_map>

#include "caperc/rng.hpp"
#include "caperc/theory.hpp"

namespace caperc::mc {

namespace {

constexpr std::uint64_t kEdgeSalt = 0x65646765ULL;  // single-layer edge stream
constexpr std::uint64_t kMarkSalt = 0x6d61726bULL;  // vertex-mark stream

Partition view_components(const ColoredMultigraph& g, ViewMode mode, std::vector<int> colors) {
    UnionFind uf(g.n);
    GraphView(g, mode, std::move(colors)).for_each_edge([&](int u, int v) { uf.unite(u, v); });
    return uf.to_partition();
}

long long max_block_size(const Partition& p) {
    std::unordered_map<int, long long> count;
    for (int v = 0; v < p.n(); ++v) ++count[p.label(v)];
    long long best = 0;
    for (const auto& [rep, c] : count) best = std::max(best, c);
    return best;
}

// Component sizes of a plain edge list on n vertices, keyed by root.
std::unordered_map<int, long long> component_sizes(int n, const std::vector<Edge>& edges) {
    UnionFind uf(n);
    for (const auto& [u, v] : edges) uf.unite(u, v);
    std::unordered_map<int, long long> sizes;
    for (int v = 0; v < n; ++v) ++sizes[uf.find(v)];
    return sizes;
}

// Z_s = #vertices in components of size >= s, sparse at the distinct
// component sizes, from a size -> count histogram.
std::map<long long, long long> tail_counts(const std::map<long long, long long>& hist) {
    std::map<long long, long long> z;
    long long cum = 0;
    for (auto it = hist.rbegin(); it != hist.rend(); ++it) {
        cum += it->first * it->second;
        z[it->first] = cum;
    }
    return z;
}

TrialRecord run_trial(const ExperimentConfig& cfg, int t) {
    TrialRecord rec;
    rec.trial_index = t;
    const std::uint64_t seed = rng::derive(cfg.master_seed, static_cast<std::uint64_t>(t));

    if (cfg.lambda_single) {
        const auto edges = sample_gnp_edges(cfg.n, *cfg.lambda_single, rng::derive(seed, kEdgeSalt));
        const auto sizes = component_sizes(cfg.n, edges);
        long long max_comp = 0;
        for (const auto& [root, s] : sizes) max_comp = std::max(max_comp, s);
        rec.max_component_sizes.push_back(max_comp);
        if (cfg.measure.components) {
            std::map<long long, long long> hist;
            for (const auto& [root, s] : sizes) ++hist[s];
            rec.Z = tail_counts(hist);
        }
        if (cfg.measure.black_clusters && cfg.q_black) {
            UnionFind uf(cfg.n);
            for (const auto& [u, v] : edges) uf.unite(u, v);
            rng::Engine marks(rng::derive(seed, kMarkSalt));
            std::bernoulli_distribution black(*cfg.q_black);
            std::unordered_map<int, long long> black_count;
            for (int v = 0; v < cfg.n; ++v)
                if (black(marks)) ++black_count[uf.find(v)];
            long long best = 0;
            for (const auto& [root, c] : black_count) best = std::max(best, c);
            rec.black_max = best;
        }
        return rec;
    }

    const ColoredMultigraph g = generate(cfg.params, cfg.n, seed);
    if (cfg.measure.ca) {
        const CAReport report = ca_partition(g);
        rec.max_ca_size = report.max_size;
        rec.N = report.histogram;
        for (const auto& p : report.avoided_partitions)
            rec.max_component_sizes.push_back(max_block_size(p));
    }
    if (cfg.measure.census) rec.census = census(g, cfg.max_cycle_len);
    if (cfg.measure.components) {
        const Partition all = view_components(g, ViewMode::All, {});
        std::map<long long, long long> hist;
        for (const auto& [size, count] : size_census(all)) hist[size] = count;
        rec.Z = tail_counts(hist);
    }
    if (cfg.measure.black_clusters && cfg.q_black) {
        const Partition all = view_components(g, ViewMode::All, {});
        rng::Engine marks(rng::derive(seed, kMarkSalt));
        std::bernoulli_distribution black(*cfg.q_black);
        std::unordered_map<int, long long> black_count;
        for (int v = 0; v < g.n; ++v)
            if (black(marks)) ++black_count[all.label(v)];
        long long best = 0;
        for (const auto& [root, c] : black_count) best = std::max(best, c);
        rec.black_max = best;
    }
    return rec;
}

double mean_stat(const std::vector<double>& xs) { return stats::moments(xs).mean; }

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
    if (cfg.n < 2) throw std::invalid_argument("run: n must be >= 2");
    if (cfg.trials < 1) throw std::invalid_argument("run: trials must be >= 1");
    if (static_cast<long long>(cfg.n) * cfg.trials > cfg.resource_cap)
        throw ResourceCapExceeded("run: n * trials exceeds the resource cap");

    RunResult result;
    result.records.resize(static_cast<std::size_t>(cfg.trials));
    const int workers = std::max(1, std::min(cfg.threads, cfg.trials));
    if (workers == 1) {
        for (int t = 0; t < cfg.trials; ++t)
            result.records[static_cast<std::size_t>(t)] = run_trial(cfg, t);
    } else {
        // Each record depends only on its trial index, so a shared work
        // queue gives bit-identical output for any worker count.
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                    result.records[static_cast<std::size_t>(t)] = run_trial(cfg, t);
            });
        for (auto& th : pool) th.join();
    }

    auto push_summary = [&](std::string name, std::vector<double> values) {
        SummaryStats s;
        s.name = std::move(name);
        s.moments = stats::moments(values);
        s.values = std::move(values);
        result.summaries.push_back(std::move(s));
    };
    if (cfg.measure.ca && !cfg.lambda_single) {
        std::vector<double> v;
        v.reserve(result.records.size());
        for (const auto& r : result.records) v.push_back(static_cast<double>(r.max_ca_size));
        push_summary("max_ca", std::move(v));
    }
    if (cfg.lambda_single) {
        std::vector<double> v;
        for (const auto& r : result.records)
            v.push_back(static_cast<double>(r.max_component_sizes.front()));
        push_summary("max_component", std::move(v));
    }
    if (cfg.measure.black_clusters && cfg.q_black) {
        std::vector<double> v;
        for (const auto& r : result.records)
            if (r.black_max) v.push_back(static_cast<double>(*r.black_max));
        if (!v.empty()) push_summary("black_max", std::move(v));
    }
    return result;
}

SummaryStats max_ca_scaling(const std::vector<TrialRecord>& records, int n, Normalization norm) {
    const double denom = norm == Normalization::ByN ? static_cast<double>(n) : std::log(n);
    SummaryStats s;
    s.name = norm == Normalization::ByN ? "max_ca/n" : "max_ca/log(n)";
    s.values.reserve(records.size());
    for (const auto& r : records) s.values.push_back(static_cast<double>(r.max_ca_size) / denom);
    s.moments = stats::moments(s.values);
    return s;
}

CovarianceReport independence_check(const std::vector<TrialRecord>& records, int a, int b,
                                    std::uint64_t seed) {
    std::vector<double> xs, ys;
    xs.reserve(records.size());
    ys.reserve(records.size());
    for (const auto& r : records) {
        auto count = [&](int ell) {
            const auto it = r.N.find(ell);
            return it == r.N.end() ? 0.0 : static_cast<double>(it->second);
        };
        xs.push_back(count(a));
        ys.push_back(count(b));
    }
    CovarianceReport rep;
    rep.covariance = stats::sample_covariance(xs, ys);
    rep.ci = stats::covariance_ci(xs, ys, 0.95, seed);
    return rep;
}

SingleLayerResult single_layer_max_component(int n, double lambda, int trials, std::uint64_t seed) {
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::domain_error("single_layer_max_component: lambda must be in (0,1)");
    SingleLayerResult result;
    result.total_vertices = static_cast<long long>(n) * trials;
    std::map<long long, long long> hist;  // component size -> count, all trials
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t st = rng::derive(seed, static_cast<std::uint64_t>(t));
        const auto sizes = component_sizes(n, sample_gnp_edges(n, lambda, rng::derive(st, kEdgeSalt)));
        long long max_comp = 0;
        for (const auto& [root, s] : sizes) {
            ++hist[s];
            max_comp = std::max(max_comp, s);
        }
        values.push_back(static_cast<double>(max_comp) / std::log(n));
    }
    result.stat.name = "max_component/log(n)";
    result.stat.values = std::move(values);
    result.stat.moments = stats::moments(result.stat.values);

    // tail[t] = fraction of vertex slots whose component has size >= t.
    const long long max_size = hist.empty() ? 0 : hist.rbegin()->first;
    result.tail_fraction.assign(static_cast<std::size_t>(max_size) + 1, 0.0);
    double cum = 0.0;
    for (long long t = max_size; t >= 0; --t) {
        const auto it = hist.find(t);
        if (it != hist.end()) cum += static_cast<double>(t * it->second);
        result.tail_fraction[static_cast<std::size_t>(t)] =
            cum / static_cast<double>(result.total_vertices);
    }
    return result;
}

SummaryStats black_cluster_max(int n, double lambda, double q, int trials, std::uint64_t seed) {
    if (!(q > 0.0 && q <= 1.0)) throw std::domain_error("black_cluster_max: q must be in (0,1]");
    SummaryStats s;
    s.name = "black_max/log(n)";
    s.values.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t st = rng::derive(seed, static_cast<std::uint64_t>(t));
        const auto edges = sample_gnp_edges(n, lambda, rng::derive(st, kEdgeSalt));
        UnionFind uf(n);
        for (const auto& [u, v] : edges) uf.unite(u, v);
        rng::Engine marks(rng::derive(st, kMarkSalt));
        std::bernoulli_distribution black(q);
        std::unordered_map<int, long long> count;
        for (int v = 0; v < n; ++v)
            if (black(marks)) ++count[uf.find(v)];
        long long best = 0;
        for (const auto& [root, c] : count) best = std::max(best, c);
        s.values.push_back(static_cast<double>(best) / std::log(n));
    }
    s.moments = stats::moments(s.values);
    return s;
}

SandwichReport giant_sandwich_check(int n, double lambda, double eps, int trials,
                                    std::uint64_t seed) {
    if (!(lambda > 1.0)) throw std::domain_error("giant_sandwich_check: lambda must be > 1");
    SandwichReport rep;
    rep.mu = theory::mu(lambda);
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t st = rng::derive(seed, static_cast<std::uint64_t>(t));
        const auto sizes = component_sizes(n, sample_gnp_edges(n, lambda, rng::derive(st, kEdgeSalt)));
        long long max_comp = 0;
        for (const auto& [root, s] : sizes) max_comp = std::max(max_comp, s);
        const double frac = static_cast<double>(max_comp) / n;
        if (std::fabs(frac - rep.mu) <= eps) ++rep.inside;
    }
    rep.pass = rep.inside >= static_cast<int>(std::ceil(0.95 * trials));
    return rep;
}

NuEstimate nu_hat(const std::vector<TrialRecord>& records, int ell, int n, std::uint64_t seed) {
    std::vector<double> values;
    values.reserve(records.size());
    for (const auto& r : records) {
        const auto it = r.N.find(ell);
        const double count = it == r.N.end() ? 0.0 : static_cast<double>(it->second);
        values.push_back(static_cast<double>(ell) * count / n);
    }
    NuEstimate est;
    est.mean = stats::moments(values).mean;
    est.ci = stats::bootstrap_ci(values, &mean_stat, 0.95, seed);
    return est;
}

TightnessReport critical_tightness(const ColorParams& params, const std::vector<int>& ns, int trials,
                                   std::uint64_t seed) {
    if (theory::classify_regime(params) != theory::Regime::CriticalBottom)
        throw std::domain_error("critical_tightness: requires lambda_k^* = 1 > lambda_{k-1}^*");
    TightnessReport rep;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const int n = ns[i];
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(trials));
        const std::uint64_t sn = rng::derive(seed, static_cast<std::uint64_t>(n));
        for (int t = 0; t < trials; ++t) {
            const ColoredMultigraph g =
                generate(params, n, rng::derive(sn, static_cast<std::uint64_t>(t)));
            values.push_back(static_cast<double>(ca_partition(g).max_size));
        }
        TightnessRow row;
        row.n = n;
        row.q50 = stats::quantile(values, 0.50);
        row.q90 = stats::quantile(values, 0.90);
        row.q99 = stats::quantile(values, 0.99);
        rep.rows.push_back(row);
    }
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].q90 > 2.0 * rep.rows[i - 1].q90) rep.growth_flag = true;
    return rep;
}

bool intermediate_structure_ok(const ColoredMultigraph& g, const CAReport& report) {
    const int bottom = g.k - 1;
    const Partition only_k = view_components(g, ViewMode::Only, {bottom});
    const Partition& avoid_k = report.avoided_partitions[static_cast<std::size_t>(bottom)];

    std::unordered_map<int, std::vector<int>> blocks;
    for (int v = 0; v < g.n; ++v) blocks[report.partition.label(v)].push_back(v);
    for (const auto& [rep, verts] : blocks) {
        if (verts.size() < 3) continue;
        for (int v : verts)
            if (only_k.label(v) != only_k.label(rep) || avoid_k.label(v) != avoid_k.label(rep))
                return false;
    }
    return true;
}

}  // namespace caperc::mc
