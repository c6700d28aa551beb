#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "caperc/ca.hpp"
#include "caperc/census.hpp"
#include "caperc/color_params.hpp"
#include "caperc/stats.hpp"

namespace caperc::mc {

// Thrown when a requested run exceeds the configured n * trials budget.
struct ResourceCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Measurements {
    bool ca = true;
    bool census = false;
    bool components = false;
    bool black_clusters = false;
};

struct ExperimentConfig {
    ColorParams params;
    int n = 0;
    int trials = 1;
    std::uint64_t master_seed = 0;
    int max_cycle_len = 16;
    Measurements measure;
    std::optional<double> q_black;
    std::optional<double> lambda_single;
    int threads = 1;
    long long resource_cap = 1'000'000'000LL;  // n * trials guard
};

struct TrialRecord {
    int trial_index = 0;
    int max_ca_size = 0;
    std::map<int, long long> N;                 // ell -> N_ell
    std::optional<CensusResult> census;
    std::vector<long long> max_component_sizes;  // per avoided color, max |C^i|
    // Z[s] = number of vertices whose component has size >= s, at each
    // distinct component size s (components measurement only).
    std::optional<std::map<long long, long long>> Z;
    std::optional<long long> black_max;
};

struct SummaryStats {
    std::string name;
    stats::Moments moments;
    std::vector<double> values;  // per-trial normalized values
};

struct RunResult {
    std::vector<TrialRecord> records;
    std::vector<SummaryStats> summaries;
};

// Trial t draws its layers from the child stream derive(master_seed, t);
// records are identical whatever the worker count.
RunResult run(const ExperimentConfig& config);

// Mean/CI of max CA size normalized by n or log n.
enum class Normalization { ByN, ByLogN };
SummaryStats max_ca_scaling(const std::vector<TrialRecord>& records, int n, Normalization norm);

// Covariance of (N_a, N_b) across trials with a bootstrap CI.
struct CovarianceReport {
    double covariance = 0.0;
    stats::Interval ci;
};
CovarianceReport independence_check(const std::vector<TrialRecord>& records, int a, int b,
                                    std::uint64_t seed = 7);

// Plain G(n, lambda/n) runs: max component / log n, plus the component
// size tail for the exponential bound check. Requires lambda < 1.
struct SingleLayerResult {
    SummaryStats stat;
    // aggregated over trials: tail[t] = #vertices with |C(u)| >= t
    std::vector<double> tail_fraction;
    long long total_vertices = 0;
};
SingleLayerResult single_layer_max_component(int n, double lambda, int trials, std::uint64_t seed);

// Bernoulli(q) vertex marks on G(n, lambda/n); max over components of
// the number of marked vertices, / log n.
SummaryStats black_cluster_max(int n, double lambda, double q, int trials, std::uint64_t seed);

struct SandwichReport {
    double mu = 0.0;
    int trials = 0;
    int inside = 0;
    bool pass = false;  // inside >= 95% of trials
};
SandwichReport giant_sandwich_check(int n, double lambda, double eps, int trials, std::uint64_t seed);

// Estimate of nu_ell = lim ell*N_ell/n with a bootstrap CI.
struct NuEstimate {
    double mean = 0.0;
    stats::Interval ci;
};
NuEstimate nu_hat(const std::vector<TrialRecord>& records, int ell, int n, std::uint64_t seed = 11);

struct TightnessRow {
    int n = 0;
    double q50 = 0.0, q90 = 0.0, q99 = 0.0;
};
struct TightnessReport {
    std::vector<TightnessRow> rows;
    bool growth_flag = false;  // 90% quantile doubled between decades
};
// Requires the critical-bottom regime (lambda_k^* = 1 > lambda_{k-1}^*).
TightnessReport critical_tightness(const ColorParams& params, const std::vector<int>& ns, int trials,
                                   std::uint64_t seed);

// Per-trial structural check for the strict intermediate regime: every
// CA-component of size >= 3 lies in one component of G_k and of G^k.
bool intermediate_structure_ok(const ColoredMultigraph& g, const CAReport& report);

}  // namespace caperc::mc
