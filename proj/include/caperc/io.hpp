#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "caperc/census.hpp"
#include "caperc/montecarlo.hpp"

namespace caperc::io {

// Round to `digits` significant digits so emitted numbers carry a fixed
// precision (the shortest round-trip form of the rounded value).
double round_sig(double x, int digits = 12);
nlohmann::json num(double x);

// Adds the schema tag. nlohmann::json keeps object keys sorted.
nlohmann::json with_schema(nlohmann::json obj);

nlohmann::json census_json(const CensusResult& result);
nlohmann::json trial_json(const mc::TrialRecord& record);
std::string trial_lines(const std::vector<mc::TrialRecord>& records);

// One row per measurement: name, mean, se, p_value (blank when no test).
std::string summary_csv(const std::vector<mc::SummaryStats>& summaries);

// Flat key-value text. Keys: lambdas, n, trials, seed, max_cycle_len,
// measurements (comma list of ca/census/components/black_clusters),
// q_black, lambda_single. '#' starts a comment.
mc::ExperimentConfig parse_config(const std::string& text);

}  // namespace caperc::io
