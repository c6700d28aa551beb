#include "caperc/io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace caperc::io {

double round_sig(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    const double mag = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(x)))));
    return std::round(x * mag) / mag;
}

nlohmann::json num(double x) { return round_sig(x); }

nlohmann::json with_schema(nlohmann::json obj) {
    obj["schema"] = "caperc/1";
    return obj;
}

nlohmann::json census_json(const CensusResult& result) {
    nlohmann::json j;
    j["c2"] = result.c2;
    nlohmann::json cm = nlohmann::json::object();
    for (const auto& [len, count] : result.cm) cm[std::to_string(len)] = count;
    j["cm"] = cm;
    nlohmann::json y = nlohmann::json::object();
    for (const auto& [parts, count] : result.y) y[std::to_string(parts)] = count;
    j["y"] = y;
    nlohmann::json flags = nlohmann::json::array();
    for (const auto& f : result.flags) {
        nlohmann::json fj;
        fj["size"] = f.size;
        fj["edge_count"] = f.edge_count;
        fj["excess"] = f.excess;
        fj["repeated_edges"] = f.repeated_edges;
        fj["vertices"] = f.vertices;
        flags.push_back(fj);
    }
    j["flags"] = flags;
    return j;
}

nlohmann::json trial_json(const mc::TrialRecord& record) {
    nlohmann::json j;
    j["trial"] = record.trial_index;
    j["max_ca_size"] = record.max_ca_size;
    nlohmann::json n = nlohmann::json::object();
    for (const auto& [ell, count] : record.N) n[std::to_string(ell)] = count;
    j["N"] = n;
    j["max_component_sizes"] = record.max_component_sizes;
    if (record.census) j["census"] = census_json(*record.census);
    if (record.Z) {
        nlohmann::json z = nlohmann::json::object();
        for (const auto& [s, count] : *record.Z) z[std::to_string(s)] = count;
        j["Z"] = z;
    }
    if (record.black_max) j["black_max"] = *record.black_max;
    return j;
}

std::string trial_lines(const std::vector<mc::TrialRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) out << trial_json(r).dump() << "\n";
    return out.str();
}

std::string summary_csv(const std::vector<mc::SummaryStats>& summaries) {
    std::ostringstream out;
    out << "name,mean,se,p_value\n";
    out.precision(12);
    for (const auto& s : summaries)
        out << s.name << "," << s.moments.mean << "," << s.moments.stderror << ",\n";
    return out.str();
}

mc::ExperimentConfig parse_config(const std::string& text) {
    std::vector<double> lambdas;
    mc::ExperimentConfig cfg;
    bool measurements_given = false;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("parse_config: expected key=value, got: " + line);
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("parse_config: empty key or value: " + line);

        if (key == "lambdas") {
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ',')) lambdas.push_back(std::stod(tok));
        } else if (key == "n") {
            cfg.n = std::stoi(value);
        } else if (key == "trials") {
            cfg.trials = std::stoi(value);
        } else if (key == "seed") {
            cfg.master_seed = std::stoull(value);
        } else if (key == "max_cycle_len") {
            cfg.max_cycle_len = std::stoi(value);
        } else if (key == "measurements") {
            measurements_given = true;
            cfg.measure = {};
            std::istringstream vs(value);
            std::string tok;
            while (std::getline(vs, tok, ',')) {
                tok = trim(tok);
                if (tok == "ca")
                    cfg.measure.ca = true;
                else if (tok == "census")
                    cfg.measure.census = true;
                else if (tok == "components")
                    cfg.measure.components = true;
                else if (tok == "black_clusters")
                    cfg.measure.black_clusters = true;
                else
                    throw std::invalid_argument("parse_config: unknown measurement: " + tok);
            }
        } else if (key == "q_black") {
            cfg.q_black = std::stod(value);
        } else if (key == "lambda_single") {
            cfg.lambda_single = std::stod(value);
        } else {
            throw std::invalid_argument("parse_config: unknown key: " + key);
        }
    }
    if (!measurements_given) cfg.measure = {};
    if (!cfg.lambda_single) {
        if (lambdas.empty()) throw std::invalid_argument("parse_config: lambdas is required");
        cfg.params = ColorParams::make(lambdas);
    } else if (!lambdas.empty()) {
        cfg.params = ColorParams::make(lambdas);
    }
    return cfg;
}

}  // namespace caperc::io
