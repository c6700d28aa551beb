#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "caperc/ca.hpp"
#include "caperc/census.hpp"
#include "caperc/graph.hpp"
#include "caperc/io.hpp"
#include "caperc/montecarlo.hpp"
#include "caperc/rng.hpp"
#include "caperc/stats.hpp"
#include "caperc/theory.hpp"

namespace {

using nlohmann::json;
using namespace caperc;

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitResource = 4;

std::vector<double> parse_lambdas(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--lambdas", "not a number: " + tok);
        }
    }
    return out;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << text;
}

json lambdas_echo(const std::vector<double>& input, const ColorParams& params) {
    json j;
    json in_arr = json::array(), sorted_arr = json::array();
    for (double l : input) in_arr.push_back(io::num(l));
    for (double l : params.lambdas) sorted_arr.push_back(io::num(l));
    j["lambdas_input"] = in_arr;
    j["lambdas"] = sorted_arr;
    return j;
}

struct SharedFlags {
    std::string lambdas_text;
    int n = 100000;
    int trials = 1;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    int max_cycle_len = 16;
    int threads = 1;
};

void add_shared(CLI::App* cmd, SharedFlags& f, bool lambdas_required) {
    auto* l = cmd->add_option("--lambdas", f.lambdas_text, "comma-separated color intensities");
    if (lambdas_required) l->required();
    cmd->add_option("--n", f.n, "number of vertices");
    cmd->add_option("--trials", f.trials, "number of trials");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--out", f.out, "output file (default stdout)");
    cmd->add_option("--format", f.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--max-cycle-len", f.max_cycle_len, "cycle enumeration cap (3..24)");
    cmd->add_option("--threads", f.threads, "worker threads");
}

// ---------------------------------------------------------------- constants

int cmd_constants(const SharedFlags& f, std::optional<double> q_override,
                  std::optional<double> lambda_override) {
    const auto input = parse_lambdas(f.lambdas_text);
    const ColorParams params = ColorParams::make(input);
    const theory::Regime regime = theory::classify_regime(params);

    json j = lambdas_echo(input, params);
    j["Lambda"] = io::num(params.Lambda);
    json star = json::array();
    for (double l : params.lambda_star) star.push_back(io::num(l));
    j["lambda_star"] = star;
    j["regime"] = theory::regime_name(regime);

    json I = json::array(), I_star = json::array(), mu_star = json::array();
    for (double l : params.lambdas) I.push_back(io::num(theory::rate_I(l)));
    for (double l : params.lambda_star) {
        I_star.push_back(io::num(theory::rate_I(l)));
        mu_star.push_back(io::num(theory::mu(l)));
    }
    j["I_lambda"] = I;
    j["I_lambda_star"] = I_star;
    j["mu_lambda_star"] = mu_star;
    j["a1"] = io::num(theory::a1(params).a1);
    if (regime == theory::Regime::IntermediateStrict) j["a2"] = io::num(theory::a2(params));
    if (regime == theory::Regime::Subcritical) {
        j["beta_k"] = io::num(theory::beta_top(params));
        json gamma = json::object();
        for (int m = 2; m <= f.max_cycle_len; ++m)
            gamma[std::to_string(m)] = io::num(theory::gamma_m(params, m));
        j["gamma"] = gamma;
    }
    if (q_override && lambda_override) {
        const auto r = theory::rho(*q_override, *lambda_override);
        j["rho"] = io::num(r.value);
        j["rho_argmin"] = io::num(r.argmin);
        j["a"] = io::num(1.0 / r.value);
    }
    write_output(io::with_schema(j).dump() + "\n", f.out);
    return 0;
}

// ----------------------------------------------------------------- simulate

int cmd_simulate(const SharedFlags& f, const std::string& config_path,
                 std::optional<double> q_black, std::optional<double> lambda_single,
                 const std::string& measurements, long long resource_cap,
                 const std::string& summary_out) {
    mc::ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        cfg = io::parse_config(buf.str());
    }
    std::vector<double> input;
    if (!f.lambdas_text.empty()) {
        input = parse_lambdas(f.lambdas_text);
        cfg.params = ColorParams::make(input);
    } else {
        input = cfg.params.lambdas;
    }
    if (config_path.empty()) {
        cfg.n = f.n;
        cfg.trials = f.trials;
        cfg.master_seed = f.seed;
        cfg.max_cycle_len = f.max_cycle_len;
    }
    cfg.threads = f.threads;
    if (resource_cap > 0) cfg.resource_cap = resource_cap;
    if (q_black) cfg.q_black = q_black;
    if (lambda_single) cfg.lambda_single = lambda_single;
    if (!measurements.empty()) {
        cfg.measure = {};
        cfg.measure.ca = false;
        std::istringstream ms(measurements);
        std::string tok;
        while (std::getline(ms, tok, ',')) {
            if (tok == "ca")
                cfg.measure.ca = true;
            else if (tok == "census")
                cfg.measure.census = true;
            else if (tok == "components")
                cfg.measure.components = true;
            else if (tok == "black_clusters")
                cfg.measure.black_clusters = true;
            else
                throw CLI::ValidationError("--measurements", "unknown measurement: " + tok);
        }
    }
    if (cfg.params.k == 0 && !cfg.lambda_single)
        throw CLI::ValidationError("--lambdas", "required unless --lambda-single is given");

    const mc::RunResult result = mc::run(cfg);

    json echo = lambdas_echo(input, cfg.params);
    echo["command"] = "simulate";
    echo["n"] = cfg.n;
    echo["trials"] = cfg.trials;
    echo["seed"] = cfg.master_seed;
    echo["max_cycle_len"] = cfg.max_cycle_len;
    // --threads deliberately not echoed: output is worker-count invariant.
    echo["seed_policy"] = "split-v1";  // child seed of trial t = derive(seed, t)
    json meas = json::array();
    if (cfg.measure.ca) meas.push_back("ca");
    if (cfg.measure.census) meas.push_back("census");
    if (cfg.measure.components) meas.push_back("components");
    if (cfg.measure.black_clusters) meas.push_back("black_clusters");
    echo["measurements"] = meas;
    if (cfg.q_black) echo["q_black"] = io::num(*cfg.q_black);
    if (cfg.lambda_single) echo["lambda_single"] = io::num(*cfg.lambda_single);

    std::ostringstream lines;
    lines << io::with_schema(echo).dump() << "\n";
    lines << io::trial_lines(result.records);
    if (f.format == "json") {
        json summary = json::object();
        for (const auto& s : result.summaries) {
            json row;
            row["mean"] = io::num(s.moments.mean);
            row["se"] = io::num(s.moments.stderror);
            row["variance"] = io::num(s.moments.variance);
            summary[s.name] = row;
        }
        json tail;
        tail["summary"] = summary;
        lines << io::with_schema(tail).dump() << "\n";
    }
    write_output(lines.str(), f.out);
    if (f.format == "csv") {
        const std::string csv = io::summary_csv(result.summaries);
        if (!summary_out.empty())
            write_output(csv, summary_out);
        else
            std::cout << csv;
    }
    return 0;
}

// ------------------------------------------------------------------- census

ColoredMultigraph fixture_graph(const std::string& spec) {
    // fig1:<ell>[+close]
    if (spec.rfind("fig1:", 0) != 0)
        throw CLI::ValidationError("--fixture", "expected fig1:<ell>[+close]");
    std::string rest = spec.substr(5);
    bool close = false;
    if (const auto plus = rest.find("+close"); plus != std::string::npos) {
        close = true;
        rest.erase(plus);
    }
    return figure1_gadget(std::stoi(rest), close);
}

int cmd_census(const SharedFlags& f, const std::string& fixture) {
    if (!fixture.empty()) {
        const ColoredMultigraph g = fixture_graph(fixture);
        json j;
        j["fixture"] = fixture;
        j["census"] = io::census_json(census(g, f.max_cycle_len));
        write_output(io::with_schema(j).dump() + "\n", f.out);
        return 0;
    }
    const auto input = parse_lambdas(f.lambdas_text);
    const ColorParams params = ColorParams::make(input);
    if (f.trials <= 1) {
        const ColoredMultigraph g = generate(params, f.n, f.seed);
        json j = lambdas_echo(input, params);
        j["n"] = f.n;
        j["seed"] = f.seed;
        j["census"] = io::census_json(census(g, f.max_cycle_len));
        write_output(io::with_schema(j).dump() + "\n", f.out);
        return 0;
    }

    mc::ExperimentConfig cfg;
    cfg.params = params;
    cfg.n = f.n;
    cfg.trials = f.trials;
    cfg.master_seed = f.seed;
    cfg.max_cycle_len = f.max_cycle_len;
    cfg.threads = f.threads;
    cfg.measure.ca = false;
    cfg.measure.census = true;
    const auto result = mc::run(cfg);

    double c2_sum = 0.0;
    std::map<int, double> cm_sum, y_sum;
    long long flagged = 0;
    for (const auto& r : result.records) {
        c2_sum += static_cast<double>(r.census->c2);
        for (const auto& [m, c] : r.census->cm) cm_sum[m] += static_cast<double>(c);
        for (const auto& [p, c] : r.census->y) y_sum[p] += static_cast<double>(c);
        flagged += static_cast<long long>(r.census->flags.size());
    }
    const double t = static_cast<double>(cfg.trials);
    json j = lambdas_echo(input, params);
    j["n"] = cfg.n;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.master_seed;
    j["mean_c2"] = io::num(c2_sum / t);
    json cm = json::object(), y = json::object();
    for (const auto& [m, s] : cm_sum) cm[std::to_string(m)] = io::num(s / t);
    for (const auto& [p, s] : y_sum) y[std::to_string(p)] = io::num(s / t);
    j["mean_cm"] = cm;
    j["mean_y"] = y;
    j["flagged_components"] = flagged;
    json predicted = json::object();
    json gamma = json::object();
    for (int m = 2; m <= cfg.max_cycle_len; ++m)
        gamma[std::to_string(m)] = io::num(theory::gamma_m(params, m));
    predicted["gamma"] = gamma;
    if (theory::classify_regime(params) == theory::Regime::Subcritical)
        predicted["beta_k"] = io::num(theory::beta_top(params));
    j["predicted"] = predicted;
    write_output(io::with_schema(j).dump() + "\n", f.out);
    return 0;
}

// -------------------------------------------------------------- convergence

int cmd_convergence(const SharedFlags& f, const std::vector<int>& ns, long long resource_cap) {
    if (ns.empty()) throw CLI::ValidationError("--ns", "at least one n is required");
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] <= ns[i - 1]) throw CLI::ValidationError("--ns", "must be strictly ascending");
    const auto input = parse_lambdas(f.lambdas_text);
    const ColorParams params = ColorParams::make(input);
    const theory::Regime regime = theory::classify_regime(params);
    const std::string tag = regime == theory::Regime::Intermediate ? "conjectural" : "";

    std::ostringstream out;
    out << "n,mean_max_ca,max_ca_over_n,max_ca_over_logn,q50,q90,q99,tag\n";
    out.precision(12);
    for (int n : ns) {
        mc::ExperimentConfig cfg;
        cfg.params = params;
        cfg.n = n;
        cfg.trials = f.trials;
        cfg.master_seed = rng::derive(f.seed, static_cast<std::uint64_t>(n));
        cfg.threads = f.threads;
        if (resource_cap > 0) cfg.resource_cap = resource_cap;
        const auto result = mc::run(cfg);
        std::vector<double> values;
        values.reserve(result.records.size());
        for (const auto& r : result.records) values.push_back(static_cast<double>(r.max_ca_size));
        const auto m = stats::moments(values);
        out << n << "," << m.mean << "," << m.mean / n << "," << m.mean / std::log(n) << ","
            << stats::quantile(values, 0.50) << "," << stats::quantile(values, 0.90) << ","
            << stats::quantile(values, 0.99) << "," << tag << "\n";
    }
    write_output(out.str(), f.out);
    return 0;
}

// ------------------------------------------------------------------- verify

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
};

SuiteResult suite_ca(bool sabotage) {
    SuiteResult s{"ca"};
    rng::Engine eng(20260823);
    std::uniform_int_distribution<int> pick_n(2, 8), pick_k(2, 3);
    std::bernoulli_distribution edge(0.3);
    for (int rep = 0; rep < 200; ++rep) {
        ColoredMultigraph g;
        g.n = pick_n(eng);
        g.k = pick_k(eng);
        g.layers.resize(static_cast<std::size_t>(g.k));
        for (auto& layer : g.layers)
            for (int u = 0; u < g.n; ++u)
                for (int v = u + 1; v < g.n; ++v)
                    if (edge(eng)) layer.emplace_back(u, v);
        bool ok = ca_partition(g).partition == ca_partition_oracle(g);
        if (sabotage && rep == 0) ok = !ok;
        ok ? ++s.passed : ++s.failed;
    }
    return s;
}

SuiteResult suite_fig1() {
    SuiteResult s{"fig1"};
    for (int ell = 1; ell <= 3; ++ell) {
        const auto open = ca_partition(figure1_gadget(ell, false));
        const auto closed = ca_partition(figure1_gadget(ell, true));
        const int n = 2 * (2 * ell + 2);
        bool ok = open.max_size == 1 && open.histogram.at(1) == n;
        ok ? ++s.passed : ++s.failed;
        ok = closed.max_size == 2 && closed.histogram.at(2) == 2 * ell + 1 &&
             closed.histogram.at(1) == 2;
        ok ? ++s.passed : ++s.failed;
    }
    return s;
}

SuiteResult suite_separation() {
    SuiteResult s{"sep"};
    auto check = [&](std::vector<ColorMask> masks, int want) {
        max_separation(masks) == want ? ++s.passed : ++s.failed;
    };
    check({1, 2}, 2);           // bi-colored digon
    check({1, 2, 4}, 3);        // rainbow triangle
    check({1, 2, 1, 2}, 1);     // alternating pair: no two disjoint arcs exist
    check({1, 1, 2, 2}, 2);     // two monochromatic arcs
    check({1, 1, 1, 1}, 1);     // single color
    check({3, 4, 3, 4}, 1);     // alternating color pairs
    check({1, 2, 4, 1, 2, 4}, 1);
    check({1, 1, 2, 2, 4, 4}, 3);
    return s;
}

SuiteResult suite_fixedpoint() {
    SuiteResult s{"fixedpoint"};
    const ColorParams super = ColorParams::make({1.5, 1.5});
    const auto r = theory::a1(super);
    bool ok = std::fabs(r.subset_fixed_points.at(1) - (1.0 - theory::mu(1.5))) < 1e-9;
    ok ? ++s.passed : ++s.failed;
    ok = theory::a1(ColorParams::make({1.01, 1.01})).a1 > 0.0;
    ok ? ++s.passed : ++s.failed;
    ok = theory::a1(ColorParams::make({0.99, 0.99})).a1 == 0.0;
    ok ? ++s.passed : ++s.failed;
    for (auto [q, l] : {std::pair{0.3, 0.5}, {0.5, 0.5}, {0.7, 0.9}, {0.9, 0.2}}) {
        const double rho = theory::rho(q, l).value;
        ok = theory::rate_I(l) <= rho + 1e-12 && rho <= theory::rate_I(l) + std::log(1.0 / q) + 1e-12;
        ok ? ++s.passed : ++s.failed;
    }
    return s;
}

int cmd_verify(const std::string& suites_text, bool self_test_negative) {
    std::vector<std::string> wanted;
    if (!suites_text.empty()) {
        std::istringstream in(suites_text);
        std::string tok;
        while (std::getline(in, tok, ',')) wanted.push_back(tok);
    } else {
        wanted = {"ca", "fig1", "sep", "fixedpoint"};
    }
    int total_failed = 0;
    for (const auto& name : wanted) {
        SuiteResult r;
        if (name == "ca")
            r = suite_ca(self_test_negative);
        else if (name == "fig1")
            r = suite_fig1();
        else if (name == "sep")
            r = suite_separation();
        else if (name == "fixedpoint")
            r = suite_fixedpoint();
        else
            throw CLI::ValidationError("--suites", "unknown suite: " + name);
        std::cout << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
        total_failed += r.failed;
    }
    return total_failed == 0 ? 0 : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"color-avoiding percolation toolkit"};
    app.require_subcommand(1);

    SharedFlags cf, sf, ff, vf;
    std::optional<double> q_override, lambda_override;
    auto* constants = app.add_subcommand("constants", "limit constants for an intensity vector");
    add_shared(constants, cf, true);
    constants->add_option("--q", q_override, "mark density for rho/a override");
    constants->add_option("--lambda", lambda_override, "single intensity for rho/a override");

    std::string config_path, measurements, summary_out;
    std::optional<double> q_black, lambda_single;
    long long resource_cap = 0;
    auto* simulate = app.add_subcommand("simulate", "run trials; JSON-lines records + summary");
    add_shared(simulate, sf, false);
    simulate->add_option("--config", config_path, "flat key-value config file");
    simulate->add_option("--measurements", measurements,
                         "comma list of ca,census,components,black_clusters");
    simulate->add_option("--q-black", q_black, "Bernoulli mark density");
    simulate->add_option("--lambda-single", lambda_single, "single-layer G(n, lambda/n) run");
    simulate->add_option("--resource-cap", resource_cap, "override the n*trials guard");
    simulate->add_option("--summary-out", summary_out, "summary CSV file (--format csv)");

    std::string fixture;
    auto* census_cmd = app.add_subcommand("census", "repeated-edge / cycle census");
    add_shared(census_cmd, ff, false);
    census_cmd->add_option("--fixture", fixture, "fig1:<ell>[+close] ladder gadget");

    std::vector<int> ns;
    long long conv_cap = 0;
    SharedFlags gf;
    auto* convergence = app.add_subcommand("convergence", "normalized statistics across n");
    add_shared(convergence, gf, true);
    convergence->add_option("--ns", ns, "ascending list of n values")->required();
    convergence->add_option("--resource-cap", conv_cap, "override the n*trials guard");

    std::string suites_text;
    bool self_test_negative = false;
    auto* verify = app.add_subcommand("verify", "oracle-equivalence and invariant suites");
    verify->add_option("--suites", suites_text, "comma list: ca,fig1,sep,fixedpoint");
    verify->add_flag("--self-test-negative", self_test_negative, "inject one failing case");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (constants->parsed()) return cmd_constants(cf, q_override, lambda_override);
        if (simulate->parsed())
            return cmd_simulate(sf, config_path, q_black, lambda_single, measurements, resource_cap,
                                summary_out);
        if (census_cmd->parsed()) {
            if (fixture.empty() && ff.lambdas_text.empty()) {
                std::cerr << "census: --lambdas or --fixture is required\n";
                return kExitUsage;
            }
            return cmd_census(ff, fixture);
        }
        if (convergence->parsed()) return cmd_convergence(gf, ns, conv_cap);
        if (verify->parsed()) return cmd_verify(suites_text, self_test_negative);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const mc::ResourceCapExceeded& e) {
        std::cerr << e.what() << "\n";
        return kExitResource;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
