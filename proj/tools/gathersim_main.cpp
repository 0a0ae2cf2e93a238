// Command-line runner for the gathering simulator: single runs, seed sweeps,
// geometry selftests, conformance re-checks of recorded traces, and SVG
// trajectory plots.
//
// Exit codes: 0 ok, 1 property failure, 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gathersim/experiment.hpp"
#include "gathersim/oracles.hpp"
#include "gathersim/svg.hpp"
#include "gathersim/trace_io.hpp"

namespace {

using gathersim::ConfigError;
using json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cmd_run(const std::string& config_path, std::uint64_t seed_override, bool have_seed,
            const std::string& out_override, int max_rounds_override, bool check) {
    gathersim::ExperimentConfig config = gathersim::parse_experiment_config(slurp(config_path));
    if (have_seed) config.seed = seed_override;
    if (!out_override.empty()) config.out_path = out_override;
    if (max_rounds_override > 0) config.max_rounds = max_rounds_override;
    if (check) config.check = true;

    auto result = gathersim::run_experiment(config);
    const auto& t = result.trace;

    json summary{{"algorithm", t.algorithm},
                 {"seed", t.seed},
                 {"n", t.initial.robots.size()},
                 {"status", gathersim::run_status_name(t.status)},
                 {"gathered", t.status == gathersim::RunStatus::Gathered},
                 {"rounds", t.rounds.size()},
                 {"rounds_to_gather", t.rounds_to_gather},
                 {"final_label", t.rounds.empty() ? t.initial_label.pattern
                                                  : t.rounds.back().label.pattern},
                 {"final_kind",
                  gathersim::label_kind_name(t.rounds.empty() ? t.initial_label.kind
                                                              : t.rounds.back().label.kind)}};
    if (!t.diagnostic.empty()) summary["diagnostic"] = t.diagnostic;
    if (result.conformance_checked) {
        summary["conformance_ok"] = result.conformance.ok;
        if (!result.conformance.ok) {
            json v = json::array();
            for (const auto& viol : result.conformance.violations)
                v.push_back({{"round", viol.round},
                             {"from", viol.from},
                             {"to", viol.to},
                             {"reason", viol.reason},
                             {"drop", viol.measured_drop}});
            summary["violations"] = v;
        }
    }
    std::cout << summary.dump(2) << "\n";

    if (t.status != gathersim::RunStatus::Gathered) return 1;
    if (result.conformance_checked && !result.conformance.ok) return 1;
    return 0;
}

int cmd_sweep(const std::string& config_path, std::uint64_t seed_start, int count, int threads) {
    gathersim::ExperimentConfig config = gathersim::parse_experiment_config(slurp(config_path));
    auto summary = gathersim::sweep(config, seed_start, count, threads);

    json report{{"algorithm", config.algorithm},
                {"runs", summary.runs},
                {"gathered", summary.gathered},
                {"gather_rate", summary.runs ? double(summary.gathered) / summary.runs : 0.0},
                {"not_gathered", summary.not_gathered},
                {"precondition_violations", summary.precondition_violations},
                {"conformance_failures", summary.conformance_failures},
                {"mean_rounds", summary.mean_rounds},
                {"max_rounds_seen", summary.max_rounds_seen},
                {"failed_seeds", summary.failed_seeds}};
    json edges = json::object();
    for (const auto& [edge, n] : summary.edge_coverage) edges[edge] = n;
    report["edge_coverage"] = edges;
    std::cout << report.dump(2) << "\n";
    if (summary.runs == 0) return 0;  // empty sweep is an empty report
    return summary.ok() ? 0 : 1;
}

int cmd_geom_selftest(int cases, std::uint64_t seed, bool inject_fault) {
    gathersim::Tolerance tol;
    auto report = gathersim::oracle::geometry_selftest(cases, seed, tol, inject_fault);
    std::cout << "geometry selftest: " << report.cases << " cases, " << report.failures
              << " failures\n";
    for (const auto& m : report.messages) std::cout << "  " << m << "\n";
    return report.ok() ? 0 : 1;
}

int cmd_plot(const std::string& trace_path, const std::string& out_path) {
    gathersim::Trace trace = gathersim::read_trace_file(trace_path);
    gathersim::Tolerance tol;
    gathersim::write_svg_file(trace, tol, out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_conformance(const std::string& trace_path, const std::string& algorithm) {
    gathersim::Trace trace = gathersim::read_trace_file(trace_path);
    const std::string alg = algorithm.empty() ? trace.algorithm : algorithm;
    const auto* rel = gathersim::relation_for(alg);
    if (!rel) throw ConfigError("no transition relation is defined for " + alg);
    gathersim::Tolerance tol;
    auto report = gathersim::check_conformance(trace, *rel, trace.movement.delta, tol);
    json out{{"algorithm", alg}, {"ok", report.ok}};
    json v = json::array();
    for (const auto& viol : report.violations)
        v.push_back({{"round", viol.round},
                     {"from", viol.from},
                     {"to", viol.to},
                     {"reason", viol.reason},
                     {"drop", viol.measured_drop}});
    out["violations"] = v;
    json edges = json::object();
    for (const auto& [edge, n] : report.edge_coverage) edges[edge] = n;
    out["edge_coverage"] = edges;
    std::cout << out.dump(2) << "\n";
    return report.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"round-based simulator for gathering algorithms of luminous robots"};
    app.require_subcommand(1);

    std::string config_path, out_path, trace_path, algorithm;
    std::uint64_t seed = 0, seed_start = 0;
    bool have_seed = false, check = false, inject_fault = false;
    int max_rounds = 0, count = 100, cases = 1000;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 4;

    auto* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    run->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) {
        have_seed = true;
    });
    run->add_option("--out", out_path, "trace output path (JSON lines)");
    run->add_option("--max-rounds", max_rounds, "override max rounds");
    run->add_flag("--check", check, "check the trace against the transition relation");

    auto* sw = app.add_subcommand("sweep", "run many seeds of one config");
    sw->add_option("--config", config_path, "experiment config (JSON)")->required();
    sw->add_option("--seed", seed_start, "first seed");
    sw->add_option("--count", count, "number of seeds");
    sw->add_option("--threads", threads, "worker threads");

    auto* gs = app.add_subcommand("geom-selftest", "geometry oracle suite on random inputs");
    gs->add_option("--cases", cases, "number of random cases");
    gs->add_option("--seed", seed_start, "rng seed");
    gs->add_flag("--inject-fault", inject_fault, "perturb the SEC to prove failures surface");

    auto* pl = app.add_subcommand("plot", "render a trace as an SVG trajectory plot");
    pl->add_option("--trace", trace_path, "trace file (JSON lines)")->required();
    pl->add_option("--out", out_path, "output SVG path")->required();

    auto* cf = app.add_subcommand("conformance", "re-check a recorded trace");
    cf->add_option("--trace", trace_path, "trace file (JSON lines)")->required();
    cf->add_option("--algorithm", algorithm, "relation to check against (default: from trace)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, seed, have_seed, out_path, max_rounds, check);
        if (sw->parsed()) return cmd_sweep(config_path, seed_start, count, threads);
        if (gs->parsed()) return cmd_geom_selftest(cases, seed_start ? seed_start : 20240817,
                                                   inject_fault);
        if (pl->parsed()) return cmd_plot(trace_path, out_path);
        if (cf->parsed()) return cmd_conformance(trace_path, algorithm);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
