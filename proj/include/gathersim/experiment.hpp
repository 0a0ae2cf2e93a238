#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gathersim/engine.hpp"

namespace gathersim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GeneratorSpec {
    std::string kind;  // onLDS | d-distant | arbitrary | distinct | two-point-close | explicit
    double span = 100.0;
    double d0_min = 0.0, d0_max = 0.0;  // initial LDS length range for onLDS
    std::string lights = "input";       // input (algorithm default) | arbitrary
    std::vector<Point> points;          // explicit
    std::vector<int> light_values;      // explicit
};

struct ExperimentConfig {
    std::string algorithm;
    int n = 3;
    std::uint64_t seed = 1;
    int max_rounds = 100000;
    SchedulerKind scheduler = SchedulerKind::SSync;
    int k_bound = 1;
    int fairness_window = 0;  // 0 = default 2n
    ActivationPolicy activation = ActivationPolicy::SeededRandom;
    bool activation_set = false;  // explicit in the config file
    MovementModel movement;
    TruncationPolicy truncation = TruncationPolicy::SeededRandom;
    FramePolicy frames = FramePolicy::Identity;
    std::optional<ViewKind> view_override;
    double d_param = 0.0;
    GeneratorSpec initial;
    Tolerance tol;
    std::string out_path;
    bool check = false;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string serialize_experiment_config(const ExperimentConfig& config);

/// Validated algorithm spec for this config; throws ConfigError on any
/// mismatch with the algorithm's assumptions.
AlgorithmSpec validated_spec(const ExperimentConfig& config);

/// Initial configuration satisfying the algorithm's input precondition;
/// rejection-samples up to a cap before reporting the spec impossible.
Configuration generate_initial(const ExperimentConfig& config, const AlgorithmSpec& spec,
                               std::mt19937_64& rng);

struct RunResult {
    Trace trace;
    bool conformance_checked = false;
    ConformanceReport conformance;
};

/// One full experiment: validate, generate, run, optionally check the
/// transition relation for the algorithms that have one.
RunResult run_experiment(const ExperimentConfig& config);

const TransitionRelation* relation_for(const std::string& algorithm);

struct SweepSummary {
    int runs = 0;
    int gathered = 0;
    int not_gathered = 0;
    int precondition_violations = 0;
    int conformance_failures = 0;
    double mean_rounds = 0.0;
    int max_rounds_seen = 0;
    std::map<std::string, int> edge_coverage;
    std::vector<std::uint64_t> failed_seeds;
    bool ok() const {
        return runs > 0 && gathered == runs && conformance_failures == 0;
    }
};

/// Parallel seeded runs of one configuration; order-independent aggregation.
SweepSummary sweep(const ExperimentConfig& base, std::uint64_t seed_start, int seed_count,
                   int threads);

}  // namespace gathersim
