#pragma once

#include <map>
#include <string>
#include <vector>

#include "gathersim/algorithms.hpp"

namespace gathersim {

enum class LabelKind {
    Gathered,
    AA,
    AB,
    BA,
    ABA,
    AbPlusA,
    BbStarB,
    BBB,
    AbStarB,
    B_AC,
    BB_AC,
    AAA,
    AaStarA,
    Other,
};

std::string label_kind_name(LabelKind k);

/// Canonical description of a configuration along its unique LDS: one token
/// per location (sorted color letters), reading direction chosen so the
/// token sequence is lexicographically smallest.
struct LinePattern {
    bool on_lds = false;            // unique LDS with every location on it
    std::vector<std::string> tokens;
    std::vector<bool> at_midpoint;  // exact-midpoint flag per token
    std::string text() const;
};

struct ColorConfigLabel {
    LabelKind kind = LabelKind::Other;
    std::string pattern;
    bool operator==(const ColorConfigLabel&) const = default;
};

/// Label a configuration by the color pattern along its LDS.
ColorConfigLabel classify_color_configuration(const Configuration& config,
                                              const std::vector<std::string>& color_names,
                                              const Tolerance& tol, LinePattern* out_pattern);

enum class ProgressTag { Same, NonInc, MinusDelta, Minus2Delta, ADecreases };

std::string progress_tag_name(ProgressTag t);

/// Allowed one-round label transitions of one algorithm, each edge carrying
/// the progress guarantee measured by the conformance checker.
struct TransitionRelation {
    std::string name;
    std::vector<std::string> node_names;
    struct Edge {
        int from = 0;
        int to = 0;
        ProgressTag tag = ProgressTag::NonInc;
        std::string note;  // lemma behind the edge, for diagnostics
    };
    std::vector<Edge> edges;
    // -1 = no node for this pattern (an immediate conformance violation)
    int (*node_class)(const LinePattern& pattern) = nullptr;

    const Edge* find(int from, int to) const;
};

/// Per-round transitions of the full-light algorithm with the -delta /
/// -2delta / #A progress annotations.
const TransitionRelation& full_light_relation();

/// Per-round transitions of the 3-color external-light algorithm (plus the
/// collinear reduction prefix states).
const TransitionRelation& ext_light_relation();

struct RobotAction {
    int id = 0;
    Frame frame;
    ComputeOutput output;      // observer's frame
    Point global_destination;  // after mapping back
    Point resolved;            // where the Move ended
    bool reached = false;
};

struct RoundRecord {
    int round = 0;  // index of the configuration this round produced
    std::vector<int> activated;
    std::vector<RobotAction> actions;
    Configuration result;
    ColorConfigLabel label;
    LinePattern pattern;
    double lds_len = 0.0;
    int endpoint_a_robots = 0;
    int pipeline_phase = -1;  // 4 / 5 / 6 / 0 = done, -1 = not a pipeline run
    bool scheduler_clamped = false;
};

enum class RunStatus { Gathered, NotGathered, PreconditionViolation };

std::string run_status_name(RunStatus s);

struct Trace {
    std::string algorithm;
    std::uint64_t seed = 0;
    SchedulerKind scheduler = SchedulerKind::SSync;
    MovementModel movement;
    ObservationPolicy policy;
    double d_param = 0.0;
    int max_rounds = 0;
    Configuration initial;
    ColorConfigLabel initial_label;
    LinePattern initial_pattern;
    double initial_lds = 0.0;
    int initial_endpoint_a = 0;
    int initial_phase = -1;
    std::vector<RoundRecord> rounds;
    RunStatus status = RunStatus::NotGathered;
    std::string diagnostic;
    int rounds_to_gather = -1;
};

struct EngineSettings {
    Tolerance tol;
    MovementModel movement;
    double d_param = 0.0;  // D of the internal-light pipeline
    int max_rounds = 10000;
};

bool is_gathered(const Configuration& config, const Tolerance& tol);

/// One synchronous round: every activated robot observes the same
/// configuration, then all light writes and moves land at once. Arrivals
/// snap onto coincident locations so exact patterns survive floating point.
std::pair<Configuration, RoundRecord> step(const Configuration& config,
                                           const std::vector<int>& activation,
                                           const AlgorithmSpec& spec,
                                           AdversaryStrategy& strategy,
                                           const EngineSettings& settings);

/// Iterate step() until gathered or max_rounds. The strategy must be fresh
/// (reset with the run's seed); the result is fully determined by
/// (initial, spec, strategy seed, settings).
Trace run(const Configuration& initial, const AlgorithmSpec& spec, AdversaryStrategy& strategy,
          const EngineSettings& settings);

struct ConformanceViolation {
    int round = 0;
    std::string from;
    std::string to;
    std::string reason;
    double measured_drop = 0.0;
};

struct ConformanceReport {
    bool ok = true;
    std::vector<ConformanceViolation> violations;
    std::map<std::string, int> edge_coverage;  // "FROM->TO" -> occurrences
};

/// Check every changed round of a trace against the relation, including the
/// quantitative progress annotations.
ConformanceReport check_conformance(const Trace& trace, const TransitionRelation& relation,
                                    double delta, const Tolerance& tol);

/// Over {AA, ABA} revisits: the LDS shrinks, or it is unchanged and the
/// number of A-lit robots at the endpoints strictly drops.
ConformanceReport check_progress_cycles(const Trace& trace, const Tolerance& tol);

struct MetricsSeries {
    std::vector<double> lds_len;        // initial + per round
    std::vector<int> location_count;
    std::vector<int> endpoint_a;
    std::vector<int> phase;
    int rounds_to_gather = -1;
};

MetricsSeries metrics(const Trace& trace, const Tolerance& tol);

}  // namespace gathersim
