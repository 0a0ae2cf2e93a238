#include "gathersim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>

#include "gathersim/trace_io.hpp"
#include "json.hpp"

namespace gathersim {

namespace {

using json = nlohmann::ordered_json;

ActivationPolicy activation_from_name(const std::string& s) {
    if (s == "random") return ActivationPolicy::SeededRandom;
    if (s == "everyone") return ActivationPolicy::Everyone;
    if (s == "endpoint-splitter") return ActivationPolicy::EndpointSplitter;
    if (s == "cyclic") return ActivationPolicy::CyclicOrder;
    throw ConfigError("unknown activation policy: " + s);
}

std::string activation_name(ActivationPolicy p) {
    switch (p) {
        case ActivationPolicy::SeededRandom: return "random";
        case ActivationPolicy::Everyone: return "everyone";
        case ActivationPolicy::EndpointSplitter: return "endpoint-splitter";
        case ActivationPolicy::CyclicOrder: return "cyclic";
    }
    return "?";
}

TruncationPolicy truncation_from_name(const std::string& s) {
    if (s == "random") return TruncationPolicy::SeededRandom;
    if (s == "min-step") return TruncationPolicy::MinStep;
    if (s == "reach") return TruncationPolicy::AlwaysReach;
    throw ConfigError("unknown truncation policy: " + s);
}

std::string truncation_name(TruncationPolicy p) {
    switch (p) {
        case TruncationPolicy::SeededRandom: return "random";
        case TruncationPolicy::MinStep: return "min-step";
        case TruncationPolicy::AlwaysReach: return "reach";
    }
    return "?";
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        c.algorithm = j.at("algorithm").get<std::string>();
        c.n = j.value("n", 3);
        c.seed = j.value("seed", std::uint64_t{1});
        c.max_rounds = j.value("max_rounds", 100000);
        if (j.contains("scheduler")) {
            const auto& s = j.at("scheduler");
            c.scheduler = scheduler_kind_from_name(s.at("kind").get<std::string>());
            c.k_bound = s.value("k", 1);
            c.fairness_window = s.value("fairness_window", 0);
        }
        if (j.contains("activation")) {
            c.activation = activation_from_name(j.at("activation").get<std::string>());
            c.activation_set = true;
        }
        if (j.contains("movement")) {
            const auto& m = j.at("movement");
            const std::string kind = m.value("kind", "rigid");
            if (kind != "rigid" && kind != "non-rigid")
                throw ConfigError("movement.kind must be rigid or non-rigid");
            c.movement.rigid = kind == "rigid";
            c.movement.delta = m.value("delta", 0.0);
            c.movement.delta_known = m.value("delta_known", false);
            if (m.contains("truncation"))
                c.truncation = truncation_from_name(m.at("truncation").get<std::string>());
        }
        if (j.contains("frames")) {
            const std::string f = j.at("frames").get<std::string>();
            if (f == "identity")
                c.frames = FramePolicy::Identity;
            else if (f == "random")
                c.frames = FramePolicy::SeededRandom;
            else
                throw ConfigError("frames must be identity or random");
        }
        if (j.contains("view")) {
            const std::string v = j.at("view").get<std::string>();
            if (v == "set")
                c.view_override = ViewKind::SetView;
            else if (v == "arbitrary")
                c.view_override = ViewKind::ArbitraryView;
            else
                throw ConfigError("view must be set or arbitrary");
        }
        if (j.contains("params")) c.d_param = j.at("params").value("D", 0.0);
        if (j.contains("initial")) {
            const auto& g = j.at("initial");
            c.initial.kind = g.value("generator", std::string{});
            c.initial.span = g.value("span", 100.0);
            if (g.contains("d0")) {
                c.initial.d0_min = g.at("d0").at(0).get<double>();
                c.initial.d0_max = g.at("d0").at(1).get<double>();
            }
            c.initial.lights = g.value("lights", "input");
            if (g.contains("points"))
                for (const auto& p : g.at("points"))
                    c.initial.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            if (g.contains("light_values"))
                c.initial.light_values = g.at("light_values").get<std::vector<int>>();
        }
        c.out_path = j.value("out", std::string{});
        c.check = j.value("check", false);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad config: ") + e.what());
    }
    return c;
}

std::string serialize_experiment_config(const ExperimentConfig& c) {
    json j{{"algorithm", c.algorithm},
           {"n", c.n},
           {"seed", c.seed},
           {"max_rounds", c.max_rounds},
           {"scheduler",
            {{"kind", scheduler_kind_name(c.scheduler)},
             {"k", c.k_bound},
             {"fairness_window", c.fairness_window}}},
           {"activation", activation_name(c.activation)},
           {"movement",
            {{"kind", c.movement.rigid ? "rigid" : "non-rigid"},
             {"delta", c.movement.delta},
             {"delta_known", c.movement.delta_known},
             {"truncation", truncation_name(c.truncation)}}},
           {"frames", c.frames == FramePolicy::Identity ? "identity" : "random"},
           {"params", {{"D", c.d_param}}},
           {"initial",
            {{"generator", c.initial.kind},
             {"span", c.initial.span},
             {"d0", {c.initial.d0_min, c.initial.d0_max}},
             {"lights", c.initial.lights}}},
           {"out", c.out_path},
           {"check", c.check}};
    if (c.view_override)
        j["view"] = *c.view_override == ViewKind::SetView ? "set" : "arbitrary";
    if (!c.initial.points.empty()) {
        json pts = json::array();
        for (const auto& p : c.initial.points) pts.push_back({p.x, p.y});
        j["initial"]["points"] = pts;
        j["initial"]["light_values"] = c.initial.light_values;
    }
    return j.dump(2);
}

AlgorithmSpec validated_spec(const ExperimentConfig& c) {
    AlgorithmSpec spec;
    try {
        spec = algorithm_by_name(c.algorithm);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (c.n < 1) throw ConfigError("n must be at least 1");
    if (!spec.allows_scheduler(c.scheduler))
        throw ConfigError(c.algorithm + " does not run under " + scheduler_kind_name(c.scheduler));
    if (spec.needs_rigid && !c.movement.rigid)
        throw ConfigError(c.algorithm + " assumes rigid movement");
    if (!c.movement.rigid && c.movement.delta <= 0.0)
        throw ConfigError("non-rigid movement needs delta > 0");
    if (spec.needs_delta_known && !(c.movement.delta_known && c.movement.delta > 0.0))
        throw ConfigError(c.algorithm + " needs a known delta > 0");
    if (spec.needs_distance_param) {
        if (c.d_param <= 0.0) throw ConfigError(c.algorithm + " needs params.D > 0");
        if (c.d_param > 2.0 * c.movement.delta + 1e-12)
            throw ConfigError("params.D must satisfy D <= 2*delta");
    }
    if (c.view_override && *c.view_override != spec.policy.view) {
        // only the centralized external-light algorithm admits both views
        if (c.algorithm == "cent-ext-light-gather")
            spec.policy.view = *c.view_override;
        else
            throw ConfigError(c.algorithm + " fixes the view kind");
    }
    if (c.scheduler == SchedulerKind::RoundRobin && c.activation_set &&
        c.activation != ActivationPolicy::CyclicOrder)
        throw ConfigError("ROUND-ROBIN implies cyclic activation");
    return spec;
}

namespace {

Point rand_in_box(std::mt19937_64& rng, double span) {
    std::uniform_real_distribution<double> coord(-span, span);
    return {coord(rng), coord(rng)};
}

std::vector<Point> onlds_positions(int n, double d0, double span, std::mt19937_64& rng) {
    Point origin = rand_in_box(rng, span);
    double theta = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    Point u{std::cos(theta), std::sin(theta)};
    std::vector<double> ts = {0.0, 1.0};
    std::uniform_real_distribution<double> tpick(0.05, 0.95);
    std::uniform_int_distribution<int> endpick(0, 9);
    while (static_cast<int>(ts.size()) < n) {
        int e = endpick(rng);
        if (e < 2) {  // pile more robots on an endpoint
            ts.push_back(e == 0 ? 0.0 : 1.0);
            continue;
        }
        double t = tpick(rng);
        bool ok = true;
        for (double q : {0.25, 0.5, 0.75})  // keep clear of the tie knife-edges
            if (std::abs(t - q) < 0.02) ok = false;
        for (double s : ts)
            if (s != 0.0 && s != 1.0 && std::abs(t - s) < 0.02) ok = false;
        if (ok) ts.push_back(t);
    }
    std::shuffle(ts.begin() + 2, ts.end(), rng);
    std::vector<Point> out;
    for (double t : ts) out.push_back(origin + (t * d0) * u);
    return out;
}

std::vector<Point> d_distant_positions(int n, double d, double span, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> shape(0, 3);
    std::vector<Point> locs;
    switch (shape(rng)) {
        case 0: {  // regular polygon, sides at least D
            int f = std::max(3, n);
            double rmin = 1.05 * d / (2.0 * std::sin(std::numbers::pi / f));
            double r = rmin * std::uniform_real_distribution<double>(1.0, 2.5)(rng);
            double phi = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
            Point c = rand_in_box(rng, span / 2.0);
            for (int i = 0; i < f; ++i) {
                double a = phi + 2.0 * std::numbers::pi * i / f;
                locs.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
            }
            locs.resize(n);
            break;
        }
        case 1: {  // regular polygon plus its center
            int f = std::max(3, n - 1);
            double rmin = std::max(1.05 * d / (2.0 * std::sin(std::numbers::pi / f)), 1.05 * d);
            double r = rmin * std::uniform_real_distribution<double>(1.0, 2.0)(rng);
            double phi = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
            Point c = rand_in_box(rng, span / 2.0);
            locs.push_back(c);
            for (int i = 0; i < f && static_cast<int>(locs.size()) < n; ++i) {
                double a = phi + 2.0 * std::numbers::pi * i / f;
                locs.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
            }
            break;
        }
        case 2: {  // collinear, gaps at least D
            Point o = rand_in_box(rng, span / 2.0);
            double a = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
            Point u{std::cos(a), std::sin(a)};
            double t = 0.0;
            for (int i = 0; i < n; ++i) {
                locs.push_back(o + t * u);
                t += d * std::uniform_real_distribution<double>(1.05, 3.0)(rng);
            }
            break;
        }
        default: {  // scatter with rejection
            int guard = 0;
            while (static_cast<int>(locs.size()) < n && guard < 100000) {
                ++guard;
                Point p = rand_in_box(rng, std::max(span, d * n));
                bool ok = true;
                for (const auto& q : locs)
                    if (distance(p, q) < 1.05 * d) ok = false;
                if (ok) locs.push_back(p);
            }
            break;
        }
    }
    return locs;
}

}  // namespace

Configuration generate_initial(const ExperimentConfig& c, const AlgorithmSpec& spec,
                               std::mt19937_64& rng) {
    const std::string kind = c.initial.kind.empty() ? spec.init_kind : c.initial.kind;
    const int cap = 10000;

    for (int attempt = 0; attempt < cap; ++attempt) {
        Configuration cfg;
        std::vector<Point> pos;
        if (kind == "explicit") {
            pos = c.initial.points;
            if (static_cast<int>(pos.size()) != c.n)
                throw ConfigError("explicit generator: points must have n entries");
        } else if (kind == "onLDS") {
            double lo = c.initial.d0_min > 0 ? c.initial.d0_min : c.initial.span / 10.0;
            double hi = c.initial.d0_max > 0 ? c.initial.d0_max : c.initial.span;
            double d0 = std::uniform_real_distribution<double>(lo, hi)(rng);
            pos = onlds_positions(c.n, d0, c.initial.span, rng);
        } else if (kind == "d-distant") {
            auto locs = d_distant_positions(c.n, c.d_param, c.initial.span, rng);
            if (static_cast<int>(locs.size()) < 2) continue;
            // a few co-located robots are legal under D-distance
            for (int i = 0; i < c.n; ++i) {
                if (i < static_cast<int>(locs.size()))
                    pos.push_back(locs[i]);
                else
                    pos.push_back(locs[std::uniform_int_distribution<std::size_t>(
                        0, locs.size() - 1)(rng)]);
            }
        } else if (kind == "two-point-close") {
            Point a = rand_in_box(rng, c.initial.span);
            double theta = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
            double d = c.d_param * std::uniform_real_distribution<double>(0.26, 0.49)(rng);
            Point b = a + d * Point{std::cos(theta), std::sin(theta)};
            for (int i = 0; i < c.n; ++i) pos.push_back(i % 2 ? b : a);
            if (c.n < 2) pos = {a};
        } else if (kind == "distinct") {
            int guard = 0;
            while (static_cast<int>(pos.size()) < c.n && guard < 100000) {
                ++guard;
                Point p = rand_in_box(rng, c.initial.span);
                bool ok = true;
                for (const auto& q : pos)
                    if (distance(p, q) < c.initial.span * 1e-3) ok = false;
                if (ok) pos.push_back(p);
            }
        } else if (kind == "arbitrary") {
            for (int i = 0; i < c.n; ++i) pos.push_back(rand_in_box(rng, c.initial.span));
        } else {
            throw ConfigError("unknown generator: " + kind);
        }

        for (int i = 0; i < c.n; ++i) {
            ColorId light = 0;
            if (!c.initial.light_values.empty())
                light = static_cast<ColorId>(c.initial.light_values[i]);
            else if (c.initial.lights == "arbitrary")
                light = static_cast<ColorId>(std::uniform_int_distribution<int>(
                    0, spec.palette_size - 1)(rng));
            cfg.robots.push_back({i, pos[i], light});
        }
        if (spec.input_ok(cfg, c.d_param, c.tol)) return cfg;
        if (kind == "explicit") throw ConfigError("explicit points violate the input precondition");
    }
    throw ConfigError("could not generate a legal initial configuration (" + kind + ")");
}

const TransitionRelation* relation_for(const std::string& algorithm) {
    if (algorithm == "full-light-gather") return &full_light_relation();
    if (algorithm == "ext-light-gather-3") return &ext_light_relation();
    return nullptr;
}

RunResult run_experiment(const ExperimentConfig& config) {
    AlgorithmSpec spec = validated_spec(config);

    AdversaryStrategy strategy(config.scheduler, config.seed);
    strategy.k_bound = config.k_bound;
    strategy.fairness_window =
        config.fairness_window > 0 ? config.fairness_window : 2 * config.n;
    if (config.activation_set) strategy.activation = config.activation;
    strategy.truncation = config.truncation;
    strategy.frames = config.frames;
    strategy.views = ViewPolicy::SeededRandom;
    strategy.reset(config.seed, config.n);

    std::mt19937_64 gen_rng(config.seed ^ 0x5de3c0ffee1234abULL);
    Configuration initial = generate_initial(config, spec, gen_rng);

    EngineSettings settings;
    settings.tol = config.tol;
    settings.movement = config.movement;
    settings.d_param = config.d_param;
    settings.max_rounds = config.max_rounds;

    RunResult result;
    result.trace = run(initial, spec, strategy, settings);
    result.trace.seed = config.seed;

    if (config.check) {
        if (const auto* rel = relation_for(config.algorithm)) {
            result.conformance_checked = true;
            result.conformance =
                check_conformance(result.trace, *rel, config.movement.delta, config.tol);
            if (config.algorithm == "full-light-gather") {
                auto cycles = check_progress_cycles(result.trace, config.tol);
                if (!cycles.ok) {
                    result.conformance.ok = false;
                    result.conformance.violations.insert(result.conformance.violations.end(),
                                                         cycles.violations.begin(),
                                                         cycles.violations.end());
                }
            }
        }
    }
    if (!config.out_path.empty()) write_trace_file(result.trace, config.out_path);
    return result;
}

SweepSummary sweep(const ExperimentConfig& base, std::uint64_t seed_start, int seed_count,
                   int threads) {
    SweepSummary summary;
    if (seed_count <= 0) return summary;
    validated_spec(base);  // fail fast before spawning workers

    std::vector<RunResult> results(seed_count);
    std::mutex mu;
    int next = 0;
    auto worker = [&]() {
        while (true) {
            int idx;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= seed_count) return;
                idx = next++;
            }
            ExperimentConfig c = base;
            c.seed = seed_start + static_cast<std::uint64_t>(idx);
            c.out_path.clear();
            results[idx] = run_experiment(c);
        }
    };
    int nthreads = std::max(1, std::min(threads, seed_count));
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    long long total_rounds = 0;
    for (int i = 0; i < seed_count; ++i) {
        const auto& r = results[i];
        ++summary.runs;
        switch (r.trace.status) {
            case RunStatus::Gathered: ++summary.gathered; break;
            case RunStatus::NotGathered: ++summary.not_gathered; break;
            case RunStatus::PreconditionViolation: ++summary.precondition_violations; break;
        }
        if (r.conformance_checked && !r.conformance.ok) ++summary.conformance_failures;
        if (r.trace.status != RunStatus::Gathered ||
            (r.conformance_checked && !r.conformance.ok))
            summary.failed_seeds.push_back(r.trace.seed);
        int rounds = static_cast<int>(r.trace.rounds.size());
        total_rounds += rounds;
        summary.max_rounds_seen = std::max(summary.max_rounds_seen, rounds);
        for (const auto& [edge, count] : r.conformance.edge_coverage)
            summary.edge_coverage[edge] += count;
    }
    summary.mean_rounds = summary.runs ? static_cast<double>(total_rounds) / summary.runs : 0.0;
    std::sort(summary.failed_seeds.begin(), summary.failed_seeds.end());
    return summary;
}

}  // namespace gathersim
