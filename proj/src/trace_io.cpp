#include "gathersim/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace gathersim {

namespace {

using json = nlohmann::ordered_json;

json point_json(const Point& p) { return json::array({p.x, p.y}); }

Point point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json config_json(const Configuration& c) {
    json positions = json::array();
    json lights = json::array();
    json ids = json::array();
    for (const auto& r : c.robots) {
        ids.push_back(r.id);
        positions.push_back(point_json(r.pos));
        lights.push_back(static_cast<int>(r.light));
    }
    return json{{"ids", ids}, {"positions", positions}, {"lights", lights}};
}

Configuration config_from(const json& j, int round) {
    Configuration c;
    c.round = round;
    const auto& ids = j.at("ids");
    const auto& pos = j.at("positions");
    const auto& lig = j.at("lights");
    for (std::size_t i = 0; i < ids.size(); ++i)
        c.robots.push_back({ids[i].get<int>(), point_from(pos[i]),
                            static_cast<ColorId>(lig[i].get<int>())});
    return c;
}

json pattern_json(const LinePattern& p) {
    return json{{"on_lds", p.on_lds}, {"tokens", p.tokens}, {"midpoint", p.at_midpoint}};
}

LinePattern pattern_from(const json& j) {
    LinePattern p;
    p.on_lds = j.at("on_lds").get<bool>();
    p.tokens = j.at("tokens").get<std::vector<std::string>>();
    p.at_midpoint = j.at("midpoint").get<std::vector<bool>>();
    return p;
}

}  // namespace

std::string trace_to_jsonl(const Trace& trace) {
    std::ostringstream out;
    json header{{"type", "header"},
                {"algorithm", trace.algorithm},
                {"seed", trace.seed},
                {"n", trace.initial.robots.size()},
                {"scheduler", scheduler_kind_name(trace.scheduler)},
                {"movement",
                 {{"kind", trace.movement.rigid ? "rigid" : "non-rigid"},
                  {"delta", trace.movement.delta},
                  {"delta_known", trace.movement.delta_known}}},
                {"policy",
                 {{"light_model", light_model_name(trace.policy.light_model)},
                  {"view", view_kind_name(trace.policy.view)},
                  {"local_aware", trace.policy.local_aware},
                  {"chirality", trace.policy.chirality}}},
                {"d_param", trace.d_param},
                {"max_rounds", trace.max_rounds},
                {"initial", config_json(trace.initial)},
                {"initial_label", trace.initial_label.pattern},
                {"initial_kind", label_kind_name(trace.initial_label.kind)},
                {"initial_pattern", pattern_json(trace.initial_pattern)},
                {"initial_lds", trace.initial_lds},
                {"initial_endpoint_a", trace.initial_endpoint_a},
                {"initial_phase", trace.initial_phase}};
    out << header.dump() << '\n';

    for (const auto& rec : trace.rounds) {
        json actions = json::array();
        for (const auto& a : rec.actions) {
            json act{{"id", a.id},
                     {"dest", point_json(a.global_destination)},
                     {"resolved", point_json(a.resolved)},
                     {"reached", a.reached}};
            if (a.output.new_light)
                act["light"] = static_cast<int>(*a.output.new_light);
            actions.push_back(act);
        }
        json rj{{"type", "round"},
                {"round", rec.round},
                {"activated", rec.activated},
                {"actions", actions},
                {"config", config_json(rec.result)},
                {"kind", label_kind_name(rec.label.kind)},
                {"label", rec.label.pattern},
                {"pattern", pattern_json(rec.pattern)},
                {"lds", rec.lds_len},
                {"endpoint_a", rec.endpoint_a_robots},
                {"phase", rec.pipeline_phase},
                {"clamped", rec.scheduler_clamped}};
        out << rj.dump() << '\n';
    }

    json footer{{"type", "result"},
                {"status", run_status_name(trace.status)},
                {"rounds", trace.rounds.size()},
                {"rounds_to_gather", trace.rounds_to_gather},
                {"diagnostic", trace.diagnostic}};
    out << footer.dump() << '\n';
    return out.str();
}

void write_trace_file(const Trace& trace, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open trace file for writing: " + path);
    f << trace_to_jsonl(trace);
}

Trace read_trace_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open trace file: " + path);
    Trace trace;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        const std::string type = j.at("type").get<std::string>();
        if (type == "header") {
            trace.algorithm = j.at("algorithm").get<std::string>();
            trace.seed = j.at("seed").get<std::uint64_t>();
            trace.scheduler = scheduler_kind_from_name(j.at("scheduler").get<std::string>());
            trace.movement.rigid = j.at("movement").at("kind").get<std::string>() == "rigid";
            trace.movement.delta = j.at("movement").at("delta").get<double>();
            trace.movement.delta_known = j.at("movement").at("delta_known").get<bool>();
            trace.d_param = j.at("d_param").get<double>();
            trace.max_rounds = j.at("max_rounds").get<int>();
            trace.initial = config_from(j.at("initial"), 0);
            trace.initial_pattern = pattern_from(j.at("initial_pattern"));
            trace.initial_lds = j.at("initial_lds").get<double>();
            trace.initial_endpoint_a = j.at("initial_endpoint_a").get<int>();
            trace.initial_phase = j.at("initial_phase").get<int>();
        } else if (type == "round") {
            RoundRecord rec;
            rec.round = j.at("round").get<int>();
            rec.activated = j.at("activated").get<std::vector<int>>();
            rec.result = config_from(j.at("config"), rec.round);
            rec.pattern = pattern_from(j.at("pattern"));
            rec.label.pattern = j.at("label").get<std::string>();
            rec.lds_len = j.at("lds").get<double>();
            rec.endpoint_a_robots = j.at("endpoint_a").get<int>();
            rec.pipeline_phase = j.at("phase").get<int>();
            rec.scheduler_clamped = j.at("clamped").get<bool>();
            trace.rounds.push_back(std::move(rec));
        } else if (type == "result") {
            const std::string status = j.at("status").get<std::string>();
            trace.status = status == "GATHERED"               ? RunStatus::Gathered
                           : status == "PRECONDITION_VIOLATION" ? RunStatus::PreconditionViolation
                                                                : RunStatus::NotGathered;
            trace.rounds_to_gather = j.at("rounds_to_gather").get<int>();
            trace.diagnostic = j.at("diagnostic").get<std::string>();
        }
    }
    return trace;
}

}  // namespace gathersim
