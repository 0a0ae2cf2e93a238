#include "gathersim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gathersim {

std::string label_kind_name(LabelKind k) {
    switch (k) {
        case LabelKind::Gathered: return "GATHERED";
        case LabelKind::AA: return "AA";
        case LabelKind::AB: return "AB";
        case LabelKind::BA: return "BA";
        case LabelKind::ABA: return "ABA";
        case LabelKind::AbPlusA: return "AB+A";
        case LabelKind::BbStarB: return "BB*B";
        case LabelKind::BBB: return "BBB";
        case LabelKind::AbStarB: return "AB*B";
        case LabelKind::B_AC: return "B(A+C)";
        case LabelKind::BB_AC: return "BB(A+C)";
        case LabelKind::AAA: return "AAA";
        case LabelKind::AaStarA: return "AA*A";
        case LabelKind::Other: return "OTHER";
    }
    return "?";
}

std::string LinePattern::text() const {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += '|';
        out += tokens[i];
        if (at_midpoint[i] && i != 0 && i + 1 != tokens.size()) out += "@m";
    }
    if (!on_lds) out = "offline:" + out;
    return out;
}

namespace {

std::string color_token(const ColorSet& cs, const std::vector<std::string>& names) {
    std::string out;
    for (ColorId c : cs.colors()) {
        if (c < names.size())
            out += names[c];
        else
            out += '?';
    }
    return out;
}

bool reversed_less(const std::vector<std::string>& t) {
    std::vector<std::string> rev(t.rbegin(), t.rend());
    return rev < t;
}

}  // namespace

ColorConfigLabel classify_color_configuration(const Configuration& config,
                                              const std::vector<std::string>& color_names,
                                              const Tolerance& tol, LinePattern* out_pattern) {
    LinePattern pat;
    auto locs = dedup_points(config.positions(), tol);

    std::vector<ColorSet> colors(locs.size());
    for (const auto& r : config.robots)
        for (std::size_t i = 0; i < locs.size(); ++i)
            if (coincident(r.pos, locs[i], tol.eps_pos)) colors[i].add(r.light);

    if (locs.size() == 1) {
        pat.on_lds = true;
        pat.tokens = {color_token(colors[0], color_names)};
        pat.at_midpoint = {false};
        if (out_pattern) *out_pattern = pat;
        return {LabelKind::Gathered, pat.text()};
    }

    auto lds = lds_set(locs, tol);
    if (lds.empty()) {
        pat.on_lds = true;
        pat.tokens = {color_token(colors[0], color_names)};
        pat.at_midpoint = {false};
        if (out_pattern) *out_pattern = pat;
        return {LabelKind::Gathered, pat.text()};
    }
    bool unique = lds.size() == 1;
    const Point a = lds.front().a, b = lds.front().b;
    double len = distance(a, b);
    bool online = unique;
    for (const auto& p : locs) {
        double dev = std::abs(cross(b - a, p - a)) / len;
        double t = dot(p - a, b - a) / (len * len);
        if (dev > tol.eps_rel * len + tol.eps_pos || t < -tol.eps_rel || t > 1.0 + tol.eps_rel)
            online = false;
    }
    pat.on_lds = online;

    std::vector<std::size_t> order(locs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Point dir = b - a;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return dot(locs[i] - a, dir) < dot(locs[j] - a, dir);
    });
    Point mid = midpoint(a, b);
    for (std::size_t i : order) {
        pat.tokens.push_back(color_token(colors[i], color_names));
        pat.at_midpoint.push_back(coincident(locs[i], mid, tol.eps_pos));
    }
    if (reversed_less(pat.tokens)) {
        std::reverse(pat.tokens.begin(), pat.tokens.end());
        std::reverse(pat.at_midpoint.begin(), pat.at_midpoint.end());
    }
    if (out_pattern) *out_pattern = pat;

    if (!online) return {LabelKind::Other, pat.text()};

    const auto& tk = pat.tokens;
    const std::size_t n = tk.size();
    const std::string &e1 = tk.front(), &e2 = tk.back();
    bool interior_uniform_b = true, interior_uniform_a = true, interior_mid_only = true;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (tk[i] != "B") interior_uniform_b = false;
        if (tk[i] != "A") interior_uniform_a = false;
        if (!pat.at_midpoint[i]) interior_mid_only = false;
    }
    auto subset_ac = [](const std::string& t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c != 'A' && c != 'C') return false;
        return true;
    };

    LabelKind kind = LabelKind::Other;
    if (n == 2) {
        if (e1 == "A" && e2 == "A") kind = LabelKind::AA;
        else if (e1 == "B" && e2 == "B") kind = LabelKind::BbStarB;
        else if ((e1 == "A" && e2 == "B") || (e1 == "B" && e2 == "A")) kind = LabelKind::AB;
        else if (e1 == "B" && subset_ac(e2) && e2.find('C') != std::string::npos)
            kind = LabelKind::B_AC;
        else if (e2 == "B" && subset_ac(e1) && e1.find('C') != std::string::npos)
            kind = LabelKind::B_AC;
    } else {
        if (e1 == "A" && e2 == "A" && interior_uniform_b)
            kind = interior_mid_only && n == 3 ? LabelKind::ABA : LabelKind::AbPlusA;
        else if (e1 == "A" && e2 == "A" && interior_uniform_a)
            kind = interior_mid_only && n == 3 ? LabelKind::AAA : LabelKind::AaStarA;
        else if (e1 == "B" && e2 == "B" && interior_uniform_b)
            kind = interior_mid_only && n == 3 ? LabelKind::BBB : LabelKind::BbStarB;
        else if (((e1 == "A" && e2 == "B") || (e1 == "B" && e2 == "A")) && interior_uniform_b)
            kind = LabelKind::AbStarB;
        else if (n == 3 && interior_uniform_b && interior_mid_only &&
                 ((e1 == "B" && subset_ac(e2)) || (e2 == "B" && subset_ac(e1))))
            kind = LabelKind::BB_AC;
    }
    return {kind, pat.text()};
}

// ---------------------------------------------------------------------------
// Transition relations

namespace {

// Internal node classes of the full-light relation. Mixed-endpoint states
// (an endpoint holding both colors) appear mid-transition under partial
// activation and are part of the reachable set.
enum Fig3Node {
    F3_G,
    F3_AAA,
    F3_AASA,
    F3_AA,
    F3_ABA,
    F3_ABPA,
    F3_AB,
    F3_ABSB,
    F3_BB,
    F3_BBB,
    F3_BBP,
    F3_MA,
    F3_MB,
    F3_MM,
    F3_COUNT
};

int fig3_class(const LinePattern& p) {
    const auto& tk = p.tokens;
    if (tk.size() == 1) return F3_G;
    if (!p.on_lds) return -1;
    const std::string &e1 = tk.front(), &e2 = tk.back();
    bool int_b = true, int_a = true, mid_only = true;
    for (std::size_t i = 1; i + 1 < tk.size(); ++i) {
        if (tk[i] != "B") int_b = false;
        if (tk[i] != "A") int_a = false;
        if (!p.at_midpoint[i]) mid_only = false;
    }
    const std::size_t n = tk.size();
    auto pair_is = [&](const std::string& x, const std::string& y) {
        return (e1 == x && e2 == y) || (e1 == y && e2 == x);
    };
    if (n == 2) {
        if (pair_is("A", "A")) return F3_AA;
        if (pair_is("B", "B")) return F3_BB;
        if (pair_is("A", "B")) return F3_AB;
        if (pair_is("AB", "B")) return F3_MB;
        if (pair_is("AB", "A")) return F3_MA;
        if (pair_is("AB", "AB")) return F3_MM;
        return -1;
    }
    if (!int_b && !int_a) return -1;
    if (pair_is("A", "A") && int_a) return mid_only && n == 3 ? F3_AAA : F3_AASA;
    if (pair_is("A", "A") && int_b) return mid_only && n == 3 ? F3_ABA : F3_ABPA;
    if (pair_is("B", "B") && int_b) return mid_only && n == 3 ? F3_BBB : F3_BBP;
    if (pair_is("A", "B") && int_b) return F3_ABSB;
    if (pair_is("AB", "B") && int_b) return F3_MB;
    if (pair_is("AB", "A") && int_b) return F3_MA;
    if (pair_is("AB", "AB") && int_b) return F3_MM;
    return -1;
}

enum Fig4Node {
    F4_G,
    F4_AA,
    F4_AAA,
    F4_AASA,
    F4_AMA,
    F4_ABA,
    F4_AB,
    F4_BAC,
    F4_BBAC,
    F4_COUNT
};

int fig4_class(const LinePattern& p) {
    const auto& tk = p.tokens;
    if (tk.size() == 1) return F4_G;
    if (!p.on_lds) return -1;
    const std::string &e1 = tk.front(), &e2 = tk.back();
    auto subset_ac = [](const std::string& t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c != 'A' && c != 'C') return false;
        return true;
    };
    const std::size_t n = tk.size();
    if (n == 2) {
        if (e1 == "A" && e2 == "A") return F4_AA;
        if ((e1 == "A" && e2 == "B") || (e1 == "B" && e2 == "A")) return F4_AB;
        if (e1 == "B" && subset_ac(e2)) return F4_BAC;
        if (e2 == "B" && subset_ac(e1)) return F4_BAC;
        return -1;
    }
    if (n == 3 && p.at_midpoint[1]) {
        const std::string& m = tk[1];
        if (e1 == "A" && e2 == "A" && m == "A") return F4_AAA;
        if (e1 == "A" && e2 == "A" && m == "AB") return F4_AMA;
        if (e1 == "A" && e2 == "A" && m == "B") return F4_ABA;
        if (m == "B" && ((e1 == "B" && subset_ac(e2)) || (e2 == "B" && subset_ac(e1))))
            return F4_BBAC;
    }
    // collinear all-A states of the reduction prefix
    bool all_a = true;
    for (const auto& t : tk)
        if (t != "A") all_a = false;
    if (all_a) {
        bool mid_only = true;
        for (std::size_t i = 1; i + 1 < n; ++i)
            if (!p.at_midpoint[i]) mid_only = false;
        return mid_only && n == 3 ? F4_AAA : F4_AASA;
    }
    return -1;
}

TransitionRelation build_fig3() {
    TransitionRelation r;
    r.name = "full-light-gather";
    r.node_names = {"GATHERED", "AAA", "AA*A", "AA", "ABA", "AB+A", "AB", "AB*B",
                    "BB",       "BBB", "BB+B", "A^B|A", "A^B|B", "A^B|A^B"};
    r.node_class = &fig3_class;
    auto e = [&](int f, int t, ProgressTag tag, const char* note) {
        r.edges.push_back({f, t, tag, note});
    };
    const auto S = ProgressTag::Same, N = ProgressTag::NonInc, D1 = ProgressTag::MinusDelta,
               D2 = ProgressTag::Minus2Delta, AD = ProgressTag::ADecreases;
    e(F3_AAA, F3_AAA, S, "L9");
    e(F3_AAA, F3_AASA, S, "L9");
    e(F3_AAA, F3_AA, S, "L9");
    e(F3_AASA, F3_AASA, S, "L9");
    e(F3_AASA, F3_AAA, S, "L9");
    e(F3_AASA, F3_AA, S, "L9");
    e(F3_AA, F3_G, N, "L10.1");
    e(F3_AA, F3_BB, D2, "L10.2");
    e(F3_AA, F3_BBP, D2, "L10.2");
    e(F3_AA, F3_BBB, D2, "L10.2");
    e(F3_AA, F3_AB, D1, "L10.3");
    e(F3_AA, F3_ABSB, D1, "L10.3");
    e(F3_AA, F3_ABA, S, "L10.4");
    e(F3_AA, F3_ABPA, S, "L10.5");
    e(F3_ABA, F3_G, N, "L13.1");
    e(F3_ABA, F3_BB, D2, "L13.4");
    e(F3_ABA, F3_BBP, D2, "L13.4");
    e(F3_ABA, F3_BBB, D2, "L13.4");
    e(F3_ABA, F3_AB, D1, "L13.3");
    e(F3_ABA, F3_ABSB, D1, "L13.3");
    e(F3_ABA, F3_ABA, AD, "L13.2");
    e(F3_ABA, F3_ABPA, AD, "L13.2");
    e(F3_ABPA, F3_ABA, S, "L11");
    e(F3_ABPA, F3_ABPA, S, "L11");
    e(F3_AB, F3_G, N, "L14");
    e(F3_AB, F3_AB, D1, "L14");
    e(F3_AB, F3_ABSB, N, "L14");
    e(F3_AB, F3_MB, N, "L14");
    e(F3_ABSB, F3_G, N, "L14");
    e(F3_ABSB, F3_ABSB, N, "L14");
    e(F3_ABSB, F3_MB, N, "L14");
    e(F3_BB, F3_AA, S, "L12.4");
    e(F3_BB, F3_AB, S, "L12.a");
    e(F3_BB, F3_MA, S, "L12.a");
    e(F3_BB, F3_MB, S, "L12.a");
    e(F3_BB, F3_MM, S, "L12.b");
    e(F3_BBB, F3_ABA, S, "L12.3");
    e(F3_BBB, F3_ABSB, S, "L12.a");
    e(F3_BBB, F3_MA, S, "L12.a");
    e(F3_BBB, F3_MB, S, "L12.a");
    e(F3_BBB, F3_MM, S, "L12.b");
    e(F3_BBP, F3_ABPA, S, "L12.2");
    e(F3_BBP, F3_ABSB, S, "L12.a");
    e(F3_BBP, F3_MA, S, "L12.a");
    e(F3_BBP, F3_MB, S, "L12.a");
    e(F3_BBP, F3_MM, S, "L12.b");
    e(F3_MA, F3_MA, S, "L12.a");
    e(F3_MA, F3_ABA, S, "L12.a");
    e(F3_MA, F3_ABPA, S, "L12.a");
    e(F3_MM, F3_MM, S, "L12.b");
    e(F3_MM, F3_MA, S, "L12.b");
    e(F3_MM, F3_ABA, S, "L12.b");
    e(F3_MM, F3_ABPA, S, "L12.b");
    e(F3_MB, F3_MB, N, "L14");
    e(F3_MB, F3_G, N, "L14");
    return r;
}

TransitionRelation build_fig4() {
    TransitionRelation r;
    r.name = "ext-light-gather-3";
    r.node_names = {"GATHERED", "AA", "AAA", "AA*A", "A(A^B)A", "ABA", "AB", "B(A+C)", "BB(A+C)"};
    r.node_class = &fig4_class;
    auto e = [&](int f, int t, const char* note) {
        r.edges.push_back({f, t, ProgressTag::NonInc, note});
    };
    e(F4_AASA, F4_AASA, "reduction");
    e(F4_AASA, F4_AAA, "reduction");
    e(F4_AASA, F4_AA, "reduction");
    e(F4_AA, F4_G, "L15");
    e(F4_AA, F4_ABA, "L15");
    e(F4_AA, F4_AB, "L15");
    e(F4_AAA, F4_AMA, "L16");
    e(F4_AAA, F4_ABA, "L16");
    e(F4_AMA, F4_AMA, "L16");
    e(F4_AMA, F4_ABA, "L16");
    e(F4_ABA, F4_ABA, "L17");
    e(F4_ABA, F4_AB, "L17");
    e(F4_ABA, F4_G, "L17");
    e(F4_AB, F4_AB, "L18");
    e(F4_AB, F4_BAC, "L18");
    e(F4_AB, F4_BBAC, "L18");
    e(F4_BBAC, F4_BBAC, "L19");
    e(F4_BBAC, F4_BAC, "L19");
    e(F4_BBAC, F4_AB, "L19");
    e(F4_BAC, F4_BAC, "L20");
    e(F4_BAC, F4_G, "L20");
    return r;
}

}  // namespace

const TransitionRelation::Edge* TransitionRelation::find(int from, int to) const {
    for (const auto& e : edges)
        if (e.from == from && e.to == to) return &e;
    return nullptr;
}

const TransitionRelation& full_light_relation() {
    static const TransitionRelation r = build_fig3();
    return r;
}

const TransitionRelation& ext_light_relation() {
    static const TransitionRelation r = build_fig4();
    return r;
}

// ---------------------------------------------------------------------------
// Engine

bool is_gathered(const Configuration& config, const Tolerance& tol) {
    return dedup_points(config.positions(), tol).size() <= 1;
}

namespace {

int count_endpoint_a(const Configuration& config, const Tolerance& tol) {
    auto locs = dedup_points(config.positions(), tol);
    auto lds = lds_set(locs, tol);
    if (lds.size() != 1) return 0;
    int count = 0;
    for (const auto& r : config.robots) {
        if (r.light != 0) continue;
        if (coincident(r.pos, lds.front().a, tol.eps_pos) ||
            coincident(r.pos, lds.front().b, tol.eps_pos))
            ++count;
    }
    return count;
}

void annotate(RoundRecord& rec, const Configuration& cfg, const AlgorithmSpec& spec,
              const EngineSettings& st) {
    rec.label = classify_color_configuration(cfg, spec.color_names, st.tol, &rec.pattern);
    rec.lds_len = lds_length(dedup_points(cfg.positions(), st.tol), st.tol);
    rec.endpoint_a_robots = count_endpoint_a(cfg, st.tol);
    if (spec.needs_distance_param) {
        auto route = pipeline_route(cfg.positions(), st.d_param, st.tol);
        rec.pipeline_phase = route == PipelinePhase::Done     ? 0
                             : route == PipelinePhase::Gather4 ? 4
                             : route == PipelinePhase::Reduce5 ? 5
                                                               : 6;
    }
}

}  // namespace

std::pair<Configuration, RoundRecord> step(const Configuration& config,
                                           const std::vector<int>& activation,
                                           const AlgorithmSpec& spec,
                                           AdversaryStrategy& strategy,
                                           const EngineSettings& settings) {
    RoundRecord rec;
    rec.round = config.round + 1;
    rec.activated = activation;
    rec.scheduler_clamped = strategy.was_clamped();

    // Look + Compute for everyone first: SSYNC rounds are atomic, so every
    // activated robot sees the same pre-round configuration.
    for (int id : activation) {
        const RobotState* self = config.find(id);
        if (!self) throw std::invalid_argument("step: activation of unknown robot");
        RobotAction act;
        act.id = id;
        act.frame = strategy.choose_frame(spec.policy, self->pos);
        Snapshot snap = derive_snapshot(
            config, id, spec.policy, act.frame,
            [&](const std::vector<ColorId>& avail) { return strategy.choose_view(avail); },
            settings.tol);
        double delta_local =
            settings.movement.delta_known ? settings.movement.delta * snap.scale : 0.0;
        double d_local = settings.d_param * snap.scale;
        act.output = spec.compute(snap, delta_local, d_local, settings.tol);
        if (act.output.new_light && *act.output.new_light >= spec.palette_size)
            throw std::logic_error("compute produced a color outside the palette");
        act.global_destination = to_global(act.frame, act.output.destination);
        rec.actions.push_back(act);
    }

    Configuration next = config;
    next.round = config.round + 1;

    for (auto& act : rec.actions) {
        const RobotState* self = config.find(act.id);
        act.resolved = strategy.resolve_movement(self->pos, act.global_destination,
                                                 settings.movement);
        act.reached = act.resolved.x == act.global_destination.x &&
                      act.resolved.y == act.global_destination.y;
    }

    // Apply all writes at once, snapping arrivals onto coincident locations
    // (destinations computed through different frames agree only up to
    // arithmetic noise; patterns must stay exact).
    std::set<int> moved;
    for (const auto& act : rec.actions) moved.insert(act.id);
    std::vector<Point> anchors;
    for (const auto& r : config.robots)
        if (!moved.count(r.id)) anchors.push_back(r.pos);

    for (const auto& act : rec.actions) {
        Point landed = act.resolved;
        for (const auto& a : anchors)
            if (coincident(landed, a, settings.tol.eps_pos)) {
                landed = a;
                break;
            }
        anchors.push_back(landed);
        for (auto& r : next.robots)
            if (r.id == act.id) {
                r.pos = landed;
                if (act.output.new_light) r.light = *act.output.new_light;
            }
    }

    annotate(rec, next, spec, settings);
    rec.result = next;
    return {next, rec};
}

Trace run(const Configuration& initial, const AlgorithmSpec& spec, AdversaryStrategy& strategy,
          const EngineSettings& settings) {
    Trace trace;
    trace.algorithm = spec.name;
    trace.scheduler = strategy.scheduler;
    trace.movement = settings.movement;
    trace.policy = spec.policy;
    trace.d_param = settings.d_param;
    trace.max_rounds = settings.max_rounds;
    trace.initial = initial;

    trace.initial_label = classify_color_configuration(initial, spec.color_names, settings.tol,
                                                       &trace.initial_pattern);
    trace.initial_lds = lds_length(dedup_points(initial.positions(), settings.tol), settings.tol);
    trace.initial_endpoint_a = count_endpoint_a(initial, settings.tol);
    if (spec.needs_distance_param) {
        auto route = pipeline_route(initial.positions(), settings.d_param, settings.tol);
        trace.initial_phase = route == PipelinePhase::Done     ? 0
                              : route == PipelinePhase::Gather4 ? 4
                              : route == PipelinePhase::Reduce5 ? 5
                                                                : 6;
    }

    Configuration config = initial;
    for (int i = 0; i < settings.max_rounds; ++i) {
        if (is_gathered(config, settings.tol)) {
            trace.status = RunStatus::Gathered;
            trace.rounds_to_gather = config.round;
            return trace;
        }
        auto activation = strategy.next_activation(config, settings.tol);
        try {
            auto [next, rec] = step(config, activation, spec, strategy, settings);
            config = next;
            trace.rounds.push_back(std::move(rec));
        } catch (const PreconditionViolation& e) {
            trace.status = RunStatus::PreconditionViolation;
            trace.diagnostic = e.what();
            return trace;
        }
    }
    if (is_gathered(config, settings.tol)) {
        trace.status = RunStatus::Gathered;
        trace.rounds_to_gather = config.round;
    } else {
        trace.status = RunStatus::NotGathered;
        trace.diagnostic = "max_rounds exhausted";
    }
    return trace;
}

std::string run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Gathered: return "GATHERED";
        case RunStatus::NotGathered: return "NOT_GATHERED";
        case RunStatus::PreconditionViolation: return "PRECONDITION_VIOLATION";
    }
    return "?";
}

std::string progress_tag_name(ProgressTag t) {
    switch (t) {
        case ProgressTag::Same: return "same";
        case ProgressTag::NonInc: return "non-increasing";
        case ProgressTag::MinusDelta: return "minus-delta";
        case ProgressTag::Minus2Delta: return "minus-2delta";
        case ProgressTag::ADecreases: return "A-count-decreases";
    }
    return "?";
}

namespace {

bool same_configuration(const Configuration& a, const Configuration& b) {
    if (a.robots.size() != b.robots.size()) return false;
    for (std::size_t i = 0; i < a.robots.size(); ++i) {
        if (a.robots[i].id != b.robots[i].id) return false;
        if (!(a.robots[i].pos == b.robots[i].pos)) return false;
        if (a.robots[i].light != b.robots[i].light) return false;
    }
    return true;
}

struct TraceState {
    const Configuration* config;
    const LinePattern* pattern;
    double lds;
    int endpoint_a;
    int round;
};

std::vector<TraceState> changed_states(const Trace& trace) {
    std::vector<TraceState> states;
    states.push_back({&trace.initial, &trace.initial_pattern, trace.initial_lds,
                      trace.initial_endpoint_a, 0});
    for (const auto& rec : trace.rounds) {
        if (same_configuration(*states.back().config, rec.result)) continue;
        states.push_back({&rec.result, &rec.pattern, rec.lds_len, rec.endpoint_a_robots,
                          rec.round});
    }
    return states;
}

}  // namespace

ConformanceReport check_conformance(const Trace& trace, const TransitionRelation& relation,
                                    double delta, const Tolerance& tol) {
    ConformanceReport report;
    auto states = changed_states(trace);

    auto name_of = [&](int cls, const LinePattern& pat) {
        return cls >= 0 ? relation.node_names[cls] : "off-relation(" + pat.text() + ")";
    };

    for (std::size_t i = 0; i + 1 < states.size(); ++i) {
        const auto& from = states[i];
        const auto& to = states[i + 1];
        int cf = relation.node_class(*from.pattern);
        int ct = relation.node_class(*to.pattern);
        double drop = from.lds - to.lds;
        double eq = tol.eps_pos * 16.0 + tol.eps_rel * 16.0 * std::max(from.lds, to.lds);

        if (cf < 0 || ct < 0) {
            report.ok = false;
            report.violations.push_back({to.round, name_of(cf, *from.pattern),
                                         name_of(ct, *to.pattern),
                                         "configuration outside the relation's node set", drop});
            continue;
        }
        const auto* edge = relation.find(cf, ct);
        if (!edge) {
            report.ok = false;
            report.violations.push_back({to.round, relation.node_names[cf],
                                         relation.node_names[ct], "no such transition", drop});
            continue;
        }
        bool tag_ok = true;
        std::string why;
        switch (edge->tag) {
            case ProgressTag::Same:
                tag_ok = std::abs(drop) <= eq;
                why = "LDS length must be unchanged";
                break;
            case ProgressTag::NonInc:
                tag_ok = drop >= -eq;
                why = "LDS length must not grow";
                break;
            case ProgressTag::MinusDelta:
                tag_ok = drop >= std::min(delta, from.lds / 2.0) - eq;
                why = "LDS length must drop by delta (or reach the midpoint)";
                break;
            case ProgressTag::Minus2Delta:
                tag_ok = drop >= std::min(2.0 * delta, from.lds) - eq;
                why = "LDS length must drop by 2*delta";
                break;
            case ProgressTag::ADecreases:
                tag_ok = to.endpoint_a < from.endpoint_a && std::abs(drop) <= eq;
                why = "endpoint A-count must strictly decrease at unchanged length";
                break;
        }
        if (!tag_ok) {
            report.ok = false;
            report.violations.push_back({to.round, relation.node_names[cf],
                                         relation.node_names[ct],
                                         why + " [" + edge->note + "]", drop});
            continue;
        }
        report.edge_coverage[relation.node_names[cf] + "->" + relation.node_names[ct]]++;
    }
    return report;
}

ConformanceReport check_progress_cycles(const Trace& trace, const Tolerance& tol) {
    ConformanceReport report;
    auto states = changed_states(trace);
    const auto& rel = full_light_relation();

    int last_aa = -1, last_aba = -1;
    for (std::size_t i = 0; i < states.size(); ++i) {
        int cls = rel.node_class(*states[i].pattern);
        auto check_revisit = [&](int& last, const char* label) {
            if (last >= 0) {
                const auto& prev = states[last];
                const auto& now = states[i];
                double eq = tol.eps_pos * 16.0 +
                            tol.eps_rel * 16.0 * std::max(prev.lds, now.lds);
                bool shrunk = now.lds < prev.lds - eq;
                bool a_drop = std::abs(now.lds - prev.lds) <= eq &&
                              now.endpoint_a < prev.endpoint_a;
                if (!shrunk && !a_drop) {
                    report.ok = false;
                    report.violations.push_back(
                        {now.round, label, label,
                         "revisited without LDS or endpoint-A progress",
                         prev.lds - now.lds});
                }
            }
            last = static_cast<int>(i);
        };
        if (cls == F3_AA) check_revisit(last_aa, "AA");
        if (cls == F3_ABA) check_revisit(last_aba, "ABA");
    }
    return report;
}

MetricsSeries metrics(const Trace& trace, const Tolerance& tol) {
    MetricsSeries out;
    auto push = [&](const Configuration& c, double lds, int ea, int phase) {
        out.lds_len.push_back(lds);
        out.location_count.push_back(static_cast<int>(dedup_points(c.positions(), tol).size()));
        out.endpoint_a.push_back(ea);
        out.phase.push_back(phase);
    };
    push(trace.initial, trace.initial_lds, trace.initial_endpoint_a, trace.initial_phase);
    for (const auto& rec : trace.rounds)
        push(rec.result, rec.lds_len, rec.endpoint_a_robots, rec.pipeline_phase);
    out.rounds_to_gather = trace.rounds_to_gather;
    return out;
}

}  // namespace gathersim
