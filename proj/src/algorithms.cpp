#include "gathersim/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

namespace gathersim {

namespace {

constexpr ColorId kA = 0, kB = 1, kC = 2;  // T=0, M=1 reuse the same slots

ComputeOutput stay() { return {std::nullopt, Point{0.0, 0.0}}; }

Tolerance local_tol(const Snapshot& snap, const Tolerance& tol) {
    return Tolerance{tol.eps_pos * snap.scale, tol.eps_rel};
}

bool at_origin(const Point& p, const Tolerance& lt) {
    return coincident(p, Point{0.0, 0.0}, lt.eps_pos);
}

/// Endpoints of the snapshot's longest distance segment, seen from the
/// observer at the origin: pn nearest, pf farthest. Exact ties pick the
/// lexicographically smaller local point as pn.
struct Axis {
    double d = 0.0;
    Point pn, pf;
    bool own_at_endpoint = false;
};

std::optional<Axis> lds_axis(const std::vector<Point>& pts, const Tolerance& lt) {
    auto lds = lds_set(pts, lt);
    if (lds.empty()) return std::nullopt;
    const auto& seg = lds.front();
    Axis ax;
    ax.d = seg.length();
    double da = norm(seg.a), db = norm(seg.b);
    bool a_near = da < db || (da == db && lex_less(seg.a, seg.b));
    ax.pn = a_near ? seg.a : seg.b;
    ax.pf = a_near ? seg.b : seg.a;
    ax.own_at_endpoint = at_origin(ax.pn, lt);
    return ax;
}

/// Locations sorted along the line through the two LDS endpoints.
std::vector<Point> sort_along_axis(const std::vector<Point>& pts, const Axis& ax) {
    Point dir = ax.pf - ax.pn;
    std::vector<Point> out = pts;
    std::sort(out.begin(), out.end(), [&](const Point& a, const Point& b) {
        return dot(a - ax.pn, dir) < dot(b - ax.pn, dir);
    });
    return out;
}

bool symmetric_three(const std::vector<Point>& pts, const Axis& ax, const Tolerance& lt) {
    if (pts.size() != 3) return false;
    if (!collinear(pts, lt)) return false;
    auto ordered = sort_along_axis(pts, ax);
    return coincident(ordered[1], midpoint(ordered[0], ordered[2]), lt.eps_pos);
}

/// Per-location color sets; under full-light the observer's own light
/// contributes to its own location.
struct ColorMap {
    std::vector<ColorSet> at;  // parallel to snap.locations
    ColorSet all;
    std::vector<Point> with(const Snapshot& snap, ColorId c) const {
        std::vector<Point> out;
        for (std::size_t i = 0; i < at.size(); ++i)
            if (at[i].contains(c)) out.push_back(snap.locations[i].pos);
        return out;
    }
};

ColorMap color_map(const Snapshot& snap, const Tolerance& lt, bool include_own) {
    ColorMap cm;
    cm.at.reserve(snap.locations.size());
    for (const auto& loc : snap.locations) {
        ColorSet cs = loc.view;
        if (include_own && snap.own_light && at_origin(loc.pos, lt)) cs.add(*snap.own_light);
        cm.at.push_back(cs);
        cm.all.bits |= cs.bits;
    }
    return cm;
}

}  // namespace

ComputeOutput full_light_gather(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    if (pts.size() <= 1) return stay();
    if (!snap.own_light) throw PreconditionViolation("full-light-gather needs own light");
    if (!collinear(pts, lt)) throw PreconditionViolation("full-light-gather: not on a line");

    const auto ax = *lds_axis(pts, lt);
    const ColorId own = *snap.own_light;
    const ColorMap cm = color_map(snap, lt, /*include_own=*/true);
    const auto pa = cm.with(snap, kA);
    const auto pb = cm.with(snap, kB);
    const Point mid = midpoint(ax.pn, ax.pf);

    ColorSet only_a, only_b, both;
    only_a.add(kA);
    only_b.add(kB);
    both.add(kA);
    both.add(kB);

    if (cm.all == only_a) {
        if (pa.size() == 1) return stay();
        if (pa.size() == 2) return {kB, mid};
        return ax.own_at_endpoint ? stay() : ComputeOutput{std::nullopt, ax.pn};
    }
    if (cm.all == only_b) {
        if (ax.own_at_endpoint) return {kA, Point{0.0, 0.0}};
        return stay();
    }
    if (cm.all == both) {
        if (own == kA) {
            if (pa.size() == 1) return stay();
            bool endpoints_a = pa.size() == 2 &&
                               ((coincident(pa[0], ax.pn, lt.eps_pos) &&
                                 coincident(pa[1], ax.pf, lt.eps_pos)) ||
                                (coincident(pa[0], ax.pf, lt.eps_pos) &&
                                 coincident(pa[1], ax.pn, lt.eps_pos)));
            bool mid_b = pb.size() == 1 && coincident(pb[0], mid, lt.eps_pos);
            if (endpoints_a && mid_b) return {kB, mid};
            return stay();
        }
        if (pa.size() == 1) return {std::nullopt, pa[0]};
        return {std::nullopt, mid};
    }
    throw PreconditionViolation("full-light-gather: colors outside the palette");
}

namespace {

/// Input shape of the rigid external-light algorithms: two locations, or
/// three collinear ones whose middle is the exact midpoint.
struct ExtShape {
    bool two = false;
    Point far;          // other location (two) / far endpoint (three)
    Point mid;          // middle location (three only)
    bool own_at_mid = false;
    int far_index = -1;
    int mid_index = -1;
};

std::optional<ExtShape> ext_shape(const Snapshot& snap, const Tolerance& lt) {
    const auto pts = snap.points();
    ExtShape s;
    if (pts.size() == 2) {
        s.two = true;
        for (int i = 0; i < 2; ++i)
            if (!at_origin(pts[i], lt)) {
                s.far = pts[i];
                s.far_index = i;
            }
        return s;
    }
    if (pts.size() == 3) {
        auto ax = lds_axis(pts, lt);
        if (!ax || !symmetric_three(pts, *ax, lt)) return std::nullopt;
        auto ordered = sort_along_axis(pts, *ax);
        Point mid = ordered[1];
        s.mid = mid;
        s.own_at_mid = at_origin(mid, lt);
        if (!s.own_at_mid) {
            // far endpoint = the endpoint that is not the observer
            Point far = at_origin(ordered[0], lt) ? ordered[2] : ordered[0];
            s.far = far;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (coincident(pts[i], s.mid, lt.eps_pos)) s.mid_index = static_cast<int>(i);
            if (!s.own_at_mid && coincident(pts[i], s.far, lt.eps_pos))
                s.far_index = static_cast<int>(i);
        }
        return s;
    }
    return std::nullopt;
}

}  // namespace

ComputeOutput ext_light_gather_3(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    if (snap.points().size() <= 1) return stay();
    auto shape = ext_shape(snap, lt);
    if (!shape) throw PreconditionViolation("ext-light-gather-3: unexpected input shape");

    if (shape->two) {
        ColorSet lf = snap.locations[shape->far_index].view;
        ColorSet just_a, just_b;
        just_a.add(kA);
        just_b.add(kB);
        if (lf.contains(kC)) return {kC, shape->far};
        if (lf == just_a) return {kB, midpoint(Point{0.0, 0.0}, shape->far)};
        if (lf == just_b) return {kC, Point{0.0, 0.0}};
        return stay();
    }
    if (shape->own_at_mid) return {kB, Point{0.0, 0.0}};

    ColorSet lf = snap.locations[shape->far_index].view;
    ColorSet lm = snap.locations[shape->mid_index].view;
    ColorSet just_b;
    just_b.add(kB);
    if (lf == just_b && lm == just_b) return {kC, Point{0.0, 0.0}};
    if ((lf.contains(kA) || lf.contains(kC)) && lm == just_b) return {kB, shape->mid};
    return stay();
}

ComputeOutput ext_light_gather_2(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    if (snap.points().size() <= 1) return stay();
    auto shape = ext_shape(snap, lt);
    if (!shape) throw PreconditionViolation("ext-light-gather-2: unexpected input shape");

    const ColorMap cm = color_map(snap, lt, /*include_own=*/false);
    if (shape->two) {
        if (cm.all.contains(kB)) {
            // toward a location showing B; staying put when that is our own
            for (std::size_t i = 0; i < snap.locations.size(); ++i)
                if (cm.at[i].contains(kB) && at_origin(snap.locations[i].pos, lt))
                    return {kB, Point{0.0, 0.0}};
            return {kB, cm.with(snap, kB).front()};
        }
        const auto* ownloc = snap.own_location(lt);
        if (ownloc && ownloc->view.empty()) return stay();  // alone here
        return {kB, midpoint(Point{0.0, 0.0}, shape->far)};
    }
    if (shape->own_at_mid && snap.locations[shape->mid_index].view.contains(kA))
        return {kB, Point{0.0, 0.0}};
    return {kB, shape->mid};
}

ComputeOutput int_light_gather(const Snapshot& snap, double d_local, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    if (pts.size() <= 1) return stay();
    if (!snap.own_light) throw PreconditionViolation("int-light-gather needs own light");
    const ColorId own = *snap.own_light;
    const double d_cfg = d_local;

    auto ax = lds_axis(pts, lt);
    if (!ax) return stay();
    if (ax->d >= d_cfg / 4.0 && ax->d < d_cfg / 2.0) {
        bool shape_ok = pts.size() == 2 || symmetric_three(pts, *ax, lt);
        if (shape_ok && own == kA) return {kB, midpoint(ax->pn, ax->pf)};
        return stay();
    }
    if (ax->d < d_cfg / 4.0) {
        if (own == kA) return {std::nullopt, ax->pf};
        return stay();
    }
    return stay();  // distance still >= D/2: not this phase
}

namespace {

struct GapChain {
    std::vector<Point> ordered;
    std::vector<double> gaps;  // gaps[i] = |ordered[i] ordered[i+1]|
};

std::optional<GapChain> collinear_chain(const std::vector<Point>& pts, const Tolerance& lt) {
    if (pts.size() < 2 || !collinear(pts, lt)) return std::nullopt;
    auto ax = lds_axis(pts, lt);
    if (!ax) return std::nullopt;
    GapChain ch;
    ch.ordered = sort_along_axis(pts, *ax);
    for (std::size_t i = 0; i + 1 < ch.ordered.size(); ++i)
        ch.gaps.push_back(distance(ch.ordered[i], ch.ordered[i + 1]));
    return ch;
}

bool close_rel(double a, double b, double eps) { return std::abs(a - b) <= eps * std::max(a, b); }

}  // namespace

bool a3p_shape(const std::vector<Point>& points, double d_param, const Tolerance& tol) {
    auto pts = dedup_points(points, tol);
    if (pts.size() != 3) return false;
    auto ch = collinear_chain(pts, tol);
    if (!ch) return false;
    double g1 = ch->gaps[0], g2 = ch->gaps[1];
    if (close_rel(g1, g2, tol.eps_rel)) return false;
    return std::min(g1, g2) <= d_param / 2.0 * (1.0 + tol.eps_rel) &&
           std::max(g1, g2) > d_param / 4.0 * (1.0 - tol.eps_rel);
}

bool a4p_shape(const std::vector<Point>& points, double d_param, const Tolerance& tol) {
    auto pts = dedup_points(points, tol);
    if (pts.size() != 4) return false;
    auto ch = collinear_chain(pts, tol);
    if (!ch) return false;
    double g1 = ch->gaps[0], g2 = ch->gaps[1], g3 = ch->gaps[2];
    if (!close_rel(g1, g3, tol.eps_rel)) return false;
    if (close_rel(g1, g2, tol.eps_rel)) return false;
    return g1 <= d_param / 2.0 * (1.0 + tol.eps_rel) && g2 >= d_param / 4.0 * (1.0 - tol.eps_rel);
}

ComputeOutput reduce_distance_lds(const Snapshot& snap, double d_local, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    if (pts.size() <= 1) return stay();
    const double dd = d_local;

    if (pts.size() == 2) {
        auto ax = *lds_axis(pts, lt);
        if (ax.d < dd / 2.0) return stay();
        double alpha;
        if (ax.d > 1.5 * dd)
            alpha = dd / 2.0;
        else if (ax.d >= 1.125 * dd)
            alpha = dd / 12.0;
        else
            alpha = ax.d / 2.0 - 3.0 * dd / 16.0;
        if (!ax.own_at_endpoint) return stay();
        return {std::nullopt, point_along(Point{0.0, 0.0}, ax.pf, alpha)};
    }
    if (a3p_shape(pts, dd, lt)) {
        auto ch = *collinear_chain(pts, lt);
        const Point &p0 = ch.ordered[0], &p1 = ch.ordered[1], &p2 = ch.ordered[2];
        if (at_origin(p0, lt) && ch.gaps[0] < ch.gaps[1]) return {std::nullopt, p1};
        if (at_origin(p2, lt) && ch.gaps[1] < ch.gaps[0]) return {std::nullopt, p1};
        return stay();
    }
    if (a4p_shape(pts, dd, lt)) {
        auto ch = *collinear_chain(pts, lt);
        if (at_origin(ch.ordered[0], lt)) return {std::nullopt, ch.ordered[1]};
        if (at_origin(ch.ordered[3], lt)) return {std::nullopt, ch.ordered[2]};
        return stay();
    }
    return stay();
}

namespace {

double angle_about(const Point& c, const Point& p) { return std::atan2(p.y - c.y, p.x - c.x); }

double ccw_angle_between(double from, double to) {
    double a = to - from;
    const double tau = 2.0 * std::numbers::pi;
    a = std::fmod(a, tau);
    if (a < 0) a += tau;
    return a;
}

/// Step along the circle from `from` toward `dest` (direction avoiding
/// `avoid`) by a chord of at most max_chord; lands exactly on dest when the
/// remaining chord fits.
Point arc_chord_step(const Circle& sec, const Point& from, const Point& dest,
                     std::optional<Point> avoid, double max_chord) {
    double a_from = angle_about(sec.center, from);
    double a_dest = angle_about(sec.center, dest);
    double ccw = ccw_angle_between(a_from, a_dest);
    bool go_ccw = true;
    if (avoid) {
        double a_avoid = ccw_angle_between(a_from, angle_about(sec.center, *avoid));
        go_ccw = !(a_avoid < ccw);  // detour around the avoided point
    }
    double total = go_ccw ? ccw : 2.0 * std::numbers::pi - ccw;
    double ratio = std::min(1.0, max_chord / (2.0 * sec.radius));
    double step = 2.0 * std::asin(ratio);
    if (total <= step) return dest;
    return rotate_about(sec.center, from, go_ccw ? step : -step);
}

}  // namespace

ComputeOutput reduce_num_lds(const Snapshot& snap, double delta_local, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    Circle sec = smallest_enclosing_circle(pts, lt);
    double slack = lt.eps_rel * sec.radius + lt.eps_pos;

    std::vector<Point> on_circle;
    for (const auto& p : pts)
        if (std::abs(distance(p, sec.center) - sec.radius) <= slack) on_circle.push_back(p);
    if (on_circle.size() < 2) return stay();

    std::sort(on_circle.begin(), on_circle.end(), [&](const Point& a, const Point& b) {
        return angle_about(sec.center, a) < angle_about(sec.center, b);
    });
    const std::size_t g = on_circle.size();
    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<double> gap(g);
    for (std::size_t i = 0; i < g; ++i) {
        gap[i] = distance(on_circle[i], on_circle[(i + 1) % g]);
        min_gap = std::min(min_gap, gap[i]);
    }
    for (std::size_t i = 0; i < g; ++i) {
        if (gap[i] > min_gap * (1.0 + lt.eps_rel)) continue;
        if (!at_origin(on_circle[i], lt)) continue;
        const Point target = on_circle[(i + 1) % g];
        if (distance(Point{0.0, 0.0}, target) <= delta_local) return {std::nullopt, target};
        double step = 2.0 * std::asin(std::min(1.0, delta_local / (2.0 * sec.radius)));
        return {std::nullopt, rotate_about(sec.center, Point{0.0, 0.0}, step)};
    }
    return stay();
}

ComputeOutput make_diameter(const Snapshot& snap, double delta_local, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    auto lds = lds_set(pts, lt);
    Circle sec = smallest_enclosing_circle(pts, lt);

    std::optional<Point> partner;
    int ends = 0;
    for (const auto& s : lds) {
        if (at_origin(s.a, lt)) {
            partner = s.b;
            ++ends;
        } else if (at_origin(s.b, lt)) {
            partner = s.a;
            ++ends;
        }
    }
    if (ends != 1) return stay();  // only a single-endpoint moves

    Point dest = 2.0 * sec.center - *partner;  // antipode of the other endpoint
    if (at_origin(dest, lt)) return stay();
    Point next = arc_chord_step(sec, Point{0.0, 0.0}, dest, *partner, delta_local);
    return {std::nullopt, next};
}

ComputeOutput make_edge_on_border(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    auto lds = lds_set(pts, lt);
    Circle sec = smallest_enclosing_circle(pts, lt);
    double slack = lt.eps_rel * sec.radius + lt.eps_pos;

    if (std::abs(norm(sec.center) - sec.radius) <= slack) return stay();  // already on it
    for (const auto& s : lds) {
        Point other;
        if (at_origin(s.a, lt))
            other = s.b;
        else if (at_origin(s.b, lt))
            other = s.a;
        else
            continue;
        if (std::abs(distance(other, sec.center) - sec.radius) > slack) continue;
        auto hit = ray_circle_exit(other, Point{0.0, 0.0}, sec);
        if (hit) return {std::nullopt, *hit};
    }
    return stay();
}

ComputeOutput elect_lds_preserving_distance(const Snapshot& snap, double delta_local,
                                            double d_local, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    if (pts.size() <= 1) return stay();
    const double dd = d_local;

    auto lds = lds_set(pts, lt);
    if (lds.empty()) return stay();
    if (lds.size() == 1) {
        auto ax = *lds_axis(pts, lt);
        if (ax.own_at_endpoint) return stay();
        return {std::nullopt, ax.pn};
    }

    auto hull = convex_hull(pts, lt);
    Circle sec = smallest_enclosing_circle(pts, lt);
    const double diam = 2.0 * sec.radius;

    if (is_regular_polygon(hull, lt)) {
        bool own_vertex = false;
        for (const auto& v : hull)
            if (at_origin(v, lt)) own_vertex = true;
        if (!is_clean(pts, lt)) {
            if (!own_vertex) return {std::nullopt, sec.center};
            return stay();
        }
        if (diam <= dd * (1.0 + lt.eps_rel)) return {std::nullopt, sec.center};
        if (own_vertex) return {std::nullopt, point_along(sec.center, Point{0.0, 0.0}, dd / 2.0)};
        return stay();
    }

    if (diam <= dd * (1.0 + lt.eps_rel)) {
        if (auto p = after_rp(pts, lt)) return {std::nullopt, *p};
    }
    if (edge_on_border(pts, lt)) {
        bool has_diameter_lds = false;
        for (const auto& s : lds)
            if (s.length() >= diam * (1.0 - lt.eps_rel)) has_diameter_lds = true;
        auto is_endpoint = [&](const Point& p) {
            for (const auto& s : lds)
                if (coincident(p, s.a, lt.eps_pos) || coincident(p, s.b, lt.eps_pos)) return true;
            return false;
        };
        if (has_diameter_lds) {
            bool all_endpoints = true;
            for (const auto& p : pts)
                if (!is_endpoint(p) && !coincident(p, sec.center, lt.eps_pos))
                    all_endpoints = false;
            if (all_endpoints) return reduce_num_lds(snap, delta_local, tol);
            if (!is_endpoint(Point{0.0, 0.0})) return {std::nullopt, sec.center};
            return stay();
        }
        auto singles = single_endpoints(pts, lt);
        for (const auto& s : singles)
            if (at_origin(s, lt)) return make_diameter(snap, delta_local, tol);
        return stay();
    }
    return make_edge_on_border(snap, tol);
}

namespace {

bool rotationally_symmetric(const std::vector<Point>& hull, const Point& ctr,
                            const Tolerance& lt) {
    const std::size_t n = hull.size();
    if (n < 3) return false;
    for (std::size_t s = 1; s < n; ++s) {
        double delta = ccw_angle_between(angle_about(ctr, hull[0]), angle_about(ctr, hull[s]));
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            Point rotated = rotate_about(ctr, hull[j], delta);
            bool matched = false;
            for (std::size_t m = 0; m < n && !matched; ++m)
                if (coincident(rotated, hull[m], lt.eps_pos * 4.0 + lt.eps_rel * norm(rotated - ctr)))
                    matched = true;
            ok = matched;
        }
        if (ok) return true;
    }
    return false;
}

bool point_on_segment(const Point& p, const Point& a, const Point& b, const Tolerance& lt) {
    double len = distance(a, b);
    if (len <= lt.eps_pos) return coincident(p, a, lt.eps_pos);
    double dev = std::abs(cross(b - a, p - a)) / len;
    if (dev > lt.eps_rel * len + lt.eps_pos) return false;
    double t = dot(p - a, b - a) / (len * len);
    return t >= -lt.eps_rel && t <= 1.0 + lt.eps_rel;
}

}  // namespace

ComputeOutput elect_one_lds(const Snapshot& snap, bool cent_variant, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    if (pts.size() <= 1) return stay();
    if (collinear(pts, lt)) return stay();  // onLDS reached

    auto hull = convex_hull(pts, lt);
    Circle sec = smallest_enclosing_circle(pts, lt);
    const Point ctr = sec.center;
    const Point own{0.0, 0.0};
    const std::size_t n = hull.size();

    auto vertex_index = [&](const Point& p) -> int {
        for (std::size_t i = 0; i < n; ++i)
            if (coincident(p, hull[i], lt.eps_pos)) return static_cast<int>(i);
        return -1;
    };
    auto on_edge_index = [&](const Point& p) -> int {
        for (std::size_t i = 0; i < n; ++i)
            if (point_on_segment(p, hull[i], hull[(i + 1) % n], lt) &&
                !coincident(p, hull[i], lt.eps_pos) &&
                !coincident(p, hull[(i + 1) % n], lt.eps_pos))
                return static_cast<int>(i);
        return -1;
    };

    const bool symmetric = rotationally_symmetric(hull, ctr, lt);

    bool contractible;
    if (symmetric) {
        contractible = true;
        for (const auto& p : pts)
            if (vertex_index(p) < 0 && !coincident(p, ctr, lt.eps_pos)) contractible = false;
    } else {
        contractible = true;
        for (const auto& p : pts)
            if (vertex_index(p) < 0 && on_edge_index(p) < 0) contractible = false;
    }

    if (!contractible) {
        if (symmetric) {
            if (vertex_index(own) < 0) return {std::nullopt, ctr};
            return stay();
        }
        if (vertex_index(own) >= 0 || on_edge_index(own) >= 0) return stay();
        // strictly interior: head for the nearest vertex
        double best = std::numeric_limits<double>::infinity();
        for (const auto& v : hull) best = std::min(best, distance(own, v));
        std::vector<Point> tied;
        for (const auto& v : hull)
            if (distance(own, v) <= best * (1.0 + lt.eps_rel) + lt.eps_pos) tied.push_back(v);
        if (tied.size() == 1) return {std::nullopt, tied.front()};
        if (!cent_variant) {
            // chirality: smallest CCW angle from the direction toward the center
            Point ref = ctr - own;
            double best_ang = std::numeric_limits<double>::infinity();
            Point pick = tied.front();
            for (const auto& v : tied) {
                double ang = ccw_angle_between(std::atan2(ref.y, ref.x),
                                               std::atan2(v.y - own.y, v.x - own.x));
                if (ang < best_ang) {
                    best_ang = ang;
                    pick = v;
                }
            }
            return {std::nullopt, pick};
        }
        Point pick = tied.front();
        for (const auto& v : tied) {
            if (std::abs(distance(v, ctr) - distance(pick, ctr)) > lt.eps_pos) {
                if (distance(v, ctr) < distance(pick, ctr)) pick = v;
            } else if (lex_less(v, pick)) {
                pick = v;
            }
        }
        return {std::nullopt, pick};
    }

    if (symmetric) return {std::nullopt, ctr};

    // contractible, asymmetric: contract the shortest-length hull edges
    std::vector<double> elen(n);
    double emin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        elen[i] = distance(hull[i], hull[(i + 1) % n]);
        emin = std::min(emin, elen[i]);
    }
    auto shortest = [&](std::size_t i) { return elen[i] <= emin * (1.0 + lt.eps_rel); };

    int vi = vertex_index(own);
    if (!cent_variant) {
        if (vi >= 0 && shortest(static_cast<std::size_t>(vi)))
            return {std::nullopt, hull[(vi + 1) % n]};
        int ei = on_edge_index(own);
        if (ei >= 0 && shortest(static_cast<std::size_t>(ei)))
            return {std::nullopt, hull[(ei + 1) % n]};
        return stay();
    }

    // cent variant: no chirality, single mover per round, so direction is
    // picked by comparing the edge-length walks both ways.
    if (vi >= 0) {
        std::size_t prev = (static_cast<std::size_t>(vi) + n - 1) % n;
        bool fwd = shortest(static_cast<std::size_t>(vi));
        bool bwd = shortest(prev);
        if (fwd && !bwd) return {std::nullopt, hull[(vi + 1) % n]};
        if (bwd && !fwd) return {std::nullopt, hull[prev]};
        if (fwd && bwd) {
            for (std::size_t off = 1; off < n; ++off) {
                double a = elen[(vi + off) % n];
                double b = elen[(prev + n - off) % n];
                if (std::abs(a - b) > lt.eps_rel * std::max(a, b)) {
                    if (a < b) return {std::nullopt, hull[(vi + 1) % n]};
                    return {std::nullopt, hull[prev]};
                }
            }
            Point fw = hull[(vi + 1) % n], bw = hull[prev];
            return {std::nullopt, lex_less(fw, bw) ? fw : bw};
        }
        return stay();
    }
    int ei = on_edge_index(own);
    if (ei >= 0 && shortest(static_cast<std::size_t>(ei))) {
        Point a = hull[ei], b = hull[(ei + 1) % n];
        Point near = distance(own, a) <= distance(own, b) ? a : b;
        return {std::nullopt, near};
    }
    return stay();
}

ComputeOutput cent_ext_light_gather(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const ColorId kT = 0, kM = 1;
    const ColorMap cm = color_map(snap, lt, /*include_own=*/false);
    if (!cm.all.contains(kT)) return {kT, Point{0.0, 0.0}};
    auto pt = cm.with(snap, kT);
    if (pt.size() == 1) return {kM, pt.front()};
    return {kM, Point{0.0, 0.0}};
}

ComputeOutput cent_ext_light_gather_av(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const ColorId kT = 0, kM = 1;
    const ColorMap cm = color_map(snap, lt, /*include_own=*/false);
    if (!cm.all.contains(kT)) return {kT, Point{0.0, 0.0}};
    auto pt = cm.with(snap, kT);
    if (pt.size() == 1) return {kT, pt.front()};
    return {kM, Point{0.0, 0.0}};
}

ComputeOutput rr_int_light_gather(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    if (pts.size() <= 1) return stay();
    if (!snap.own_light) throw PreconditionViolation("rr-int-light-gather needs own light");
    auto ax = *lds_axis(pts, lt);
    const Point mid = midpoint(ax.pn, ax.pf);

    if (*snap.own_light == kA) {
        if (pts.size() == 2 || symmetric_three(pts, ax, lt)) return {kB, mid};
        return {std::nullopt, ax.pn};
    }
    if (pts.size() == 2) return {std::nullopt, ax.pf};
    return {std::nullopt, mid};
}

ComputeOutput onlds_reduction_step(const Snapshot& snap, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    const auto pts = snap.points();
    if (pts.size() <= 1) return stay();
    auto ax = *lds_axis(pts, lt);
    const Point mid = midpoint(ax.pn, ax.pf);
    const Point own{0.0, 0.0};

    double de = std::min(distance(own, ax.pn), distance(own, ax.pf));
    double dm = distance(own, mid);
    Point target;
    if (dm <= de * (1.0 + lt.eps_rel) + lt.eps_pos)
        target = mid;  // quarter-point ties go to the midpoint
    else
        target = distance(own, ax.pn) <= distance(own, ax.pf) ? ax.pn : ax.pf;
    if (coincident(own, target, lt.eps_pos)) return stay();
    return {std::nullopt, target};
}

PipelinePhase pipeline_route(const std::vector<Point>& points, double d_param,
                             const Tolerance& tol) {
    auto pts = dedup_points(points, tol);
    if (pts.size() <= 1) return PipelinePhase::Done;
    double d = lds_length(pts, tol);
    if (pts.size() == 2 && d < d_param / 2.0) return PipelinePhase::Gather4;
    if (pts.size() == 3 && d < d_param / 2.0) {
        auto ax = lds_axis(pts, tol);
        if (ax && collinear(pts, tol)) {
            auto ordered = pts;
            Point dir = ax->pf - ax->pn;
            std::sort(ordered.begin(), ordered.end(), [&](const Point& a, const Point& b) {
                return dot(a - ax->pn, dir) < dot(b - ax->pn, dir);
            });
            if (coincident(ordered[1], midpoint(ordered[0], ordered[2]), tol.eps_pos))
                return PipelinePhase::Gather4;
        }
    }
    if (pts.size() == 2 && d >= d_param / 2.0) return PipelinePhase::Reduce5;
    if (a3p_shape(pts, d_param, tol) || a4p_shape(pts, d_param, tol)) return PipelinePhase::Reduce5;
    return PipelinePhase::Elect6;
}

ComputeOutput internal_pipeline_dispatch(const Snapshot& snap, double delta_local,
                                         double d_local, const Tolerance& tol) {
    const Tolerance lt = local_tol(snap, tol);
    switch (pipeline_route(snap.points(), d_local, lt)) {
        case PipelinePhase::Done: return stay();
        case PipelinePhase::Gather4: return int_light_gather(snap, d_local, tol);
        case PipelinePhase::Reduce5: return reduce_distance_lds(snap, d_local, tol);
        case PipelinePhase::Elect6:
            return elect_lds_preserving_distance(snap, delta_local, d_local, tol);
    }
    return stay();
}

// ---------------------------------------------------------------------------
// Registry

namespace {

bool all_lights_are(const Configuration& c, ColorId color) {
    for (const auto& r : c.robots)
        if (r.light != color) return false;
    return true;
}

bool collinear_config(const Configuration& c, const Tolerance& tol) {
    return collinear(c.positions(), tol);
}

bool distinct_positions(const Configuration& c, const Tolerance& tol) {
    return dedup_points(c.positions(), tol).size() == c.robots.size();
}

bool d_distant(const Configuration& c, double d_param, const Tolerance& tol) {
    auto pts = dedup_points(c.positions(), tol);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (distance(pts[i], pts[j]) < d_param * (1.0 - tol.eps_rel)) return false;
    return true;
}

bool ext_input_shape(const Configuration& c, const Tolerance& tol) {
    // onLDS is enough: the composed compute reduces it to the 2/3-point shape
    return all_lights_are(c, kA) && collinear_config(c, tol);
}

std::vector<AlgorithmSpec> build_registry() {
    std::vector<AlgorithmSpec> specs;

    {
        AlgorithmSpec s;
        s.name = "full-light-gather";
        s.palette_size = 2;
        s.color_names = {"A", "B"};
        s.policy = {LightModel::Full, ViewKind::SetView, false, true};
        s.schedulers = {SchedulerKind::SSync, SchedulerKind::FSync, SchedulerKind::Cent,
                        SchedulerKind::KBounded, SchedulerKind::RoundRobin};
        s.init_kind = "onLDS";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            const Tolerance lt = local_tol(snap, tol);
            if (collinear(snap.points(), lt)) return full_light_gather(snap, tol);
            return elect_one_lds(snap, false, tol);
        };
        s.input_ok = [](const Configuration& c, double, const Tolerance&) {
            return all_lights_are(c, kA);
        };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "ext-light-gather-3";
        s.palette_size = 3;
        s.color_names = {"A", "B", "C"};
        s.policy = {LightModel::External, ViewKind::SetView, false, true};
        s.needs_rigid = true;
        s.schedulers = {SchedulerKind::SSync, SchedulerKind::FSync, SchedulerKind::Cent,
                        SchedulerKind::KBounded, SchedulerKind::RoundRobin};
        s.init_kind = "onLDS";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            const Tolerance lt = local_tol(snap, tol);
            if (snap.points().size() <= 1) return stay();
            if (ext_shape(snap, lt)) return ext_light_gather_3(snap, tol);
            if (collinear(snap.points(), lt)) return onlds_reduction_step(snap, tol);
            return elect_one_lds(snap, false, tol);
        };
        s.input_ok = [](const Configuration& c, double, const Tolerance& tol) {
            return ext_input_shape(c, tol);
        };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "ext-light-gather-2";
        s.palette_size = 2;
        s.color_names = {"A", "B"};
        s.policy = {LightModel::External, ViewKind::SetView, true, true};
        s.needs_rigid = true;
        s.schedulers = {SchedulerKind::SSync, SchedulerKind::FSync, SchedulerKind::Cent,
                        SchedulerKind::KBounded, SchedulerKind::RoundRobin};
        s.init_kind = "onLDS";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            const Tolerance lt = local_tol(snap, tol);
            if (snap.points().size() <= 1) return stay();
            if (ext_shape(snap, lt)) return ext_light_gather_2(snap, tol);
            if (collinear(snap.points(), lt)) return onlds_reduction_step(snap, tol);
            return elect_one_lds(snap, false, tol);
        };
        s.input_ok = [](const Configuration& c, double, const Tolerance& tol) {
            return ext_input_shape(c, tol);
        };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "int-light-pipeline";
        s.palette_size = 2;
        s.color_names = {"A", "B"};
        s.policy = {LightModel::Internal, ViewKind::SetView, false, true};
        s.needs_delta_known = true;
        s.needs_distance_param = true;
        s.schedulers = {SchedulerKind::SSync, SchedulerKind::FSync, SchedulerKind::Cent,
                        SchedulerKind::KBounded, SchedulerKind::RoundRobin};
        s.init_kind = "d-distant";
        s.compute = [](const Snapshot& snap, double delta_local, double d_local,
                       const Tolerance& tol) {
            return internal_pipeline_dispatch(snap, delta_local, d_local, tol);
        };
        s.input_ok = [](const Configuration& c, double d_param, const Tolerance& tol) {
            return all_lights_are(c, kA) && d_distant(c, d_param, tol);
        };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "int-light-gather";
        s.palette_size = 2;
        s.color_names = {"A", "B"};
        s.policy = {LightModel::Internal, ViewKind::SetView, false, true};
        s.needs_delta_known = true;
        s.needs_distance_param = true;
        s.schedulers = {SchedulerKind::SSync, SchedulerKind::FSync, SchedulerKind::Cent,
                        SchedulerKind::KBounded, SchedulerKind::RoundRobin};
        s.init_kind = "two-point-close";
        s.compute = [](const Snapshot& snap, double, double d_local, const Tolerance& tol) {
            return int_light_gather(snap, d_local, tol);
        };
        s.input_ok = [](const Configuration& c, double d_param, const Tolerance& tol) {
            auto pts = dedup_points(c.positions(), tol);
            double d = lds_length(pts, tol);
            return all_lights_are(c, kA) && pts.size() == 2 && d >= d_param / 4.0 &&
                   d < d_param / 2.0;
        };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "cent-ext-light-gather";
        s.palette_size = 2;
        s.color_names = {"T", "M"};
        s.policy = {LightModel::External, ViewKind::SetView, false, false};
        s.schedulers = {SchedulerKind::Cent, SchedulerKind::RoundRobin};
        s.init_kind = "arbitrary";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            return cent_ext_light_gather(snap, tol);
        };
        s.input_ok = [](const Configuration&, double, const Tolerance&) { return true; };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "cent-ext-light-gather-av";
        s.palette_size = 2;
        s.color_names = {"T", "M"};
        s.policy = {LightModel::External, ViewKind::ArbitraryView, false, false};
        s.needs_rigid = true;
        s.schedulers = {SchedulerKind::Cent, SchedulerKind::RoundRobin};
        s.init_kind = "distinct";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            return cent_ext_light_gather_av(snap, tol);
        };
        s.input_ok = [](const Configuration& c, double, const Tolerance& tol) {
            return distinct_positions(c, tol);
        };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "rr-int-light-gather";
        s.palette_size = 2;
        s.color_names = {"A", "B"};
        s.policy = {LightModel::Internal, ViewKind::SetView, false, false};
        s.needs_rigid = true;
        s.schedulers = {SchedulerKind::RoundRobin};
        s.init_kind = "onLDS";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            const Tolerance lt = local_tol(snap, tol);
            if (collinear(snap.points(), lt)) return rr_int_light_gather(snap, tol);
            return elect_one_lds(snap, true, tol);
        };
        s.input_ok = [](const Configuration& c, double, const Tolerance&) {
            return all_lights_are(c, kA);
        };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "elect-one-lds";
        s.palette_size = 1;
        s.color_names = {"A"};
        s.policy = {LightModel::None, ViewKind::SetView, false, true};
        s.schedulers = {SchedulerKind::SSync, SchedulerKind::FSync, SchedulerKind::Cent,
                        SchedulerKind::KBounded, SchedulerKind::RoundRobin};
        s.init_kind = "arbitrary";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            return elect_one_lds(snap, false, tol);
        };
        s.input_ok = [](const Configuration&, double, const Tolerance&) { return true; };
        specs.push_back(s);
    }
    {
        AlgorithmSpec s;
        s.name = "elect-one-lds-cent";
        s.palette_size = 1;
        s.color_names = {"A"};
        s.policy = {LightModel::None, ViewKind::SetView, false, false};
        s.schedulers = {SchedulerKind::Cent, SchedulerKind::RoundRobin};
        s.init_kind = "arbitrary";
        s.compute = [](const Snapshot& snap, double, double, const Tolerance& tol) {
            return elect_one_lds(snap, true, tol);
        };
        s.input_ok = [](const Configuration&, double, const Tolerance&) { return true; };
        specs.push_back(s);
    }
    return specs;
}

const std::vector<AlgorithmSpec>& registry() {
    static const std::vector<AlgorithmSpec> specs = build_registry();
    return specs;
}

}  // namespace

bool AlgorithmSpec::allows_scheduler(SchedulerKind k) const {
    for (auto s : schedulers)
        if (s == k) return true;
    return false;
}

const AlgorithmSpec& algorithm_by_name(const std::string& name) {
    for (const auto& s : registry())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<std::string> algorithm_names() {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
}

}  // namespace gathersim
