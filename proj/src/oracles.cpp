#include "gathersim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace gathersim::oracle {

namespace {

std::optional<Circle> circumcircle(const Point& a, const Point& b, const Point& c) {
    double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (d == 0.0) return std::nullopt;
    double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
    Point ctr{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
              (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    return Circle{ctr, distance(ctr, a)};
}

bool encloses_all(const Circle& c, const std::vector<Point>& pts, double slack) {
    for (const auto& p : pts)
        if (distance(p, c.center) > c.radius + slack) return false;
    return true;
}

}  // namespace

Circle brute_force_sec(const std::vector<Point>& points, const Tolerance& tol) {
    const double slack = tol.eps_pos;
    Circle best{points.front(), 0.0};
    bool have = encloses_all(best, points, slack);
    auto consider = [&](const Circle& c) {
        if (!encloses_all(c, points, slack)) return;
        if (!have || c.radius < best.radius) {
            best = c;
            have = true;
        }
    };
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            consider({midpoint(points[i], points[j]), distance(points[i], points[j]) / 2.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (auto c = circumcircle(points[i], points[j], points[k])) consider(*c);
    return best;
}

namespace {

/// p inside (or on) the convex hull of pts, by exhaustive separating-line
/// search; collinear pts degrade to a segment-membership test.
bool point_in_hull_of(const Point& p, const std::vector<Point>& pts, const Tolerance& tol) {
    if (pts.empty()) return false;
    if (pts.size() == 1) return coincident(p, pts.front(), tol.eps_pos);

    bool spans_plane = false;
    for (std::size_t a = 0; a < pts.size() && !spans_plane; ++a)
        for (std::size_t b = a + 1; b < pts.size() && !spans_plane; ++b)
            for (std::size_t c = b + 1; c < pts.size() && !spans_plane; ++c) {
                Point u = pts[b] - pts[a], v = pts[c] - pts[a];
                if (std::abs(cross(u, v)) > tol.eps_rel * norm(u) * norm(v) + tol.eps_pos)
                    spans_plane = true;
            }
    if (!spans_plane) {
        // pts lie on one segment: p must sit on it between the extremes
        double best = -1.0;
        Point ea, eb;
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b)
                if (distance(pts[a], pts[b]) > best) {
                    best = distance(pts[a], pts[b]);
                    ea = pts[a];
                    eb = pts[b];
                }
        if (best <= tol.eps_pos) return coincident(p, ea, tol.eps_pos);
        double dev = std::abs(cross(eb - ea, p - ea)) / best;
        if (dev > tol.eps_rel * best + tol.eps_pos) return false;
        double t = dot(p - ea, eb - ea) / (best * best);
        return t >= -tol.eps_rel && t <= 1.0 + tol.eps_rel;
    }

    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = 0; b < pts.size(); ++b) {
            if (a == b) continue;
            Point u = pts[b] - pts[a];
            double len = norm(u);
            if (len == 0.0) continue;
            double margin = tol.eps_rel * len + tol.eps_pos;
            double side_p = cross(u, p - pts[a]) / len;
            if (side_p >= -margin) continue;  // candidate separators keep p below
            bool separates = true;
            for (const auto& q : pts)
                if (cross(u, q - pts[a]) / len < -margin) {
                    separates = false;
                    break;
                }
            if (separates) return false;
        }
    return true;
}

}  // namespace

std::vector<Point> brute_force_hull(const std::vector<Point>& points, const Tolerance& tol) {
    auto pts = dedup_points(points, tol);
    if (pts.size() <= 2) return pts;
    std::vector<Point> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Point> others;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!point_in_hull_of(pts[i], others, tol)) out.push_back(pts[i]);
    }
    return out;
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d,
                        double eps) {
    auto orient = [eps](const Point& p, const Point& q, const Point& r) {
        double v = cross(q - p, r - p);
        double s = norm(q - p) * norm(r - p);
        if (std::abs(v) <= eps * s) return 0;
        return v > 0 ? 1 : -1;
    };
    auto on_seg = [eps](const Point& p, const Point& q, const Point& r) {
        return std::min(p.x, q.x) - eps <= r.x && r.x <= std::max(p.x, q.x) + eps &&
               std::min(p.y, q.y) - eps <= r.y && r.y <= std::max(p.y, q.y) + eps;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_seg(a, b, c)) return true;
    if (o2 == 0 && on_seg(a, b, d)) return true;
    if (o3 == 0 && on_seg(c, d, a)) return true;
    if (o4 == 0 && on_seg(c, d, b)) return true;
    return false;
}

namespace {

std::vector<Point> random_case(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> npick(2, 12);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    std::uniform_int_distribution<int> shape(0, 9);
    const int n = npick(rng);
    std::vector<Point> pts;
    switch (shape(rng)) {
        case 0: {  // regular polygon, exercises tied LDS lengths
            int f = std::max(3, n);
            double r = std::uniform_real_distribution<double>(5.0, 80.0)(rng);
            double phi = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
            Point c{coord(rng) / 2.0, coord(rng) / 2.0};
            for (int i = 0; i < f; ++i) {
                double a = phi + 2.0 * std::numbers::pi * i / f;
                pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
            }
            break;
        }
        case 1: {  // collinear
            Point o{coord(rng), coord(rng)};
            double a = std::uniform_real_distribution<double>(0.0, 6.28)(rng);
            Point u{std::cos(a), std::sin(a)};
            for (int i = 0; i < n; ++i) {
                double t = std::uniform_real_distribution<double>(0.0, 100.0)(rng);
                pts.push_back(o + t * u);
            }
            break;
        }
        case 2: {  // square plus its center
            double r = std::uniform_real_distribution<double>(5.0, 50.0)(rng);
            Point c{coord(rng) / 2.0, coord(rng) / 2.0};
            pts = {{c.x + r, c.y + r}, {c.x - r, c.y + r}, {c.x - r, c.y - r},
                   {c.x + r, c.y - r}, c};
            break;
        }
        default:
            for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    }
    return pts;
}

}  // namespace

SelfTestReport geometry_selftest(int cases, std::uint64_t seed, const Tolerance& tol,
                                 bool inject_fault) {
    SelfTestReport report;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < cases; ++t) {
        ++report.cases;
        auto pts = random_case(rng);
        std::ostringstream fail;

        Circle sec = smallest_enclosing_circle(pts, tol);
        if (inject_fault) sec.radius -= 10.0 * 1e-7;
        Circle ref = brute_force_sec(pts, tol);
        if (distance(sec.center, ref.center) > 1e-7 ||
            std::abs(sec.radius - ref.radius) > 1e-7 * std::max(1.0, ref.radius))
            fail << "SEC mismatch vs brute force; ";

        auto hull = convex_hull(pts, tol);
        auto ref_hull = brute_force_hull(pts, tol);
        auto match = [&](const std::vector<Point>& xs, const std::vector<Point>& ys) {
            if (xs.size() != ys.size()) return false;
            for (const auto& x : xs) {
                bool found = false;
                for (const auto& y : ys)
                    if (coincident(x, y, tol.eps_pos)) found = true;
                if (!found) return false;
            }
            return true;
        };
        if (dedup_points(pts, tol).size() > 2 && !match(hull, ref_hull))
            fail << "hull vertex set differs from extreme-point oracle; ";

        auto lds = lds_set(pts, tol);
        double diam = 2.0 * sec.radius;
        for (const auto& s : lds) {
            if (s.length() > diam * (1.0 + tol.eps_rel) + tol.eps_pos)
                fail << "LDS longer than the SEC diameter; ";
            bool a_ok = false, b_ok = false;
            for (const auto& v : hull) {
                if (coincident(v, s.a, tol.eps_pos)) a_ok = true;
                if (coincident(v, s.b, tol.eps_pos)) b_ok = true;
            }
            if (!a_ok || !b_ok) fail << "LDS endpoint not a hull vertex; ";
        }

        if (!lds.empty() && edge_on_border(pts, tol)) {
            auto reps = dedup_points(pts, tol);
            for (const auto& p : reps) {
                int deg = 0;
                for (const auto& s : lds)
                    if (coincident(p, s.a, tol.eps_pos) || coincident(p, s.b, tol.eps_pos)) ++deg;
                if (deg > 2) fail << "point is an endpoint of more than two LDSs; ";
            }
            for (const auto& s : lds)
                if (s.length() <= diam / 2.0 - tol.eps_pos - tol.eps_rel * diam)
                    fail << "LDS not longer than half the diameter; ";
            if (!is_regular_polygon(hull, tol) && single_endpoints(pts, tol).empty())
                fail << "no single-endpoint despite a non-regular hull; ";
        }

        for (std::size_t i = 0; i < lds.size(); ++i)
            for (std::size_t j = i + 1; j < lds.size(); ++j) {
                const auto &s = lds[i], &r = lds[j];
                bool disjoint = !coincident(s.a, r.a, tol.eps_pos) &&
                                !coincident(s.a, r.b, tol.eps_pos) &&
                                !coincident(s.b, r.a, tol.eps_pos) &&
                                !coincident(s.b, r.b, tol.eps_pos);
                if (disjoint && !segments_intersect(s.a, s.b, r.a, r.b, tol.eps_rel * 100.0))
                    fail << "vertex-disjoint LDS pair without intersection; ";
            }

        if (!fail.str().empty()) {
            ++report.failures;
            if (report.messages.size() < 25) {
                std::ostringstream msg;
                msg << "case " << t << ": " << fail.str();
                report.messages.push_back(msg.str());
            }
        }
    }
    return report;
}

}  // namespace gathersim::oracle
