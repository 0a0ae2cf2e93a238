#include "gathersim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace gathersim {

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(double s, const Point& p) { return {s * p.x, s * p.y}; }
bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

bool lex_less(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
double norm(const Point& p) { return std::hypot(p.x, p.y); }
double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }
Point midpoint(const Point& a, const Point& b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

bool coincident(const Point& a, const Point& b, double eps) {
    return distance(a, b) <= eps;
}

std::vector<Point> dedup_points(const std::vector<Point>& points, const Tolerance& tol) {
    std::vector<Point> out;
    for (const auto& p : points) {
        bool seen = false;
        for (const auto& q : out) {
            if (coincident(p, q, tol.eps_pos)) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(p);
    }
    return out;
}

Point point_along(const Point& a, const Point& b, double len) {
    double d = distance(a, b);
    if (d == 0.0) return a;
    return a + (len / d) * (b - a);
}

Point rotate_about(const Point& c, const Point& p, double angle) {
    double ca = std::cos(angle), sa = std::sin(angle);
    Point v = p - c;
    return {c.x + ca * v.x - sa * v.y, c.y + sa * v.x + ca * v.y};
}

std::optional<Point> ray_circle_exit(const Point& origin, const Point& through, const Circle& c) {
    Point d = through - origin;
    double dn = norm(d);
    if (dn == 0.0) return std::nullopt;
    d = (1.0 / dn) * d;
    Point f = origin - c.center;
    // |f + t d|^2 = r^2
    double b = dot(f, d);
    double disc = b * b - (dot(f, f) - c.radius * c.radius);
    if (disc < 0.0) return std::nullopt;
    double t = -b + std::sqrt(disc);
    if (t < 0.0) return std::nullopt;
    return origin + t * d;
}

namespace {

// Orientation of c relative to segment a->b, with a threshold scaled by the
// segment lengths so the test is invariant under uniform scaling.
int orientation(const Point& a, const Point& b, const Point& c, double eps_rel) {
    Point u = b - a, v = c - a;
    double cr = cross(u, v);
    double scale = norm(u) * norm(v);
    if (std::abs(cr) <= eps_rel * scale) return 0;
    return cr > 0 ? 1 : -1;
}

}  // namespace

std::vector<Point> convex_hull(const std::vector<Point>& points, const Tolerance& tol) {
    if (points.empty()) throw std::invalid_argument("convex_hull: empty input");
    std::vector<Point> pts = dedup_points(points, tol);
    if (pts.size() == 1) return pts;

    std::sort(pts.begin(), pts.end(), lex_less);
    if (pts.size() == 2) return pts;

    // Monotone chain. Collinear points are dropped so vertices are extreme.
    auto build = [&](auto begin, auto end) {
        std::vector<Point> chain;
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   orientation(chain[chain.size() - 2], chain.back(), *it, tol.eps_rel) <= 0)
                chain.pop_back();
            chain.push_back(*it);
        }
        return chain;
    };
    std::vector<Point> lower = build(pts.begin(), pts.end());
    std::vector<Point> upper = build(pts.rbegin(), pts.rend());

    if (lower.size() == 2 && upper.size() == 2) return {lower[0], lower[1]};  // all collinear

    std::vector<Point> hull(lower.begin(), lower.end() - 1);
    hull.insert(hull.end(), upper.begin(), upper.end() - 1);
    return hull;
}

namespace {

Circle circle_from2(const Point& a, const Point& b) {
    return {midpoint(a, b), distance(a, b) / 2.0};
}

std::optional<Circle> circle_from3(const Point& a, const Point& b, const Point& c) {
    double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (d == 0.0) return std::nullopt;
    double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
    Point ctr{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
              (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    return Circle{ctr, distance(ctr, a)};
}

bool in_circle(const Point& p, const Circle& c, double slack) {
    return distance(p, c.center) <= c.radius + slack;
}

}  // namespace

Circle smallest_enclosing_circle(const std::vector<Point>& points, const Tolerance& tol) {
    if (points.empty()) throw std::invalid_argument("smallest_enclosing_circle: empty input");
    std::vector<Point> pts = points;
    // Fixed-seed shuffle keeps the expected-linear behaviour of the
    // incremental scan while staying deterministic for identical inputs.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::shuffle(pts.begin(), pts.end(), rng);

    double slack = tol.eps_pos;
    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (in_circle(pts[i], c, slack)) continue;
        c = Circle{pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (in_circle(pts[j], c, slack)) continue;
            c = circle_from2(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (in_circle(pts[k], c, slack)) continue;
                auto c3 = circle_from3(pts[i], pts[j], pts[k]);
                if (c3) c = *c3;
            }
        }
    }
    return c;
}

std::vector<SegmentPair> lds_set(const std::vector<Point>& points, const Tolerance& tol) {
    std::vector<Point> pts = dedup_points(points, tol);
    std::vector<SegmentPair> out;
    if (pts.size() < 2) return out;

    double dmax = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            dmax = std::max(dmax, distance(pts[i], pts[j]));
    if (dmax <= tol.eps_pos) return out;

    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (distance(pts[i], pts[j]) >= dmax * (1.0 - tol.eps_rel))
                out.push_back({pts[i], pts[j]});
    return out;
}

double lds_length(const std::vector<Point>& points, const Tolerance& tol) {
    auto lds = lds_set(points, tol);
    if (lds.empty()) return 0.0;
    return lds.front().length();
}

std::vector<Point> single_endpoints(const std::vector<Point>& points, const Tolerance& tol) {
    auto lds = lds_set(points, tol);
    std::vector<Point> pts = dedup_points(points, tol);
    std::vector<Point> out;
    for (const auto& p : pts) {
        int count = 0;
        for (const auto& s : lds) {
            if (coincident(p, s.a, tol.eps_pos) || coincident(p, s.b, tol.eps_pos)) ++count;
        }
        if (count == 1) out.push_back(p);
    }
    return out;
}

bool is_regular_polygon(const std::vector<Point>& hull, const Tolerance& tol) {
    if (hull.size() < 2) return false;
    if (hull.size() == 2) return true;

    const std::size_t n = hull.size();
    double ref = distance(hull[0], hull[1]);
    if (ref <= tol.eps_pos) return false;
    for (std::size_t i = 0; i < n; ++i) {
        double e = distance(hull[i], hull[(i + 1) % n]);
        if (std::abs(e - ref) > tol.eps_rel * ref) return false;
    }
    // Equal sides alone admit a rhombus; compare the turn angle at each vertex.
    double ref_angle = -2.0;
    for (std::size_t i = 0; i < n; ++i) {
        Point u = hull[(i + 1) % n] - hull[i];
        Point v = hull[(i + 2) % n] - hull[(i + 1) % n];
        double ca = dot(u, v) / (norm(u) * norm(v));
        if (ref_angle < -1.5)
            ref_angle = ca;
        else if (std::abs(ca - ref_angle) > tol.eps_rel * 10.0)
            return false;
    }
    return true;
}

bool edge_on_border(const std::vector<Point>& points, const Tolerance& tol) {
    auto lds = lds_set(points, tol);
    if (lds.empty()) return true;
    Circle sec = smallest_enclosing_circle(points, tol);
    double slack = tol.eps_rel * sec.radius + tol.eps_pos;
    for (const auto& s : lds) {
        if (std::abs(distance(s.a, sec.center) - sec.radius) > slack) return false;
        if (std::abs(distance(s.b, sec.center) - sec.radius) > slack) return false;
    }
    return true;
}

bool is_clean(const std::vector<Point>& points, const Tolerance& tol) {
    Circle sec = smallest_enclosing_circle(points, tol);
    double slack = tol.eps_rel * sec.radius + tol.eps_pos;
    for (const auto& p : dedup_points(points, tol)) {
        double d = distance(p, sec.center);
        if (d <= slack) continue;                       // at the center
        if (std::abs(d - sec.radius) <= slack) continue;  // on the circle
        return false;
    }
    return true;
}

std::optional<Point> after_rp(const std::vector<Point>& points, const Tolerance& tol) {
    std::vector<Point> pts = dedup_points(points, tol);
    if (pts.size() < 2) return std::nullopt;
    std::optional<Point> found;
    for (const auto& cand : pts) {
        double radius = -1.0;
        bool ok = true;
        for (const auto& q : pts) {
            if (coincident(q, cand, tol.eps_pos)) continue;
            double d = distance(q, cand);
            if (radius < 0.0)
                radius = d;
            else if (std::abs(d - radius) > tol.eps_rel * radius + tol.eps_pos) {
                ok = false;
                break;
            }
        }
        if (!ok || radius <= tol.eps_pos) continue;
        if (found) return std::nullopt;  // not unique
        found = cand;
    }
    return found;
}

bool collinear(const std::vector<Point>& points, const Tolerance& tol) {
    std::vector<Point> pts = dedup_points(points, tol);
    if (pts.size() <= 2) return true;
    auto lds = lds_set(pts, tol);
    if (lds.empty()) return true;
    const Point a = lds.front().a, b = lds.front().b;
    double len = distance(a, b);
    for (const auto& p : pts) {
        double dev = std::abs(cross(b - a, p - a)) / len;
        if (dev > tol.eps_rel * len + tol.eps_pos) return false;
    }
    return true;
}

}  // namespace gathersim
