#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace gathersim {

struct Tolerance {
    double eps_pos = 1e-9;  // absolute coincidence threshold (world units)
    double eps_rel = 1e-9;  // relative threshold for length/angle comparison
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& p);
bool operator==(const Point& a, const Point& b);
bool lex_less(const Point& a, const Point& b);

double dot(const Point& a, const Point& b);
double cross(const Point& a, const Point& b);
double norm(const Point& p);
double distance(const Point& a, const Point& b);
Point midpoint(const Point& a, const Point& b);

/// True when |a-b| <= eps.
bool coincident(const Point& a, const Point& b, double eps);

struct Circle {
    Point center;
    double radius = 0.0;
};

/// Unordered pair of distinct points.
struct SegmentPair {
    Point a;
    Point b;
    double length() const { return distance(a, b); }
};

/// Convex hull of a point set, counter-clockwise vertex order.
/// Coincident input points (within tol.eps_pos) collapse to one: a single
/// cluster yields 1 vertex and a collinear set yields its 2 extremes.
std::vector<Point> convex_hull(const std::vector<Point>& points, const Tolerance& tol);

/// Smallest enclosing circle (randomized incremental, deterministic order).
Circle smallest_enclosing_circle(const std::vector<Point>& points, const Tolerance& tol);

/// All point pairs realizing the maximum pairwise distance, up to
/// tol.eps_rel relative slack. Empty result means every point coincides
/// (degenerate: callers treat that as gathered).
std::vector<SegmentPair> lds_set(const std::vector<Point>& points, const Tolerance& tol);

/// Length of the longest distance segment; 0 for a degenerate set.
double lds_length(const std::vector<Point>& points, const Tolerance& tol);

/// Vertices that are an endpoint of exactly one segment in lds_set.
std::vector<Point> single_endpoints(const std::vector<Point>& points, const Tolerance& tol);

/// Equal edge lengths and equal interior angles, both within tol.eps_rel.
/// A 2-vertex hull counts as a regular 2-polygon.
bool is_regular_polygon(const std::vector<Point>& hull, const Tolerance& tol);

/// Every endpoint of every LDS lies on the smallest enclosing circle.
bool edge_on_border(const std::vector<Point>& points, const Tolerance& tol);

/// Every point sits at the SEC center or on the SEC itself.
bool is_clean(const std::vector<Point>& points, const Tolerance& tol);

/// The unique occupied point p such that every other point is equidistant
/// from p (one common radius). Empty when no candidate or more than one.
std::optional<Point> after_rp(const std::vector<Point>& points, const Tolerance& tol);

/// All points within eps of the straight line through the two extremes.
bool collinear(const std::vector<Point>& points, const Tolerance& tol);

/// Cluster points by tol.eps_pos; representatives keep first-seen order.
std::vector<Point> dedup_points(const std::vector<Point>& points, const Tolerance& tol);

/// Point at distance len from a toward b (a != b).
Point point_along(const Point& a, const Point& b, double len);

/// Rotate p about c by angle (radians, CCW positive).
Point rotate_about(const Point& c, const Point& p, double angle);

/// Intersection of the ray origin->through (extended beyond `through`) with
/// the circle; the solution on the far side of `through` from origin.
std::optional<Point> ray_circle_exit(const Point& origin, const Point& through, const Circle& c);

}  // namespace gathersim
