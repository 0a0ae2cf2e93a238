#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gathersim/geometry.hpp"
#include "gathersim/oracles.hpp"

using namespace gathersim;

namespace {

const Tolerance tol;

bool same_point_set(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.size() != b.size()) return false;
    for (const auto& p : a) {
        bool found = false;
        for (const auto& q : b)
            if (coincident(p, q, tol.eps_pos)) found = true;
        if (!found) return false;
    }
    return true;
}

std::vector<Point> random_points(std::mt19937_64& rng, int n, double span = 100.0) {
    std::uniform_real_distribution<double> c(-span, span);
    std::vector<Point> out;
    for (int i = 0; i < n; ++i) out.push_back({c(rng), c(rng)});
    return out;
}

}  // namespace

TEST_CASE("midpoint and distance basics") {
    CHECK(midpoint({0, 0}, {2, 0}) == Point{1, 0});
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(distance({3, 4}, {0, 0}) == doctest::Approx(5.0));
    Point p{1.5, -2.25};
    CHECK(midpoint(p, p) == p);
}

TEST_CASE("convex hull drops interior and collinear points") {
    std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    auto hull = convex_hull(square, tol);
    CHECK(hull.size() == 4);
    CHECK(same_point_set(hull, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));

    auto line = convex_hull({{0, 0}, {0.4, 0}, {1, 0}}, tol);
    CHECK(line.size() == 2);
    CHECK(same_point_set(line, {{0, 0}, {1, 0}}));

    auto one = convex_hull({{2, 2}, {2, 2}, {2, 2}}, tol);
    CHECK(one.size() == 1);
}

TEST_CASE("convex hull is counter-clockwise") {
    auto hull = convex_hull({{0, 0}, {4, 0}, {4, 3}, {0, 3}, {2, 1}}, tol);
    REQUIRE(hull.size() == 4);
    double area2 = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        area2 += cross(hull[i], hull[(i + 1) % hull.size()]);
    CHECK(area2 > 0.0);
}

TEST_CASE("convex hull matches the extreme-point oracle on random sets") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        auto pts = random_points(rng, 8);
        auto hull = convex_hull(pts, tol);
        auto ref = oracle::brute_force_hull(pts, tol);
        CHECK(same_point_set(hull, ref));
    }
}

TEST_CASE("smallest enclosing circle closed forms") {
    // equilateral triangle with side 1: circumradius 1/sqrt(3)
    std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
    auto sec = smallest_enclosing_circle(tri, tol);
    CHECK(sec.radius == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(sec.center.x == doctest::Approx(0.5));
    CHECK(sec.center.y == doctest::Approx(0.5 / std::sqrt(3.0)));

    auto two = smallest_enclosing_circle({{0, 0}, {6, 0}}, tol);
    CHECK(two.radius == doctest::Approx(3.0));
    CHECK(two.center.x == doctest::Approx(3.0));
}

TEST_CASE("smallest enclosing circle matches the pairs-and-triples oracle") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto pts = random_points(rng, n);
        auto sec = smallest_enclosing_circle(pts, tol);
        auto ref = oracle::brute_force_sec(pts, tol);
        CHECK(distance(sec.center, ref.center) < 1e-7);
        CHECK(sec.radius == doctest::Approx(ref.radius).epsilon(1e-7));
        for (const auto& p : pts) CHECK(distance(p, sec.center) <= sec.radius + tol.eps_pos);
    }
}

TEST_CASE("lds_set finds all maximum-distance pairs") {
    std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto lds = lds_set(square, tol);
    CHECK(lds.size() == 2);  // both diagonals

    std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
    CHECK(lds_set(tri, tol).size() == 3);

    auto line = lds_set({{0, 0}, {0.4, 0}, {1, 0}}, tol);
    REQUIRE(line.size() == 1);
    CHECK(line.front().length() == doctest::Approx(1.0));

    CHECK(lds_set({{2, 2}, {2, 2}}, tol).empty());  // degenerate: gathered
}

TEST_CASE("single endpoints by LDS degree") {
    std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
    CHECK(single_endpoints(tri, tol).empty());  // every vertex ends two LDSs

    std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(single_endpoints(square, tol).size() == 4);

    std::vector<Point> scalene{{0, 0}, {4, 0}, {1, 2}};
    auto se = single_endpoints(scalene, tol);
    CHECK(same_point_set(se, {{0, 0}, {4, 0}}));  // unique longest side
}

TEST_CASE("regular polygon recognition") {
    std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(is_regular_polygon(convex_hull(square, tol), tol));
    CHECK(is_regular_polygon({{0, 0}, {5, 5}}, tol));  // 2-vertex hull counts

    std::vector<Point> right{{0, 0}, {3, 0}, {0, 4}};
    CHECK_FALSE(is_regular_polygon(convex_hull(right, tol), tol));

    // rhombus: equal sides but unequal angles
    std::vector<Point> rhombus{{0, 0}, {2, 1}, {4, 0}, {2, -1}};
    CHECK_FALSE(is_regular_polygon(convex_hull(rhombus, tol), tol));

    // pentagon with one vertex pushed out by 10 * eps_rel * edge
    std::vector<Point> penta;
    for (int i = 0; i < 5; ++i) {
        double a = 2.0 * std::numbers::pi * i / 5.0;
        penta.push_back({std::cos(a), std::sin(a)});
    }
    CHECK(is_regular_polygon(convex_hull(penta, tol), tol));
    double edge = distance(penta[0], penta[1]);
    penta[2] = (1.0 + 10.0 * tol.eps_rel * edge) * penta[2];
    CHECK_FALSE(is_regular_polygon(convex_hull(penta, tol), tol));
}

TEST_CASE("edge_on_border from the SEC oracle") {
    std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(edge_on_border(square, tol));

    std::vector<Point> square_c{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    CHECK(edge_on_border(square_c, tol));  // the center is not an LDS endpoint

    // the longest side of an obtuse triangle is the SEC diameter, so its
    // endpoints sit on the circle
    std::vector<Point> obtuse{{0, 0}, {4, 0}, {1, 0.5}};
    auto sec = smallest_enclosing_circle(obtuse, tol);
    auto lds = lds_set(obtuse, tol);
    bool all_on = true;
    for (const auto& s : lds) {
        if (std::abs(distance(s.a, sec.center) - sec.radius) > 1e-9) all_on = false;
        if (std::abs(distance(s.b, sec.center) - sec.radius) > 1e-9) all_on = false;
    }
    CHECK(edge_on_border(obtuse, tol) == all_on);

    // an interior antipodal pair longer than every circle chord in the set:
    // the unique LDS has both endpoints strictly inside the SEC
    std::vector<Point> inner;
    for (double deg : {90.0, 210.0, 330.0}) {
        double a = deg * std::numbers::pi / 180.0;
        inner.push_back({std::cos(a), std::sin(a)});
    }
    for (double deg : {60.0, 240.0}) {
        double a = deg * std::numbers::pi / 180.0;
        inner.push_back({0.99 * std::cos(a), 0.99 * std::sin(a)});
    }
    auto sec2 = smallest_enclosing_circle(inner, tol);
    CHECK(sec2.radius == doctest::Approx(1.0));
    auto lds2 = lds_set(inner, tol);
    REQUIRE(lds2.size() == 1);
    CHECK(lds2.front().length() == doctest::Approx(1.98));
    CHECK_FALSE(edge_on_border(inner, tol));
}

TEST_CASE("is_clean: center or circle only") {
    std::vector<Point> square_c{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}};
    CHECK(is_clean(square_c, tol));
    std::vector<Point> square_off{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1.3, 1.2}};
    CHECK_FALSE(is_clean(square_off, tol));
    std::vector<Point> hexa;
    for (int i = 0; i < 6; ++i) {
        double a = 2.0 * std::numbers::pi * i / 6.0;
        hexa.push_back({3.0 * std::cos(a), 3.0 * std::sin(a)});
    }
    CHECK(is_clean(hexa, tol));
}

TEST_CASE("after_rp finds the unique hub point") {
    // pentagon with two vertices removed, plus its center
    std::vector<Point> pts{{0, 0}};
    for (int i : {0, 1, 3}) {
        double a = 2.0 * std::numbers::pi * i / 5.0;
        pts.push_back({2.0 * std::cos(a), 2.0 * std::sin(a)});
    }
    auto hub = after_rp(pts, tol);
    REQUIRE(hub.has_value());
    CHECK(coincident(*hub, {0, 0}, tol.eps_pos));

    std::vector<Point> square_c{{1, 1}, {0, 0}, {2, 0}, {2, 2}, {0, 2}};
    auto hub2 = after_rp(square_c, tol);
    REQUIRE(hub2.has_value());
    CHECK(coincident(*hub2, {1, 1}, tol.eps_pos));

    CHECK_FALSE(after_rp({{0, 0}, {4, 0}, {1, 2}}, tol).has_value());

    // rhombus of equal sides: two admissible hubs, hence none
    std::vector<Point> rhomb{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0},
                             {0.5, -std::sqrt(3.0) / 2.0}};
    CHECK_FALSE(after_rp(rhomb, tol).has_value());
}

TEST_CASE("hull and lds are covariant under similarity transforms") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> sc(0.3, 3.0);
    for (int t = 0; t < 50; ++t) {
        auto pts = random_points(rng, 7, 50.0);
        double a = ang(rng), s = sc(rng);
        Point shift{ang(rng), ang(rng)};
        auto map = [&](const Point& p) {
            return Point{s * (p.x * std::cos(a) - p.y * std::sin(a)) + shift.x,
                         s * (p.x * std::sin(a) + p.y * std::cos(a)) + shift.y};
        };
        std::vector<Point> moved;
        for (const auto& p : pts) moved.push_back(map(p));

        auto hull = convex_hull(pts, tol);
        auto hull_moved = convex_hull(moved, tol);
        std::vector<Point> hull_mapped;
        for (const auto& p : hull) hull_mapped.push_back(map(p));
        CHECK(same_point_set(hull_moved, hull_mapped));

        CHECK(lds_length(moved, tol) == doctest::Approx(s * lds_length(pts, tol)));
    }
}

TEST_CASE("geometry selftest passes and the fault injection is caught") {
    auto report = oracle::geometry_selftest(300, 99, tol);
    CHECK(report.failures == 0);
    auto faulty = oracle::geometry_selftest(50, 99, tol, /*inject_fault=*/true);
    CHECK(faulty.failures > 0);
}
