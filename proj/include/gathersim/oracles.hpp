#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gathersim/geometry.hpp"

// Independent brute-force references. Nothing here is called by the
// production geometry; the selftest command and the test suites compare
// against these.

namespace gathersim::oracle {

/// Smallest circle among all point-pair diameters and point-triple
/// circumcircles that encloses every input point.
Circle brute_force_sec(const std::vector<Point>& points, const Tolerance& tol);

/// Extreme points by the exhaustive half-plane test: p is extreme iff some
/// directed line through two other points (or any direction, for tiny sets)
/// has p strictly outside. Returned unordered.
std::vector<Point> brute_force_hull(const std::vector<Point>& points, const Tolerance& tol);

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d,
                        double eps);

struct SelfTestReport {
    int cases = 0;
    int failures = 0;
    std::vector<std::string> messages;
    bool ok() const { return failures == 0; }
};

/// Randomized point sets (plus structured symmetric ones) checked against
/// the brute-force references and the LDS/SEC properties. inject_fault
/// perturbs the SEC radius to prove the harness can fail.
SelfTestReport geometry_selftest(int cases, std::uint64_t seed, const Tolerance& tol,
                                 bool inject_fault = false);

}  // namespace gathersim::oracle
