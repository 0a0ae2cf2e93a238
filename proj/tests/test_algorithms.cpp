#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gathersim/algorithms.hpp"

using namespace gathersim;

namespace {

const Tolerance tol;
constexpr ColorId A = 0, B = 1, C = 2;

struct Placed {
    Point pos;
    ColorId light;
};

Snapshot snap_of(const std::vector<Placed>& robots, int observer,
                 const ObservationPolicy& policy, Frame frame = Frame{}) {
    Configuration c;
    for (std::size_t i = 0; i < robots.size(); ++i)
        c.robots.push_back({static_cast<int>(i), robots[i].pos, robots[i].light});
    frame.origin = robots[observer].pos;
    return derive_snapshot(c, observer, policy, frame,
                           [](const std::vector<ColorId>& a) { return a.front(); }, tol);
}

const ObservationPolicy kFull{LightModel::Full, ViewKind::SetView, false, true};
const ObservationPolicy kExt{LightModel::External, ViewKind::SetView, false, true};
const ObservationPolicy kExtAware{LightModel::External, ViewKind::SetView, true, true};
const ObservationPolicy kInt{LightModel::Internal, ViewKind::SetView, false, true};
const ObservationPolicy kNone{LightModel::None, ViewKind::SetView, false, true};

Point dest_global(const Frame& f, const ComputeOutput& out) { return to_global(f, out.destination); }

bool stays(const ComputeOutput& out) {
    return coincident(out.destination, {0, 0}, tol.eps_pos);
}

}  // namespace

TEST_CASE("full-light: all-A cases") {
    // two A locations, observer at an endpoint: become B, go to the midpoint
    auto s = snap_of({{{0, 0}, A}, {{0, 0}, A}, {{8, 0}, A}}, 0, kFull);
    auto out = full_light_gather(s, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == B);
    CHECK(coincident(out.destination, {4, 0}, tol.eps_pos));

    // one A location only: gathered, stay
    auto s1 = snap_of({{{2, 1}, A}, {{2, 1}, A}}, 0, kFull);
    auto out1 = full_light_gather(s1, tol);
    CHECK_FALSE(out1.new_light.has_value());
    CHECK(stays(out1));

    // three or more A locations: interior robots head to the nearest endpoint
    auto s2 = snap_of({{{3, 0}, A}, {{0, 0}, A}, {{8, 0}, A}}, 0, kFull);
    auto out2 = full_light_gather(s2, tol);
    CHECK_FALSE(out2.new_light.has_value());
    Frame f2;
    f2.origin = {3, 0};
    CHECK(coincident(dest_global(f2, out2), {0, 0}, tol.eps_pos));

    // ... while endpoint robots stay
    auto s3 = snap_of({{{0, 0}, A}, {{3, 0}, A}, {{8, 0}, A}}, 0, kFull);
    CHECK(stays(full_light_gather(s3, tol)));
}

TEST_CASE("full-light: all-B cases flip endpoints back to A") {
    auto s = snap_of({{{0, 0}, B}, {{6, 0}, B}, {{2, 0}, B}}, 0, kFull);
    auto out = full_light_gather(s, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == A);
    CHECK(stays(out));

    auto s_in = snap_of({{{2, 0}, B}, {{0, 0}, B}, {{6, 0}, B}}, 0, kFull);
    auto out_in = full_light_gather(s_in, tol);
    CHECK_FALSE(out_in.new_light.has_value());
    CHECK(stays(out_in));
}

TEST_CASE("full-light: mixed color cases") {
    // own B, a single A location: go there
    auto s = snap_of({{{5, 0}, B}, {{1, 0}, A}, {{9, 0}, B}}, 0, kFull);
    auto out = full_light_gather(s, tol);
    CHECK_FALSE(out.new_light.has_value());
    Frame f;
    f.origin = {5, 0};
    CHECK(coincident(dest_global(f, out), {1, 0}, tol.eps_pos));

    // own B, two A locations: go to the midpoint of the LDS
    auto s2 = snap_of({{{4, 0}, B}, {{0, 0}, A}, {{8, 0}, A}}, 0, kFull);
    auto out2 = full_light_gather(s2, tol);
    Frame f2;
    f2.origin = {4, 0};
    CHECK(coincident(dest_global(f2, out2), {4, 0}, tol.eps_pos));

    // own A at an endpoint, endpoints A and only the exact midpoint B:
    // become B and go there
    auto s3 = snap_of({{{0, 0}, A}, {{8, 0}, A}, {{4, 0}, B}}, 0, kFull);
    auto out3 = full_light_gather(s3, tol);
    REQUIRE(out3.new_light.has_value());
    CHECK(*out3.new_light == B);
    Frame f3;
    f3.origin = {0, 0};
    CHECK(coincident(dest_global(f3, out3), {4, 0}, tol.eps_pos));

    // own A but an interior B off the midpoint: frozen
    auto s4 = snap_of({{{0, 0}, A}, {{8, 0}, A}, {{3, 0}, B}}, 0, kFull);
    auto out4 = full_light_gather(s4, tol);
    CHECK_FALSE(out4.new_light.has_value());
    CHECK(stays(out4));

    // own A, all A robots on one location: stay
    auto s5 = snap_of({{{0, 0}, A}, {{0, 0}, A}, {{6, 0}, B}}, 0, kFull);
    CHECK(stays(full_light_gather(s5, tol)));
}

TEST_CASE("full-light rejects non-collinear snapshots") {
    auto s = snap_of({{{0, 0}, A}, {{4, 0}, A}, {{2, 3}, A}}, 0, kFull);
    CHECK_THROWS_AS(full_light_gather(s, tol), PreconditionViolation);
}

TEST_CASE("ext-light 3 colors: two-point cases") {
    // far view contains C: adopt C and go there
    auto s = snap_of({{{0, 0}, A}, {{6, 0}, C}, {{6, 0}, A}}, 0, kExt);
    auto out = ext_light_gather_3(s, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == C);
    Frame f;
    f.origin = {0, 0};
    CHECK(coincident(dest_global(f, out), {6, 0}, tol.eps_pos));

    // far view exactly {A}: become B, go to the midpoint
    auto s2 = snap_of({{{0, 0}, A}, {{6, 0}, A}}, 0, kExt);
    auto out2 = ext_light_gather_3(s2, tol);
    REQUIRE(out2.new_light.has_value());
    CHECK(*out2.new_light == B);
    CHECK(coincident(dest_global(f, out2), {3, 0}, tol.eps_pos));

    // far view exactly {B}: become C and stay
    auto s3 = snap_of({{{0, 0}, A}, {{6, 0}, B}}, 0, kExt);
    auto out3 = ext_light_gather_3(s3, tol);
    REQUIRE(out3.new_light.has_value());
    CHECK(*out3.new_light == C);
    CHECK(stays(out3));
}

TEST_CASE("ext-light 3 colors: symmetric three-point cases") {
    // observer at the midpoint: become B, stay
    auto s = snap_of({{{3, 0}, A}, {{0, 0}, A}, {{6, 0}, A}}, 0, kExt);
    auto out = ext_light_gather_3(s, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == B);
    CHECK(stays(out));

    // endpoint observer, far and mid both pure B: become C, stay
    auto s2 = snap_of({{{0, 0}, A}, {{3, 0}, B}, {{6, 0}, B}}, 0, kExt);
    auto out2 = ext_light_gather_3(s2, tol);
    REQUIRE(out2.new_light.has_value());
    CHECK(*out2.new_light == C);
    CHECK(stays(out2));

    // endpoint observer, far holds A or C, mid pure B: become B, go to mid
    auto s3 = snap_of({{{0, 0}, A}, {{3, 0}, B}, {{6, 0}, A}}, 0, kExt);
    auto out3 = ext_light_gather_3(s3, tol);
    REQUIRE(out3.new_light.has_value());
    CHECK(*out3.new_light == B);
    Frame f3;
    f3.origin = {0, 0};
    CHECK(coincident(dest_global(f3, out3), {3, 0}, tol.eps_pos));

    // endpoint observer with an A still at the midpoint: frozen
    auto s4 = snap_of({{{0, 0}, A}, {{3, 0}, A}, {{3, 0}, B}, {{6, 0}, B}}, 0, kExt);
    auto out4 = ext_light_gather_3(s4, tol);
    CHECK_FALSE(out4.new_light.has_value());
    CHECK(stays(out4));
}

TEST_CASE("ext-light 2 colors with local awareness") {
    // a B somewhere: adopt B and go to a B location
    auto s = snap_of({{{0, 0}, A}, {{6, 0}, B}, {{6, 0}, B}}, 0, kExtAware);
    auto out = ext_light_gather_2(s, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == B);
    Frame f;
    f.origin = {0, 0};
    CHECK(coincident(dest_global(f, out), {6, 0}, tol.eps_pos));

    // co-located with a B: counts as "B visible", and we may stay on it
    auto s1 = snap_of({{{0, 0}, B}, {{0, 0}, B}, {{6, 0}, A}}, 0, kExtAware);
    auto out1 = ext_light_gather_2(s1, tol);
    REQUIRE(out1.new_light.has_value());
    CHECK(*out1.new_light == B);
    CHECK(stays(out1));

    // no B anywhere and alone at my location: no action
    auto s2 = snap_of({{{0, 0}, A}, {{6, 0}, A}, {{6, 0}, A}}, 0, kExtAware);
    auto out2 = ext_light_gather_2(s2, tol);
    CHECK_FALSE(out2.new_light.has_value());
    CHECK(stays(out2));

    // no B, company at my location: become B, head to the midpoint
    auto s3 = snap_of({{{0, 0}, A}, {{0, 0}, A}, {{6, 0}, A}}, 0, kExtAware);
    auto out3 = ext_light_gather_2(s3, tol);
    REQUIRE(out3.new_light.has_value());
    CHECK(*out3.new_light == B);
    Frame f3;
    f3.origin = {0, 0};
    CHECK(coincident(dest_global(f3, out3), {3, 0}, tol.eps_pos));

    // symmetric three points, observer at the midpoint with an A alongside
    auto s4 = snap_of({{{3, 0}, A}, {{3, 0}, A}, {{0, 0}, A}, {{6, 0}, A}}, 0, kExtAware);
    auto out4 = ext_light_gather_2(s4, tol);
    REQUIRE(out4.new_light.has_value());
    CHECK(*out4.new_light == B);
    CHECK(stays(out4));
}

TEST_CASE("int-light endgame phases on the pair distance") {
    const double D = 10.0;
    // D/4 <= d < D/2 and own light A: become B, go to the midpoint
    auto s = snap_of({{{0, 0}, A}, {{3, 0}, A}}, 0, kInt);
    auto out = int_light_gather(s, D, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == B);
    Frame f;
    f.origin = {0, 0};
    CHECK(coincident(dest_global(f, out), {1.5, 0}, tol.eps_pos));

    // d < D/4 and own A: chase the far endpoint, light unchanged
    auto s2 = snap_of({{{0, 0}, A}, {{2, 0}, B}}, 0, kInt);
    auto out2 = int_light_gather(s2, D, tol);
    CHECK_FALSE(out2.new_light.has_value());
    CHECK(coincident(dest_global(f, out2), {2, 0}, tol.eps_pos));

    // d < D/4 and own B: stay
    auto s3 = snap_of({{{0, 0}, B}, {{2, 0}, A}}, 0, kInt);
    auto out3 = int_light_gather(s3, D, tol);
    CHECK_FALSE(out3.new_light.has_value());
    CHECK(stays(out3));

    // symmetric three points in range also trigger the midpoint move
    auto s4 = snap_of({{{0, 0}, A}, {{1.5, 0}, B}, {{3, 0}, A}}, 0, kInt);
    auto out4 = int_light_gather(s4, D, tol);
    REQUIRE(out4.new_light.has_value());
    CHECK(coincident(dest_global(f, out4), {1.5, 0}, tol.eps_pos));
}

TEST_CASE("distance reduction step sizes") {
    const double D = 2.0;
    Frame f;
    f.origin = {0, 0};

    // d > 3D/2: step D/2 inward
    auto s = snap_of({{{0, 0}, A}, {{10, 0}, A}}, 0, kNone);
    auto out = reduce_distance_lds(s, D, tol);
    CHECK_FALSE(out.new_light.has_value());
    CHECK(coincident(dest_global(f, out), {1, 0}, tol.eps_pos));

    // 9D/8 <= d <= 3D/2: step D/12
    auto s2 = snap_of({{{0, 0}, A}, {{2.4, 0}, A}}, 0, kNone);
    auto out2 = reduce_distance_lds(s2, D, tol);
    CHECK(coincident(dest_global(f, out2), {2.0 / 12.0, 0}, tol.eps_pos));

    // d < 9D/8: step d/2 - 3D/16; both endpoints moving lands on 3D/8
    auto s3 = snap_of({{{0, 0}, A}, {{2, 0}, A}}, 0, kNone);
    auto out3 = reduce_distance_lds(s3, D, tol);
    double alpha = 2.0 / 2.0 - 3.0 * D / 16.0;
    CHECK(coincident(dest_global(f, out3), {alpha, 0}, tol.eps_pos));
    Frame f2;
    f2.origin = {2, 0};
    auto s3b = snap_of({{{2, 0}, A}, {{0, 0}, A}}, 0, kNone);
    auto out3b = reduce_distance_lds(s3b, D, tol);
    Point other = dest_global(f2, out3b);
    CHECK(distance(dest_global(f, out3), other) == doctest::Approx(3.0 * D / 8.0));
}

TEST_CASE("distance reduction resolves the 3- and 4-point catch-up shapes") {
    const double D = 2.0;
    // gaps 1 and 4: the endpoint adjacent to the short gap joins the middle
    std::vector<Placed> a3{{{0, 0}, A}, {{1, 0}, A}, {{5, 0}, A}};
    CHECK(a3p_shape({{0, 0}, {1, 0}, {5, 0}}, D, tol));
    auto out = reduce_distance_lds(snap_of(a3, 0, kNone), D, tol);
    Frame f;
    f.origin = {0, 0};
    CHECK(coincident(dest_global(f, out), {1, 0}, tol.eps_pos));
    CHECK(stays(reduce_distance_lds(snap_of(a3, 1, kNone), D, tol)));
    CHECK(stays(reduce_distance_lds(snap_of(a3, 2, kNone), D, tol)));

    // symmetric outer gaps: both outer points step to their inner neighbor
    std::vector<Placed> a4{{{0, 0}, A}, {{1, 0}, A}, {{4, 0}, A}, {{5, 0}, A}};
    CHECK(a4p_shape({{0, 0}, {1, 0}, {4, 0}, {5, 0}}, D, tol));
    auto out4 = reduce_distance_lds(snap_of(a4, 0, kNone), D, tol);
    CHECK(coincident(dest_global(f, out4), {1, 0}, tol.eps_pos));
    Frame f3;
    f3.origin = {5, 0};
    auto out5 = reduce_distance_lds(snap_of(a4, 3, kNone), D, tol);
    CHECK(coincident(dest_global(f3, out5), {4, 0}, tol.eps_pos));
    CHECK(stays(reduce_distance_lds(snap_of(a4, 1, kNone), D, tol)));
}

TEST_CASE("election keeping distance: main branches") {
    const double D = 1.0, delta = 0.5;
    // unique LDS: off-endpoint robots head to the nearest endpoint
    auto s = snap_of({{{2, 0}, A}, {{0, 0}, A}, {{7, 0}, A}}, 0, kNone);
    auto out = elect_lds_preserving_distance(s, delta, D, tol);
    Frame f;
    f.origin = {2, 0};
    CHECK(coincident(dest_global(f, out), {0, 0}, tol.eps_pos));

    auto s_e = snap_of({{{0, 0}, A}, {{2, 0}, A}, {{7, 0}, A}}, 0, kNone);
    CHECK(stays(elect_lds_preserving_distance(s_e, delta, D, tol)));

    // regular polygon, not clean: interior robot moves to the center
    std::vector<Placed> sq{{{1, 1}, A}, {{2, 0}, A}, {{0, 2}, A}, {{-2, 0}, A}, {{0, -2}, A},
                           {{2, 0}, A}};
    sq[0] = {{0.7, 0.4}, A};
    auto s2 = snap_of(sq, 0, kNone);
    auto out2 = elect_lds_preserving_distance(s2, delta, D, tol);
    Frame f2;
    f2.origin = {0.7, 0.4};
    CHECK(coincident(dest_global(f2, out2), {0, 0}, tol.eps_pos));

    // regular polygon, clean, diameter over D: border robots move to
    // distance D/2 from the center along their radius
    std::vector<Placed> sq2{{{2, 0}, A}, {{0, 2}, A}, {{-2, 0}, A}, {{0, -2}, A}, {{0, 0}, A}};
    auto s3 = snap_of(sq2, 0, kNone);
    auto out3 = elect_lds_preserving_distance(s3, delta, D, tol);
    Frame f3;
    f3.origin = {2, 0};
    CHECK(coincident(dest_global(f3, out3), {D / 2.0, 0}, tol.eps_pos));
    // ... and the center robot stays
    auto s4 = snap_of({{{0, 0}, A}, {{2, 0}, A}, {{0, 2}, A}, {{-2, 0}, A}, {{0, -2}, A}}, 0,
                      kNone);
    CHECK(stays(elect_lds_preserving_distance(s4, delta, D, tol)));

    // regular polygon, clean, diameter within D: everyone to the center
    std::vector<Placed> small{{{0.4, 0}, A}, {{0, 0.4}, A}, {{-0.4, 0}, A}, {{0, -0.4}, A}};
    auto s5 = snap_of(small, 0, kNone);
    auto out5 = elect_lds_preserving_distance(s5, delta, D, tol);
    Frame f5;
    f5.origin = {0.4, 0};
    CHECK(coincident(dest_global(f5, out5), {0, 0}, tol.eps_pos));
}

TEST_CASE("election keeping distance: AFTER-RP hub move") {
    const double D = 4.0, delta = 2.0;
    // center plus three points of a pentagon of radius D/2: all head to the hub
    std::vector<Placed> pts{{{0, 0}, A}};
    for (int i : {0, 1, 3}) {
        double a = 2.0 * std::numbers::pi * i / 5.0;
        pts.push_back({{2.0 * std::cos(a), 2.0 * std::sin(a)}, A});
    }
    auto out = elect_lds_preserving_distance(snap_of(pts, 1, kNone), delta, D, tol);
    Frame f;
    f.origin = pts[1].pos;
    CHECK(coincident(dest_global(f, out), {0, 0}, tol.eps_pos));
    CHECK(stays(elect_lds_preserving_distance(snap_of(pts, 0, kNone), delta, D, tol)));
}

TEST_CASE("reduce_num_lds walks the minimum gap counter-clockwise") {
    const double delta = 0.3;
    std::vector<Placed> sq{{{2, 0}, A}, {{0, 2}, A}, {{-2, 0}, A}, {{0, -2}, A}};
    auto s = snap_of(sq, 0, kNone);
    auto out = reduce_num_lds(s, delta, tol);
    Frame f;
    f.origin = {2, 0};
    Point dest = dest_global(f, out);
    CHECK(distance(dest, {0, 0}) == doctest::Approx(2.0));  // still on the circle
    CHECK(distance(dest, {2, 0}) == doctest::Approx(delta));
    CHECK(dest.y > 0.0);  // toward (0,2), the CCW neighbor

    // a chord within delta is taken in one step
    std::vector<Placed> sq_close{{{2, 0}, A}, {{1.9, std::sqrt(4.0 - 1.9 * 1.9)}, A},
                                 {{-2, 0}, A}, {{0, -2}, A}};
    auto out2 = reduce_num_lds(snap_of(sq_close, 0, kNone), 0.7, tol);
    CHECK(coincident(dest_global(f, out2), sq_close[1].pos, 1e-9));
}

TEST_CASE("make_diameter circles toward the antipode of the partner") {
    const double delta = 0.4;
    auto deg = [](double d) { return d * std::numbers::pi / 180.0; };
    std::vector<Placed> pts{{{std::cos(deg(140)), std::sin(deg(140))}, A},
                            {{1, 0}, A},
                            {{std::cos(deg(250)), std::sin(deg(250))}, A}};
    auto s = snap_of(pts, 0, kNone);
    auto out = make_diameter(s, delta, tol);
    Frame f;
    f.origin = pts[0].pos;
    Point dest = dest_global(f, out);
    CHECK(distance(dest, {0, 0}) == doctest::Approx(1.0));
    CHECK(distance(dest, pts[0].pos) == doctest::Approx(delta));
    // moved away from the partner, toward (-1, 0)
    CHECK(std::atan2(dest.y, dest.x) > deg(140));

    // within delta of the antipode: land exactly on it
    auto out2 = make_diameter(s, 4.0, tol);
    CHECK(coincident(dest_global(f, out2), {-1, 0}, 1e-9));
}

TEST_CASE("make_edge_on_border pushes the inner endpoint onto the circle") {
    std::vector<Placed> pts{{{-0.9, 0}, A},
                            {{1, 0}, A},
                            {{-0.5, std::sqrt(3.0) / 2.0}, A},
                            {{-0.5, -std::sqrt(3.0) / 2.0}, A}};
    auto s = snap_of(pts, 0, kNone);
    auto out = make_edge_on_border(s, tol);
    Frame f;
    f.origin = {-0.9, 0};
    CHECK(coincident(dest_global(f, out), {-1, 0}, 1e-9));

    // already on the circle: nothing to do
    auto s2 = snap_of({{{1, 0}, A}, {{-0.9, 0}, A}, {{-0.5, std::sqrt(3.0) / 2.0}, A},
                       {{-0.5, -std::sqrt(3.0) / 2.0}, A}},
                      0, kNone);
    CHECK(stays(make_edge_on_border(s2, tol)));
}

TEST_CASE("elect_one_lds hull contraction") {
    // symmetric hull, one interior off-center robot: it goes to the center
    std::vector<Placed> sym{{{0.5, 0.3}, A}, {{2, 0}, A}, {{0, 2}, A}, {{-2, 0}, A},
                            {{0, -2}, A}};
    auto out = elect_one_lds(snap_of(sym, 0, kNone), false, tol);
    Frame f;
    f.origin = {0.5, 0.3};
    CHECK(coincident(dest_global(f, out), {0, 0}, tol.eps_pos));

    // asymmetric contractible hull: the shortest edge contracts CCW
    std::vector<Placed> tri{{{1, 2}, A}, {{0, 0}, A}, {{4, 0}, A}};
    auto out2 = elect_one_lds(snap_of(tri, 0, kNone), false, tol);
    Frame f2;
    f2.origin = {1, 2};
    CHECK(coincident(dest_global(f2, out2), {0, 0}, tol.eps_pos));
    CHECK(stays(elect_one_lds(snap_of(tri, 1, kNone), false, tol)));
    CHECK(stays(elect_one_lds(snap_of(tri, 2, kNone), false, tol)));

    // collinear already: nothing to elect
    std::vector<Placed> line{{{0, 0}, A}, {{3, 0}, A}, {{7, 0}, A}};
    CHECK(stays(elect_one_lds(snap_of(line, 0, kNone), false, tol)));

    // the cent variant contracts a unique shortest edge as well
    auto out3 = elect_one_lds(snap_of(tri, 0, kNone), true, tol);
    CHECK(coincident(dest_global(f2, out3), {0, 0}, tol.eps_pos));
}

TEST_CASE("centralized external-light gathering rules") {
    const ObservationPolicy pol{LightModel::External, ViewKind::SetView, false, false};
    const ColorId T = 0, M = 1;

    // no target visible anywhere: claim it
    auto s = snap_of({{{0, 0}, M}, {{3, 0}, M}, {{5, 2}, M}}, 0, pol);
    auto out = cent_ext_light_gather(s, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == T);
    CHECK(stays(out));

    // exactly one target location: move toward it
    auto s2 = snap_of({{{0, 0}, M}, {{3, 0}, T}, {{5, 2}, M}}, 0, pol);
    auto out2 = cent_ext_light_gather(s2, tol);
    REQUIRE(out2.new_light.has_value());
    CHECK(*out2.new_light == M);
    Frame f;
    f.origin = {0, 0};
    CHECK(coincident(dest_global(f, out2), {3, 0}, tol.eps_pos));

    // two target locations: become M, stay
    auto s3 = snap_of({{{0, 0}, T}, {{3, 0}, T}, {{5, 2}, T}}, 0, pol);
    auto out3 = cent_ext_light_gather(s3, tol);
    REQUIRE(out3.new_light.has_value());
    CHECK(*out3.new_light == M);
    CHECK(stays(out3));

    // arbitrary-view variant moves as a target, not as a mover
    auto out4 = cent_ext_light_gather_av(s2, tol);
    REQUIRE(out4.new_light.has_value());
    CHECK(*out4.new_light == T);
    CHECK(coincident(dest_global(f, out4), {3, 0}, tol.eps_pos));
}

TEST_CASE("round-robin internal-light rules") {
    // A with the two-point view: become B, go to the midpoint
    auto s = snap_of({{{0, 0}, A}, {{6, 0}, A}}, 0, kInt);
    auto out = rr_int_light_gather(s, tol);
    REQUIRE(out.new_light.has_value());
    CHECK(*out.new_light == B);
    Frame f;
    f.origin = {0, 0};
    CHECK(coincident(dest_global(f, out), {3, 0}, tol.eps_pos));

    // A with a long line: head to the nearest endpoint
    auto s2 = snap_of({{{2, 0}, A}, {{0, 0}, A}, {{6, 0}, A}, {{4, 0}, A}}, 0, kInt);
    auto out2 = rr_int_light_gather(s2, tol);
    CHECK_FALSE(out2.new_light.has_value());
    Frame f2;
    f2.origin = {2, 0};
    CHECK(coincident(dest_global(f2, out2), {0, 0}, tol.eps_pos));

    // B on two points: go to the far endpoint
    auto s3 = snap_of({{{0, 0}, B}, {{6, 0}, B}}, 0, kInt);
    auto out3 = rr_int_light_gather(s3, tol);
    CHECK(coincident(dest_global(f, out3), {6, 0}, tol.eps_pos));

    // B on three points: go to the midpoint of the endpoints
    auto s4 = snap_of({{{0, 0}, B}, {{3, 0}, B}, {{6, 0}, B}}, 0, kInt);
    auto out4 = rr_int_light_gather(s4, tol);
    CHECK(coincident(dest_global(f, out4), {3, 0}, tol.eps_pos));
}

TEST_CASE("pipeline routing") {
    const double D = 1.0;
    CHECK(pipeline_route({{0, 0}, {0.3, 0}}, D, tol) == PipelinePhase::Gather4);
    CHECK(pipeline_route({{0, 0}, {2, 0}}, D, tol) == PipelinePhase::Reduce5);
    CHECK(pipeline_route({{0, 0}, {0.5, 0}, {4.5, 0}}, D, tol) == PipelinePhase::Reduce5);  // A3P
    std::vector<Point> hexa;
    for (int i = 0; i < 6; ++i) {
        double a = 2.0 * std::numbers::pi * i / 6.0;
        hexa.push_back({1.5 * std::cos(a), 1.5 * std::sin(a)});
    }
    CHECK(pipeline_route(hexa, D, tol) == PipelinePhase::Elect6);
    CHECK(pipeline_route({{1, 1}, {1, 1}}, D, tol) == PipelinePhase::Done);
}

TEST_CASE("onLDS reduction heads for the nearest special point") {
    // nearest endpoint
    auto s = snap_of({{{1, 0}, A}, {{0, 0}, A}, {{10, 0}, A}}, 0, kExt);
    auto out = onlds_reduction_step(s, tol);
    Frame f;
    f.origin = {1, 0};
    CHECK(coincident(dest_global(f, out), {0, 0}, tol.eps_pos));

    // nearest midpoint
    auto s2 = snap_of({{{4, 0}, A}, {{0, 0}, A}, {{10, 0}, A}}, 0, kExt);
    auto out2 = onlds_reduction_step(s2, tol);
    Frame f2;
    f2.origin = {4, 0};
    CHECK(coincident(dest_global(f2, out2), {5, 0}, tol.eps_pos));

    // the exact quarter point ties toward the midpoint
    auto s3 = snap_of({{{2.5, 0}, A}, {{0, 0}, A}, {{10, 0}, A}}, 0, kExt);
    auto out3 = onlds_reduction_step(s3, tol);
    Frame f3;
    f3.origin = {2.5, 0};
    CHECK(coincident(dest_global(f3, out3), {5, 0}, tol.eps_pos));
}

TEST_CASE("compute outputs are frame invariant") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> sc(0.2, 5.0);

    std::vector<Placed> robots{{{0, 0}, A}, {{4, 0}, A}, {{1, 0}, A}, {{4, 0}, B}};
    for (int t = 0; t < 40; ++t) {
        Frame fa{ang(rng), sc(rng), false, {0, 0}};
        Frame fb{ang(rng), sc(rng), false, {0, 0}};
        auto oa = full_light_gather(snap_of(robots, 2, kFull, fa), tol);
        auto ob = full_light_gather(snap_of(robots, 2, kFull, fb), tol);
        fa.origin = fb.origin = robots[2].pos;
        CHECK(oa.new_light == ob.new_light);
        CHECK(coincident(to_global(fa, oa.destination), to_global(fb, ob.destination), 1e-9));
    }
}
