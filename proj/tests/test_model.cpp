#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "gathersim/model.hpp"

using namespace gathersim;

namespace {

const Tolerance tol;

ViewChoice first_color() {
    return [](const std::vector<ColorId>& avail) { return avail.front(); };
}

Configuration three_robots() {
    // two robots share a location, with distinct lights
    Configuration c;
    c.robots = {{0, {0, 0}, 0}, {1, {1, 0}, 0}, {2, {1, 0}, 1}};
    return c;
}

const SnapshotLocation* find_loc(const Snapshot& s, const Point& p) {
    for (const auto& l : s.locations)
        if (coincident(l.pos, p, tol.eps_pos)) return &l;
    return nullptr;
}

}  // namespace

TEST_CASE("frame round trip") {
    Frame id;
    CHECK(coincident(to_global(id, to_local(id, {3, 4})), {3, 4}, 1e-12));

    Frame quarter{std::numbers::pi / 2.0, 1.0, false, {0, 0}};
    Point up = to_local(quarter, {1, 0});
    CHECK(up.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(up.y == doctest::Approx(1.0));
    CHECK(coincident(to_global(quarter, up), {1, 0}, 1e-12));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-50, 50);
    std::uniform_real_distribution<double> ang(0, 6.28);
    std::uniform_real_distribution<double> sc(0.1, 8.0);
    for (int i = 0; i < 100; ++i) {
        Frame f{ang(rng), sc(rng), (rng() & 1) == 0, {u(rng), u(rng)}};
        Point p{u(rng), u(rng)};
        CHECK(coincident(to_global(f, to_local(f, p)), p, 1e-10));
    }
}

TEST_CASE("full-light set-view snapshot") {
    auto c = three_robots();
    ObservationPolicy policy{LightModel::Full, ViewKind::SetView, false, true};
    Frame f;
    f.origin = {0, 0};
    auto snap = derive_snapshot(c, 0, policy, f, first_color(), tol);

    REQUIRE(snap.locations.size() == 2);
    const auto* own = find_loc(snap, {0, 0});
    const auto* far = find_loc(snap, {1, 0});
    REQUIRE(own);
    REQUIRE(far);
    CHECK(own->view.empty());  // local-unaware: nothing shown at the observer's spot
    CHECK(far->view.contains(0));
    CHECK(far->view.contains(1));
    REQUIRE(snap.own_light.has_value());
    CHECK(*snap.own_light == 0);
    CHECK_FALSE(snap.own_location_occupied_by_others.has_value());
}

TEST_CASE("arbitrary view exposes one adversary-chosen color") {
    auto c = three_robots();
    ObservationPolicy policy{LightModel::Full, ViewKind::ArbitraryView, false, true};
    Frame f;
    f.origin = {0, 0};
    for (ColorId pick : {ColorId{0}, ColorId{1}}) {
        auto choose = [pick](const std::vector<ColorId>& avail) -> ColorId {
            for (ColorId c2 : avail)
                if (c2 == pick) return c2;
            return avail.front();
        };
        auto snap = derive_snapshot(c, 0, policy, f, choose, tol);
        const auto* far = find_loc(snap, {1, 0});
        REQUIRE(far);
        CHECK(far->view.size() == 1);
        CHECK(far->view.contains(pick));
    }
}

TEST_CASE("local awareness reveals co-located robots") {
    Configuration c;
    c.robots = {{0, {0, 0}, 0}, {1, {0, 0}, 1}, {2, {1, 0}, 0}};
    ObservationPolicy policy{LightModel::External, ViewKind::SetView, true, true};
    Frame f;
    f.origin = {0, 0};
    auto snap = derive_snapshot(c, 0, policy, f, first_color(), tol);

    REQUIRE(snap.own_location_occupied_by_others.has_value());
    CHECK(*snap.own_location_occupied_by_others);
    const auto* own = find_loc(snap, {0, 0});
    REQUIRE(own);
    CHECK(own->view.contains(1));             // the co-located robot's light
    CHECK_FALSE(own->view.contains(0));       // never the observer's own
    CHECK_FALSE(snap.own_light.has_value());  // external light hides it
}

TEST_CASE("set view carries no multiplicity information") {
    Configuration one;
    one.robots = {{0, {0, 0}, 0}, {1, {2, 0}, 0}};
    Configuration many = one;
    many.robots.push_back({2, {2, 0}, 0});
    many.robots.push_back({3, {2, 0}, 0});

    ObservationPolicy policy{LightModel::Full, ViewKind::SetView, false, true};
    Frame f;
    f.origin = {0, 0};
    auto s1 = derive_snapshot(one, 0, policy, f, first_color(), tol);
    auto s2 = derive_snapshot(many, 0, policy, f, first_color(), tol);
    REQUIRE(s1.locations.size() == s2.locations.size());
    for (std::size_t i = 0; i < s1.locations.size(); ++i) {
        CHECK(coincident(s1.locations[i].pos, s2.locations[i].pos, tol.eps_pos));
        CHECK(s1.locations[i].view == s2.locations[i].view);
    }
}

TEST_CASE("internal-light snapshots equal no-light snapshots except own_light") {
    auto c = three_robots();
    Frame f;
    f.origin = {0, 0};
    ObservationPolicy internal{LightModel::Internal, ViewKind::SetView, false, true};
    ObservationPolicy none{LightModel::None, ViewKind::SetView, false, true};
    auto si = derive_snapshot(c, 0, internal, f, first_color(), tol);
    auto sn = derive_snapshot(c, 0, none, f, first_color(), tol);

    REQUIRE(si.locations.size() == sn.locations.size());
    for (std::size_t i = 0; i < si.locations.size(); ++i) {
        CHECK(si.locations[i].view.empty());
        CHECK(sn.locations[i].view.empty());
    }
    CHECK(si.own_light.has_value());
    CHECK_FALSE(sn.own_light.has_value());
}

TEST_CASE("snapshot derivation validates its inputs") {
    auto c = three_robots();
    ObservationPolicy policy{LightModel::Full, ViewKind::SetView, false, true};
    Frame f;
    f.origin = {0, 0};
    CHECK_THROWS_AS(derive_snapshot(c, 99, policy, f, first_color(), tol),
                    std::invalid_argument);
    Frame wrong;
    wrong.origin = {5, 5};
    CHECK_THROWS_AS(derive_snapshot(c, 0, policy, wrong, first_color(), tol),
                    std::invalid_argument);
    Frame reflected;
    reflected.origin = {0, 0};
    reflected.reflect = true;
    CHECK_THROWS_AS(derive_snapshot(c, 0, policy, reflected, first_color(), tol),
                    std::invalid_argument);
}
