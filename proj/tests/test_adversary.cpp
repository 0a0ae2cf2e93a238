#include <map>
#include <set>

#include "doctest.h"
#include "gathersim/adversary.hpp"

using namespace gathersim;

namespace {

const Tolerance tol;

Configuration line_config(int n) {
    Configuration c;
    for (int i = 0; i < n; ++i) c.robots.push_back({i, {double(i), 0.0}, 0});
    return c;
}

}  // namespace

TEST_CASE("round robin cycles in id order") {
    AdversaryStrategy s(SchedulerKind::RoundRobin, 1);
    s.reset(1, 3);
    auto c = line_config(3);
    for (int round = 0; round < 7; ++round) {
        auto act = s.next_activation(c, tol);
        REQUIRE(act.size() == 1);
        CHECK(act[0] == round % 3);
    }
}

TEST_CASE("fsync activates everyone") {
    AdversaryStrategy s(SchedulerKind::FSync, 1);
    s.reset(1, 5);
    auto c = line_config(5);
    auto act = s.next_activation(c, tol);
    CHECK(act.size() == 5);
}

TEST_CASE("fairness window forces starved robots in") {
    AdversaryStrategy s(SchedulerKind::SSync, 42);
    s.fairness_window = 4;
    s.reset(42, 6);
    auto c = line_config(6);
    std::map<int, int> idle;
    for (int i = 0; i < 6; ++i) idle[i] = 0;
    for (int round = 0; round < 400; ++round) {
        auto act = s.next_activation(c, tol);
        CHECK_FALSE(act.empty());
        std::set<int> inset(act.begin(), act.end());
        for (int i = 0; i < 6; ++i) {
            if (inset.count(i))
                idle[i] = 0;
            else
                CHECK(++idle[i] <= 3);  // never 4 consecutive idle rounds
        }
    }
}

TEST_CASE("activation totals satisfy the fairness bound") {
    AdversaryStrategy s(SchedulerKind::SSync, 9);
    s.fairness_window = 8;
    s.reset(9, 4);
    auto c = line_config(4);
    const int rounds = 8 * 4 * 10;
    std::map<int, int> count;
    for (int r = 0; r < rounds; ++r)
        for (int i : s.next_activation(c, tol)) ++count[i];
    for (int i = 0; i < 4; ++i) CHECK(count[i] >= rounds / 8);
}

TEST_CASE("k-bounded skew is respected") {
    AdversaryStrategy s(SchedulerKind::KBounded, 77);
    s.k_bound = 2;
    s.fairness_window = 50;
    s.reset(77, 5);
    auto c = line_config(5);

    // between consecutive activations of any robot, no other robot may be
    // seen more than k times
    std::vector<std::vector<int>> seen(5, std::vector<int>(5, 0));
    for (int r = 0; r < 500; ++r) {
        auto act = s.next_activation(c, tol);
        std::set<int> inset(act.begin(), act.end());
        for (int i = 0; i < 5; ++i) {
            if (inset.count(i)) {
                seen[i] = std::vector<int>(5, 0);
            } else {
                for (int o : act) {
                    ++seen[i][o];
                    CHECK(seen[i][o] <= 2);
                }
            }
        }
    }
}

TEST_CASE("cent activates exactly one robot") {
    AdversaryStrategy s(SchedulerKind::Cent, 5);
    s.reset(5, 4);
    auto c = line_config(4);
    for (int r = 0; r < 50; ++r) CHECK(s.next_activation(c, tol).size() == 1);
}

TEST_CASE("endpoint splitter activates one LDS endpoint") {
    AdversaryStrategy s(SchedulerKind::SSync, 3);
    s.activation = ActivationPolicy::EndpointSplitter;
    s.fairness_window = 100;
    s.reset(3, 4);
    Configuration c;
    c.robots = {{0, {0, 0}, 0}, {1, {0, 0}, 0}, {2, {10, 0}, 0}, {3, {4, 0}, 0}};
    for (int r = 0; r < 20; ++r) {
        auto act = s.next_activation(c, tol);
        std::set<int> inset(act.begin(), act.end());
        bool left = inset == std::set<int>{0, 1};
        bool right = inset == std::set<int>{2};
        CHECK((left || right));
    }
}

TEST_CASE("movement resolution: rigid, short trips, truncation") {
    AdversaryStrategy s(SchedulerKind::SSync, 1);
    s.reset(1, 1);
    MovementModel rigid{true, 0.0, false};
    CHECK(s.resolve_movement({0, 0}, {9, 0}, rigid) == Point{9, 0});

    MovementModel nr{false, 1.0, true};
    CHECK(s.resolve_movement({0, 0}, {0.5, 0}, nr) == Point{0.5, 0});  // within delta

    s.truncation = TruncationPolicy::MinStep;
    Point stopped = s.resolve_movement({0, 0}, {3, 0}, nr);
    CHECK(distance({0, 0}, stopped) == doctest::Approx(1.0));
    CHECK(stopped.y == doctest::Approx(0.0));

    s.truncation = TruncationPolicy::SeededRandom;
    for (int i = 0; i < 50; ++i) {
        Point p = s.resolve_movement({0, 0}, {3, 0}, nr);
        CHECK(distance({0, 0}, p) >= 1.0 - 1e-12);
        CHECK(distance({0, 0}, p) <= 3.0 + 1e-12);
        CHECK(p.y == doctest::Approx(0.0));  // never off the segment
    }
    CHECK(s.resolve_movement({2, 3}, {2, 3}, nr) == Point{2, 3});
}

TEST_CASE("frames: chirality forbids reflection, seeds reproduce") {
    AdversaryStrategy s1(SchedulerKind::SSync, 12);
    s1.frames = FramePolicy::SeededRandom;
    s1.reset(12, 1);
    ObservationPolicy chiral{LightModel::Full, ViewKind::SetView, false, true};
    for (int i = 0; i < 30; ++i) {
        Frame f = s1.choose_frame(chiral, {1, 2});
        CHECK_FALSE(f.reflect);
        CHECK(f.scale > 0.0);
    }

    AdversaryStrategy a(SchedulerKind::SSync, 7), b(SchedulerKind::SSync, 7);
    a.frames = b.frames = FramePolicy::SeededRandom;
    a.reset(7, 1);
    b.reset(7, 1);
    ObservationPolicy free{LightModel::External, ViewKind::SetView, false, false};
    for (int i = 0; i < 30; ++i) {
        Frame fa = a.choose_frame(free, {0, 0});
        Frame fb = b.choose_frame(free, {0, 0});
        CHECK(fa.rotation == fb.rotation);
        CHECK(fa.scale == fb.scale);
        CHECK(fa.reflect == fb.reflect);
    }
}
