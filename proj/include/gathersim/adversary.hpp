#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gathersim/model.hpp"

namespace gathersim {

enum class SchedulerKind { FSync, SSync, Cent, KBounded, RoundRobin };

struct MovementModel {
    bool rigid = true;
    double delta = 0.0;  // minimum distance under non-rigid movement
    bool delta_known = false;
};

enum class ActivationPolicy { Everyone, SeededRandom, EndpointSplitter, CyclicOrder };
enum class TruncationPolicy { SeededRandom, MinStep, AlwaysReach };
enum class FramePolicy { Identity, SeededRandom };
enum class ViewPolicy { FirstColor, SeededRandom };

/// One adversary instance drives one run: activation choices, movement
/// truncation, observation frames and arbitrary-view picks, all from a
/// single seeded generator. Copy the strategy to fan out over seeds.
class AdversaryStrategy {
public:
    SchedulerKind scheduler = SchedulerKind::SSync;
    int k_bound = 1;
    int fairness_window = 8;  // W: every robot activated in any W rounds
    ActivationPolicy activation = ActivationPolicy::SeededRandom;
    TruncationPolicy truncation = TruncationPolicy::SeededRandom;
    FramePolicy frames = FramePolicy::Identity;
    ViewPolicy views = ViewPolicy::FirstColor;

    AdversaryStrategy() = default;
    AdversaryStrategy(SchedulerKind sched, std::uint64_t seed);

    void reset(std::uint64_t seed, int robot_count);

    /// Non-empty activation set for the next round. Structural scheduler
    /// constraints and the fairness window are enforced by clamping; a
    /// clamp is reported through was_clamped().
    std::vector<int> next_activation(const Configuration& config, const Tolerance& tol);

    bool was_clamped() const { return clamped_last_; }

    /// Terminal point of one Move: exact destination under rigid movement
    /// or short trips, otherwise a point at adversary-chosen distance in
    /// [delta, |segment|] along the segment.
    Point resolve_movement(const Point& origin, const Point& destination,
                           const MovementModel& model);

    Frame choose_frame(const ObservationPolicy& policy, const Point& origin);

    ColorId choose_view(const std::vector<ColorId>& available);

private:
    std::mt19937_64 rng_;
    std::vector<int> idle_rounds_;             // per robot index
    std::vector<std::vector<int>> seen_since_;  // k-bounded bookkeeping
    int rr_next_ = 0;
    bool clamped_last_ = false;

    std::vector<int> propose(const Configuration& config, const Tolerance& tol);
    void apply_bookkeeping(const std::vector<int>& act, int n);
};

SchedulerKind scheduler_kind_from_name(const std::string& name);
std::string scheduler_kind_name(SchedulerKind k);

}  // namespace gathersim
