#include "gathersim/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace gathersim {

AdversaryStrategy::AdversaryStrategy(SchedulerKind sched, std::uint64_t seed) {
    scheduler = sched;
    if (sched == SchedulerKind::FSync) activation = ActivationPolicy::Everyone;
    if (sched == SchedulerKind::RoundRobin) activation = ActivationPolicy::CyclicOrder;
    rng_.seed(seed);
}

void AdversaryStrategy::reset(std::uint64_t seed, int robot_count) {
    rng_.seed(seed);
    idle_rounds_.assign(robot_count, 0);
    seen_since_.assign(robot_count, std::vector<int>(robot_count, 0));
    rr_next_ = 0;
    clamped_last_ = false;
}

std::vector<int> AdversaryStrategy::propose(const Configuration& config, const Tolerance& tol) {
    const int n = static_cast<int>(config.robots.size());
    switch (activation) {
        case ActivationPolicy::Everyone: {
            std::vector<int> all(n);
            for (int i = 0; i < n; ++i) all[i] = i;
            return all;
        }
        case ActivationPolicy::CyclicOrder: {
            std::vector<int> one{rr_next_};
            rr_next_ = (rr_next_ + 1) % n;
            return one;
        }
        case ActivationPolicy::SeededRandom: {
            if (scheduler == SchedulerKind::Cent) {
                std::uniform_int_distribution<int> pick(0, n - 1);
                return {pick(rng_)};
            }
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (std::uniform_int_distribution<int>(0, 1)(rng_)) subset.push_back(i);
            if (subset.empty()) subset.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng_));
            return subset;
        }
        case ActivationPolicy::EndpointSplitter: {
            // All robots at one LDS endpoint; stresses the one-sided cases.
            auto lds = lds_set(config.positions(), tol);
            if (lds.empty()) {
                std::vector<int> all(n);
                for (int i = 0; i < n; ++i) all[i] = i;
                return all;
            }
            const auto& seg = lds.front();
            Point end = std::uniform_int_distribution<int>(0, 1)(rng_) ? seg.a : seg.b;
            std::vector<int> subset;
            for (int i = 0; i < n; ++i)
                if (coincident(config.robots[i].pos, end, tol.eps_pos)) subset.push_back(i);
            if (subset.empty()) subset.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng_));
            return subset;
        }
    }
    return {0};
}

std::vector<int> AdversaryStrategy::next_activation(const Configuration& config,
                                                    const Tolerance& tol) {
    const int n = static_cast<int>(config.robots.size());
    if (static_cast<int>(idle_rounds_.size()) != n) {
        idle_rounds_.assign(n, 0);
        seen_since_.assign(n, std::vector<int>(n, 0));
    }
    clamped_last_ = false;

    std::set<int> act;
    for (int i : propose(config, tol)) act.insert(i);

    const bool singleton =
        scheduler == SchedulerKind::Cent || scheduler == SchedulerKind::RoundRobin;
    const int window = std::max(fairness_window, singleton ? n : 1);

    // Fairness: a robot idle for window-1 rounds joins this round's set.
    std::vector<int> starved;
    for (int i = 0; i < n; ++i)
        if (idle_rounds_[i] >= window - 1 && !act.count(i)) starved.push_back(i);
    if (!starved.empty()) {
        clamped_last_ = true;
        if (singleton) {
            int most = starved.front();
            for (int i : starved)
                if (idle_rounds_[i] > idle_rounds_[most]) most = i;
            act = {most};
        } else {
            for (int i : starved) act.insert(i);
        }
    }

    if (singleton && act.size() > 1) {
        clamped_last_ = true;
        act = {*act.begin()};
    }

    if (scheduler == SchedulerKind::KBounded || scheduler == SchedulerKind::RoundRobin) {
        const int k = scheduler == SchedulerKind::RoundRobin ? 1 : k_bound;
        // A robot whose budget another active robot would overrun must be
        // activated too; iterate to a fixed point.
        bool changed = true;
        while (changed) {
            changed = false;
            for (int r = 0; r < n; ++r) {
                if (act.count(r)) continue;
                for (int o : act) {
                    if (seen_since_[r][o] + 1 > k) {
                        act.insert(r);
                        clamped_last_ = true;
                        changed = true;
                        break;
                    }
                }
            }
        }
        if (singleton && act.size() > 1)
            throw std::logic_error("scheduler constraints are unsatisfiable");
    }

    std::vector<int> out(act.begin(), act.end());
    apply_bookkeeping(out, n);
    return out;
}

void AdversaryStrategy::apply_bookkeeping(const std::vector<int>& act, int n) {
    std::set<int> inset(act.begin(), act.end());
    for (int r = 0; r < n; ++r) {
        if (inset.count(r)) {
            idle_rounds_[r] = 0;
            std::fill(seen_since_[r].begin(), seen_since_[r].end(), 0);
        } else {
            ++idle_rounds_[r];
            for (int o : act) ++seen_since_[r][o];
        }
    }
}

Point AdversaryStrategy::resolve_movement(const Point& origin, const Point& destination,
                                          const MovementModel& model) {
    double dist = distance(origin, destination);
    if (dist == 0.0) return origin;
    if (model.rigid || dist <= model.delta) return destination;
    double moved;
    switch (truncation) {
        case TruncationPolicy::MinStep: moved = model.delta; break;
        case TruncationPolicy::AlwaysReach: moved = dist; break;
        case TruncationPolicy::SeededRandom:
            moved = std::uniform_real_distribution<double>(model.delta, dist)(rng_);
            break;
        default: moved = dist; break;
    }
    if (moved >= dist) return destination;
    return point_along(origin, destination, moved);
}

Frame AdversaryStrategy::choose_frame(const ObservationPolicy& policy, const Point& origin) {
    Frame f;
    f.origin = origin;
    if (frames == FramePolicy::SeededRandom) {
        f.rotation = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng_);
        f.scale = std::exp(std::uniform_real_distribution<double>(-1.2, 1.2)(rng_));
        if (!policy.chirality) f.reflect = std::uniform_int_distribution<int>(0, 1)(rng_) == 1;
    }
    return f;
}

ColorId AdversaryStrategy::choose_view(const std::vector<ColorId>& available) {
    if (available.empty()) throw std::invalid_argument("choose_view: empty color set");
    if (views == ViewPolicy::FirstColor) return available.front();
    std::uniform_int_distribution<std::size_t> pick(0, available.size() - 1);
    return available[pick(rng_)];
}

SchedulerKind scheduler_kind_from_name(const std::string& name) {
    if (name == "FSYNC") return SchedulerKind::FSync;
    if (name == "SSYNC") return SchedulerKind::SSync;
    if (name == "CENT") return SchedulerKind::Cent;
    if (name == "KBOUNDED") return SchedulerKind::KBounded;
    if (name == "ROUND-ROBIN") return SchedulerKind::RoundRobin;
    throw std::invalid_argument("unknown scheduler: " + name);
}

std::string scheduler_kind_name(SchedulerKind k) {
    switch (k) {
        case SchedulerKind::FSync: return "FSYNC";
        case SchedulerKind::SSync: return "SSYNC";
        case SchedulerKind::Cent: return "CENT";
        case SchedulerKind::KBounded: return "KBOUNDED";
        case SchedulerKind::RoundRobin: return "ROUND-ROBIN";
    }
    return "?";
}

}  // namespace gathersim
