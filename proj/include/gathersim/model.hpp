#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gathersim/geometry.hpp"

namespace gathersim {

/// Index into an algorithm's color palette.
using ColorId = std::uint8_t;

/// Small set of palette colors, one bit per ColorId.
struct ColorSet {
    std::uint32_t bits = 0;

    void add(ColorId c) { bits |= (1u << c); }
    bool contains(ColorId c) const { return (bits >> c) & 1u; }
    bool empty() const { return bits == 0; }
    int size() const { return __builtin_popcount(bits); }
    bool operator==(const ColorSet&) const = default;

    std::vector<ColorId> colors() const {
        std::vector<ColorId> out;
        for (ColorId c = 0; c < 32; ++c)
            if (contains(c)) out.push_back(c);
        return out;
    }
};

enum class LightModel { Full, External, Internal, None };
enum class ViewKind { SetView, ArbitraryView };

struct ObservationPolicy {
    LightModel light_model = LightModel::Full;
    ViewKind view = ViewKind::SetView;
    bool local_aware = false;
    bool chirality = true;
};

/// Robot id exists for scheduling and traces only; Compute never sees it.
struct RobotState {
    int id = 0;
    Point pos;
    ColorId light = 0;
};

struct Configuration {
    std::vector<RobotState> robots;
    int round = 0;

    const RobotState* find(int id) const {
        for (const auto& r : robots)
            if (r.id == id) return &r;
        return nullptr;
    }
    std::vector<Point> positions() const {
        std::vector<Point> out;
        out.reserve(robots.size());
        for (const auto& r : robots) out.push_back(r.pos);
        return out;
    }
};

/// Local coordinate system of one observation: translate the observer to the
/// origin, then apply uniform scale, rotation and an optional reflection
/// (reflection is legal only without chirality).
struct Frame {
    double rotation = 0.0;
    double scale = 1.0;
    bool reflect = false;
    Point origin;
};

Point to_local(const Frame& f, const Point& global);
Point to_global(const Frame& f, const Point& local);

struct SnapshotLocation {
    Point pos;       // local frame; the observer's own location is (0,0)
    ColorSet view;   // colors of other robots there, filtered by the policy
};

/// One robot's observation. Distinct locations only; multiplicities are
/// not observable. Under local-unawareness the view at (0,0) is empty and
/// carries no co-location information.
struct Snapshot {
    std::vector<SnapshotLocation> locations;
    std::optional<ColorId> own_light;                     // full / internal
    std::optional<bool> own_location_occupied_by_others;  // local-aware only
    double scale = 1.0;  // frame scale, applied to known world distances

    const SnapshotLocation* own_location(const Tolerance& tol) const;
    std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(locations.size());
        for (const auto& l : locations) out.push_back(l.pos);
        return out;
    }
    /// Union of all location views plus the observer's own light if visible.
    ColorSet visible_colors() const;
};

/// Adversary callback picking the arbitrary-view singleton: receives the
/// available colors at one location and returns the exposed one.
using ViewChoice = std::function<ColorId(const std::vector<ColorId>&)>;

/// The Look step. The frame's origin must be the observer's position and a
/// reflecting frame requires a policy without chirality.
Snapshot derive_snapshot(const Configuration& config, int robot_id,
                         const ObservationPolicy& policy, const Frame& frame,
                         const ViewChoice& view_choice, const Tolerance& tol);

/// Result of one Compute step, in the observer's frame.
/// new_light empty = the robot does not write its light this cycle.
struct ComputeOutput {
    std::optional<ColorId> new_light;
    Point destination;
};

std::string light_model_name(LightModel m);
std::string view_kind_name(ViewKind v);

}  // namespace gathersim
