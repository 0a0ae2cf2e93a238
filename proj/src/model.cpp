#include "gathersim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace gathersim {

Point to_local(const Frame& f, const Point& global) {
    Point v = global - f.origin;
    if (f.reflect) v.y = -v.y;
    double ca = std::cos(f.rotation), sa = std::sin(f.rotation);
    Point r{ca * v.x - sa * v.y, sa * v.x + ca * v.y};
    return f.scale * r;
}

Point to_global(const Frame& f, const Point& local) {
    Point v = (1.0 / f.scale) * local;
    double ca = std::cos(-f.rotation), sa = std::sin(-f.rotation);
    Point r{ca * v.x - sa * v.y, sa * v.x + ca * v.y};
    if (f.reflect) r.y = -r.y;
    return r + f.origin;
}

const SnapshotLocation* Snapshot::own_location(const Tolerance& tol) const {
    for (const auto& l : locations)
        if (coincident(l.pos, Point{0.0, 0.0}, tol.eps_pos)) return &l;
    return nullptr;
}

ColorSet Snapshot::visible_colors() const {
    ColorSet out;
    for (const auto& l : locations) out.bits |= l.view.bits;
    if (own_light) out.add(*own_light);
    return out;
}

Snapshot derive_snapshot(const Configuration& config, int robot_id,
                         const ObservationPolicy& policy, const Frame& frame,
                         const ViewChoice& view_choice, const Tolerance& tol) {
    const RobotState* self = config.find(robot_id);
    if (!self) throw std::invalid_argument("derive_snapshot: unknown robot id");
    if (!coincident(frame.origin, self->pos, tol.eps_pos))
        throw std::invalid_argument("derive_snapshot: frame origin is not the observer");
    if (frame.reflect && policy.chirality)
        throw std::invalid_argument("derive_snapshot: reflecting frame under chirality");
    if (frame.scale <= 0.0) throw std::invalid_argument("derive_snapshot: non-positive scale");

    const bool lights_visible =
        policy.light_model == LightModel::Full || policy.light_model == LightModel::External;

    // Cluster distinct locations in the global frame first, so "distinct"
    // does not depend on the observation scale.
    std::vector<Point> reps = dedup_points(config.positions(), tol);

    Snapshot snap;
    snap.scale = frame.scale;
    bool others_at_own = false;
    for (const auto& rep : reps) {
        SnapshotLocation loc;
        loc.pos = to_local(frame, rep);
        bool is_own = coincident(rep, self->pos, tol.eps_pos);
        std::vector<ColorId> avail;
        for (const auto& r : config.robots) {
            if (!coincident(r.pos, rep, tol.eps_pos)) continue;
            if (r.id == robot_id) continue;
            if (is_own) {
                others_at_own = true;
                if (!policy.local_aware) continue;  // co-located robots invisible
            }
            if (lights_visible) avail.push_back(r.light);
        }
        if (!avail.empty()) {
            if (policy.view == ViewKind::SetView) {
                for (ColorId c : avail) loc.view.add(c);
            } else {
                loc.view.add(view_choice(avail));
            }
        }
        snap.locations.push_back(loc);
    }

    if (policy.light_model == LightModel::Full || policy.light_model == LightModel::Internal)
        snap.own_light = self->light;
    if (policy.local_aware) snap.own_location_occupied_by_others = others_at_own;
    return snap;
}

std::string light_model_name(LightModel m) {
    switch (m) {
        case LightModel::Full: return "full";
        case LightModel::External: return "external";
        case LightModel::Internal: return "internal";
        case LightModel::None: return "none";
    }
    return "?";
}

std::string view_kind_name(ViewKind v) {
    return v == ViewKind::SetView ? "set-view" : "arbitrary-view";
}

}  // namespace gathersim
