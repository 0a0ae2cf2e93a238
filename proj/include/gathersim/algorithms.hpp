#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gathersim/adversary.hpp"
#include "gathersim/model.hpp"

namespace gathersim {

/// Thrown by a compute function handed a snapshot outside its input shape.
struct PreconditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Compute steps of the gathering algorithms. All of them are pure functions
// of the snapshot (plus the world tolerance); distances the robots are
// allowed to know (delta, D) arrive already scaled into the snapshot's local
// units so every decision is invariant under the observation frame.

/// Full-light gathering on a line, 2 colors, non-rigid.
ComputeOutput full_light_gather(const Snapshot& snap, const Tolerance& tol);

/// External-light gathering with 3 colors, rigid.
ComputeOutput ext_light_gather_3(const Snapshot& snap, const Tolerance& tol);

/// External-light gathering with 2 colors, rigid, local-awareness.
ComputeOutput ext_light_gather_2(const Snapshot& snap, const Tolerance& tol);

/// Internal-light endgame: 2-point configurations closer than D/2.
ComputeOutput int_light_gather(const Snapshot& snap, double d_local, const Tolerance& tol);

/// Colorless distance reduction toward [D/4, D/2); handles the intermediate
/// 3- and 4-point shapes its own half-finished rounds create.
ComputeOutput reduce_distance_lds(const Snapshot& snap, double d_local, const Tolerance& tol);

/// Colorless election of a unique LDS that keeps its length at least D/2.
ComputeOutput elect_lds_preserving_distance(const Snapshot& snap, double delta_local,
                                            double d_local, const Tolerance& tol);

/// Subroutines of the election above, exposed for direct testing.
ComputeOutput reduce_num_lds(const Snapshot& snap, double delta_local, const Tolerance& tol);
ComputeOutput make_diameter(const Snapshot& snap, double delta_local, const Tolerance& tol);
ComputeOutput make_edge_on_border(const Snapshot& snap, const Tolerance& tol);

/// Hull-contracting election of a unique LDS (no lights). The cent variant
/// replaces the chirality-dependent choices with reflection-safe ones.
ComputeOutput elect_one_lds(const Snapshot& snap, bool cent_variant, const Tolerance& tol);

/// Self-stabilizing external-light gathering under a centralized scheduler.
ComputeOutput cent_ext_light_gather(const Snapshot& snap, const Tolerance& tol);

/// Arbitrary-view variant: movers adopt the target color so a merged
/// location always exposes it.
ComputeOutput cent_ext_light_gather_av(const Snapshot& snap, const Tolerance& tol);

/// Internal-light gathering under round-robin activation, rigid.
ComputeOutput rr_int_light_gather(const Snapshot& snap, const Tolerance& tol);

/// Pre-step for the rigid external-light algorithms: collapse a collinear
/// configuration onto the endpoints and the exact midpoint. Equidistant
/// robots break the tie toward the midpoint.
ComputeOutput onlds_reduction_step(const Snapshot& snap, const Tolerance& tol);

enum class PipelinePhase { Gather4, Reduce5, Elect6, Done };

/// Which internal-light phase handles a configuration of these (global or
/// local) points. All robots of a round agree on the answer.
PipelinePhase pipeline_route(const std::vector<Point>& points, double d_param,
                             const Tolerance& tol);

ComputeOutput internal_pipeline_dispatch(const Snapshot& snap, double delta_local,
                                         double d_local, const Tolerance& tol);

bool a3p_shape(const std::vector<Point>& points, double d_param, const Tolerance& tol);
bool a4p_shape(const std::vector<Point>& points, double d_param, const Tolerance& tol);

/// Static description of a runnable algorithm: what it assumes, how it is
/// validated, and its composed compute (election prefix included where the
/// construction calls for one).
struct AlgorithmSpec {
    std::string name;
    int palette_size = 2;
    std::vector<std::string> color_names;
    ObservationPolicy policy;
    bool needs_rigid = false;
    bool needs_delta_known = false;
    bool needs_distance_param = false;  // D of the internal-light pipeline
    std::vector<SchedulerKind> schedulers;
    std::string init_kind;  // generator default: onLDS | d-distant | arbitrary | distinct

    std::function<ComputeOutput(const Snapshot&, double delta_local, double d_local,
                                const Tolerance&)>
        compute;
    std::function<bool(const Configuration&, double d_param, const Tolerance&)> input_ok;

    bool allows_scheduler(SchedulerKind k) const;
};

const AlgorithmSpec& algorithm_by_name(const std::string& name);
std::vector<std::string> algorithm_names();

}  // namespace gathersim
