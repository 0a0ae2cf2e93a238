#pragma once

#include <string>

#include "gathersim/engine.hpp"

namespace gathersim {

/// Trajectory plot: one polyline per robot, each round's segment stroked in
/// that robot's light color, with the initial SEC and LDS endpoints drawn.
/// Output is deterministic for a given trace.
std::string trace_to_svg(const Trace& trace, const Tolerance& tol);

void write_svg_file(const Trace& trace, const Tolerance& tol, const std::string& path);

}  // namespace gathersim
