#pragma once

#include <string>

#include "gathersim/engine.hpp"

namespace gathersim {

/// One JSON record per line: header, then a record per round, then the
/// result. Field order is fixed and numbers are emitted shortest-roundtrip,
/// so a (config, seed) pair reproduces the file byte for byte.
std::string trace_to_jsonl(const Trace& trace);

void write_trace_file(const Trace& trace, const std::string& path);

/// Minimal reader for the conformance subcommand: label patterns, LDS
/// lengths, endpoint counts and configurations per round.
Trace read_trace_file(const std::string& path);

}  // namespace gathersim
