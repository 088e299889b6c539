#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "specgap/graph.hpp"

namespace specgap {

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Graph spec grammar: path:L, box:d:L, complete:n, cycle:n, star:k,
/// g6:<graph6>, file:<path> (graph6 or "n <count>" edge list).
Graph parse_graph_spec(std::string_view spec, std::size_t vertex_budget = kDefaultVertexBudget);

/// Runs the command line; reports go to `out` (unless --output is given),
/// diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specgap
