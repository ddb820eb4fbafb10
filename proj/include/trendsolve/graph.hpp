#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trendsolve/scenario.hpp"
#include "trendsolve/solve.hpp"

namespace trendsolve {

struct TransitionGraph {
    ScenarioSet nodes;                        // ids preserved
    std::vector<std::pair<int, int>> edges;   // sorted ascending by (from, to)
};

// Directed edge a -> b iff a != b and every variable either keeps its
// triplet or moves to a listed successor. Requires full-mode scenarios
// with positive values. Pairwise checks are parallelized by row.
TransitionGraph build_graph(const ScenarioSet& ss, const SolveOptions& opts = {});

// True iff a directed path exists; reflexive. Unknown ids throw
// SemanticError.
bool reachable(const TransitionGraph& g, int from, int to);

// Deterministic DOT digraph; node label = id plus one "NAME=+++" line
// per variable. The empty graph renders as "digraph {}".
std::string export_dot(const TransitionGraph& g);

// {"nodes":[ids],"edges":[[a,b],...]} sorted ascending.
std::string export_graph_json(const TransitionGraph& g);

}  // namespace trendsolve
