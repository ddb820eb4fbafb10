#pragma once

#include <string>
#include <vector>

#include "trendsolve/model.hpp"
#include "trendsolve/solve.hpp"

namespace trendsolve {

// Upper-triangle entries with |c| > 0 become relations: SUP for positive
// coefficients, RED for negative, sourced at the lower index. All
// variables are declared positive.
TrendModel derive_relations(const CorrelationMatrix& c);

struct RepairStep {
    std::string a, b;            // removed pair, lower index first
    double value;                // the removed coefficient
    std::size_t scenario_count;  // solution size after the removal
};

struct RepairTrace {
    std::vector<RepairStep> steps;
    bool exhausted = false;  // ran out of coefficients while still trivial
    TrendModel model;        // final derived model
    ScenarioSet scenarios;   // its solution
};

// Solves the derived model and, while the solution is trivial (empty or
// the steady state alone), removes the remaining coefficient with the
// smallest absolute value (ties broken by lowest index pair).
RepairTrace repair(const CorrelationMatrix& c, const SolveOptions& opts = {});

// {"steps":[{"pair":["A","B"],"value":-0.1,"scenarios":9},...],"exhausted":false}
std::string render_trace_json(const RepairTrace& trace);

}  // namespace trendsolve
