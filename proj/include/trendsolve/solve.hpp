#pragma once

#include <cstddef>

#include "trendsolve/constraint.hpp"
#include "trendsolve/model.hpp"
#include "trendsolve/scenario.hpp"

namespace trendsolve {

struct SolveOptions {
    // Worker count for the parallel kernels; 1 forces the serial
    // reference path, 0 picks the OpenMP default. Output is identical
    // for every setting.
    int threads = 0;
    // Variable cap for exhaustive enumeration.
    std::size_t brute_force_cap = 6;
};

// Enumerates every scenario satisfying the compiled model, by
// backtracking over per-variable (d1, d2) domains with sign-set
// propagation. Scenarios come out in canonical order with ids 1..m.
ScenarioSet solve(const TrendModel& model, Mode mode, const SolveOptions& opts = {});

// Independent oracle: scans all 9^n (3^n first-order) assignments and
// keeps the ones satisfying every constraint. Must equal solve() on any
// model within the cap; throws SemanticError above it.
ScenarioSet brute_force_solve(const TrendModel& model, Mode mode,
                              const SolveOptions& opts = {});

}  // namespace trendsolve
