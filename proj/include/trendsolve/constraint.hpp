#pragma once

#include <string>
#include <vector>

#include "trendsolve/model.hpp"
#include "trendsolve/scenario.hpp"

namespace trendsolve {

// Shape constraint for Y(X), derived from the chain rule:
//   (a) sign(d1_Y) = s1 * sign(d1_X)
//   (b) sign(d2_Y) in qadd(s2 * qsquare(d1_X), s1 * d2_X)
// Part (b) applies in full mode only.
struct CompiledRelation {
    Sign s1;
    Sign s2;
    std::size_t src;
    std::size_t dst;
    std::string label;
};

struct SlotRef {
    Factor::Slot slot;
    std::size_t var;
};

struct CompiledMonomial {
    Sign coeff;
    std::vector<SlotRef> refs;
};

// An equation normalized to "0 in eval(LHS - RHS)". Satisfaction is
// zero-inclusion of the qualitative monomial sum; like terms are never
// cancelled.
struct CompiledSum {
    std::vector<CompiledMonomial> monomials;
    std::string label;
    bool derived = false;  // produced by time-differentiation
};

struct CompiledModel {
    Mode mode = Mode::Full;
    std::vector<Variable> variables;
    std::vector<CompiledRelation> relations;
    std::vector<CompiledSum> sums;
};

// Formal time derivative by the product rule; VALUE -> D1, D1 -> D2.
// Throws SemanticError on order-2 input.
TrendEquation differentiate(const TrendEquation& eq);

// Compiles relations and equations into sign constraints. In full mode
// every order <= 1 equation is additionally differentiated once and the
// derived equation appended; order-2 equations are kept undifferentiated.
// In first-order mode shape part (b) is dropped and order-2 equations
// are dropped entirely. Relations must touch positive-valued variables.
CompiledModel compile(const TrendModel& model, Mode mode);

// Exact re-evaluation of every compiled constraint against a total
// assignment (triplets aligned with cm.variables). Returns a description
// of each violated constraint; empty means the scenario satisfies the
// model. Independent of the solver's search path.
std::vector<std::string> scenario_violations(const CompiledModel& cm,
                                             const Scenario& s);

bool satisfies(const CompiledModel& cm, const Scenario& s);

}  // namespace trendsolve
