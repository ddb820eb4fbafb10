#pragma once

#include <memory>
#include <string>
#include <vector>

#include "trendsolve/model.hpp"

namespace trendsolve {

namespace ode_detail {
struct Expr;
}

// Autonomous first-order ODE system with positive parameters.
//
//   param NAME pos            positive scalar
//   param NAME prop           proportion in (0,1); enables (1 - NAME)
//   ode NAME = <expression>   one line per state, in output order
//
// Expressions are sums of products/quotients of integer literals,
// parameters and state names, with parenthesized sums distributed during
// translation. '#' comments and blank lines as in the model DSL.
struct OdeSystem {
    struct Param {
        std::string name;
        bool proportion;
    };
    struct StateEquation {
        std::string state;
        std::shared_ptr<ode_detail::Expr> rhs;
        int line;
    };
    std::vector<Param> params;
    std::vector<StateEquation> equations;

    bool is_state(const std::string& name) const;
    const Param* find_param(const std::string& name) const;
};

OdeSystem parse_ode(const std::string& text);

struct TranslationReport {
    // States as positive variables plus one trend equation per state.
    TrendModel model;

    struct MonomialNote {
        std::string source;                   // expanded source monomial
        std::string emitted;                  // resulting trend monomial
        std::vector<std::string> eliminated;  // positive factors removed
        bool negative;                        // placed on the left side
    };
    std::vector<std::vector<MonomialNote>> notes;  // per state
};

// Expands every product over sums into monomials, including
// (1 - p)E -> E - pE, deletes positive constants and divisors, and lays
// each equation out as "D(state) + negated monomials = positive
// monomials". Like terms are never cancelled across sides.
TranslationReport translate(const OdeSystem& sys);

// The emitted model-DSL fragment ("var" and "eq" lines).
std::string render_translation(const TranslationReport& report);

}  // namespace trendsolve
