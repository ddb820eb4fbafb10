#pragma once

// Random model generation shared by the property tests. Everything is
// seeded, so failures reproduce.

#include <random>
#include <string>
#include <vector>

#include "trendsolve/model.hpp"

namespace testgen {

using namespace trendsolve;

inline Sign pick_sign(std::mt19937& rng) {
    return kAllSigns[std::uniform_int_distribution<int>(0, 2)(rng)];
}

inline TrendRelation random_relation(std::mt19937& rng, const TrendModel& m,
                                     const std::vector<std::size_t>& positive) {
    std::uniform_int_distribution<std::size_t> pick(0, positive.size() - 1);
    std::size_t a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    TrendRelation rel;
    rel.s1 = std::uniform_int_distribution<int>(0, 1)(rng) ? Sign::Pos : Sign::Neg;
    rel.s2 = pick_sign(rng);
    rel.source = m.variables[positive[a]].name;
    rel.target = m.variables[positive[b]].name;
    return rel;
}

inline TrendEquation random_equation(std::mt19937& rng, const TrendModel& m) {
    auto random_sum = [&](int max_monomials) {
        std::vector<Monomial> sum;
        int count = std::uniform_int_distribution<int>(0, max_monomials)(rng);
        for (int i = 0; i < count; ++i) {
            Monomial mono;
            mono.coeff = std::uniform_int_distribution<int>(0, 1)(rng) ? Sign::Pos
                                                                       : Sign::Neg;
            int factors = std::uniform_int_distribution<int>(1, 2)(rng);
            for (int f = 0; f < factors; ++f) {
                int slot = std::uniform_int_distribution<int>(0, 9)(rng);
                Factor factor;
                factor.slot = slot < 4   ? Factor::Slot::Value
                              : slot < 8 ? Factor::Slot::D1
                                         : Factor::Slot::D2;
                std::size_t v = std::uniform_int_distribution<std::size_t>(
                    0, m.variables.size() - 1)(rng);
                factor.var = m.variables[v].name;
                mono.factors.push_back(factor);
            }
            sum.push_back(mono);
        }
        return sum;
    };
    TrendEquation eq;
    eq.lhs = random_sum(2);
    eq.rhs = random_sum(2);
    return eq;
}

// 2..5 variables, up to 4 relations and 2 equations. Relations touch
// only positive variables; one variable may carry a 0 or - value sign to
// exercise equation evaluation.
inline TrendModel random_model(std::mt19937& rng) {
    TrendModel m;
    int nvars = std::uniform_int_distribution<int>(2, 5)(rng);
    for (int i = 0; i < nvars; ++i)
        m.variables.push_back(Variable{"V" + std::to_string(i), Sign::Pos});

    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < m.variables.size(); ++i) positive.push_back(i);
    if (std::uniform_int_distribution<int>(0, 4)(rng) == 0) {
        std::size_t odd = std::uniform_int_distribution<std::size_t>(
            0, m.variables.size() - 1)(rng);
        m.variables[odd].value_sign =
            std::uniform_int_distribution<int>(0, 1)(rng) ? Sign::Zero : Sign::Neg;
        positive.erase(positive.begin() + static_cast<long>(odd));
    }

    int rels = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < rels && positive.size() >= 2; ++i)
        m.relations.push_back(random_relation(rng, m, positive));

    int eqs = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < eqs; ++i)
        m.equations.push_back(random_equation(rng, m));
    return m;
}

}  // namespace testgen
