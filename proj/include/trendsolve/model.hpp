#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trendsolve/sign.hpp"

namespace trendsolve {

struct Variable {
    std::string name;
    Sign value_sign = Sign::Pos;

    bool operator==(const Variable&) const = default;
};

// Directed pairwise relation Y(X): d1 sign s1 in {+,-}, d2 sign s2 in
// {+,0,-}. "SUP" parses to (+,0) and "RED" to (-,0).
struct TrendRelation {
    Sign s1 = Sign::Pos;
    Sign s2 = Sign::Zero;
    std::string source;  // the independent variable X
    std::string target;  // Y

    bool operator==(const TrendRelation&) const = default;
};

struct Factor {
    enum class Slot { Value, D1, D2 };
    Slot slot = Slot::Value;
    std::string var;

    bool operator==(const Factor&) const = default;
};

struct Monomial {
    Sign coeff = Sign::Pos;  // Pos or Neg
    std::vector<Factor> factors;

    bool operator==(const Monomial&) const = default;
};

struct TrendEquation {
    std::vector<Monomial> lhs;
    std::vector<Monomial> rhs;

    // Maximal derivative order among factors: 0, 1 or 2.
    int order() const;

    bool operator==(const TrendEquation&) const = default;
};

struct TrendModel {
    std::vector<Variable> variables;  // declaration order is canonical
    std::vector<TrendRelation> relations;
    std::vector<TrendEquation> equations;

    std::optional<std::size_t> index_of(const std::string& name) const;

    bool operator==(const TrendModel&) const = default;
};

struct CorrelationMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<double>> entries;  // n x n, symmetric

    std::size_t size() const { return names.size(); }
};

}  // namespace trendsolve
