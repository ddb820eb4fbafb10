#pragma once

#include <string>

#include "trendsolve/model.hpp"

namespace trendsolve {

// Parses the line-oriented model DSL:
//
//   var NAME [+|0|-]          variable declaration (value sign, default +)
//   rel SUP X Y               supporting effect of X on Y
//   rel RED X Y               reducing effect
//   rel SHAPE s1s2 X Y        s1 in {+,-}, s2 in {+,0,-}
//   eq <sum> = <sum>          sum: "0" or signed monomials, factors
//                             NAME | D(NAME) | DD(NAME) joined by '*'
//
// '#' starts a comment; blank lines are ignored. Names must be declared
// before use. Throws ParseError with a 1-based line and column.
TrendModel parse_model(const std::string& text);

// Parses a single "eq ..." line against an existing model's variables.
TrendEquation parse_equation_line(const std::string& line, const TrendModel& model);

// Inverse of parse_model up to structural equality.
std::string render_model(const TrendModel& model);

std::string render_equation(const TrendEquation& eq);
std::string render_relation(const TrendRelation& rel);

// CSV: header row of names, then an n x n numeric body. Symmetry is
// required within 1e-9; diagonal entries are ignored by all consumers.
CorrelationMatrix parse_correlation_csv(const std::string& text);

}  // namespace trendsolve
