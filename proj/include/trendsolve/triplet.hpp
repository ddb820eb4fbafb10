#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trendsolve/sign.hpp"

namespace trendsolve {

// (value, first derivative, second derivative) of one variable.
// d2 is a definite sign in full mode and the full set '*' when second
// derivatives are ignored.
struct Triplet {
    Sign value = Sign::Pos;
    Sign d1 = Sign::Zero;
    SignSet d2 = SignSet(Sign::Zero);

    bool operator==(const Triplet&) const = default;

    // Canonical order: value, then d1, then d2.
    bool operator<(const Triplet& o) const {
        if (value != o.value) return value < o.value;
        if (d1 != o.d1) return d1 < o.d1;
        return d2 < o.d2;
    }

    // Interchange form: three symbols from {+,0,-,*}, e.g. "++-", "+-*".
    std::string str() const;
};

// Per-slot match sets; '*' in any slot matches anything.
struct TripletPattern {
    SignSet value = SignSet::full();
    SignSet d1 = SignSet::full();
    SignSet d2 = SignSet::full();

    bool matches(const Triplet& t) const {
        return value.contains(t.value) && d1.contains(t.d1) && t.d2.subset_of(d2);
    }
};

// Parses a three-symbol string. Wildcards are allowed only where
// `wildcardValue`/`wildcardD1` say so; d2 always accepts '*'.
// Returns nullopt on malformed input.
std::optional<Triplet> parse_triplet(const std::string& text);
std::optional<TripletPattern> parse_triplet_pattern(const std::string& text);

// One-step transitions of a positively valued variable that stays
// positive. Throws SemanticError if t.value != Pos or t.d2 is not a
// definite sign. The source triplet is never in the result; results are
// in canonical order.
std::vector<Triplet> successors(const Triplet& t);

// True iff `to == from` or `to` is a listed successor of `from`.
// Same preconditions as successors().
bool transition_allowed(const Triplet& from, const Triplet& to);

}  // namespace trendsolve
