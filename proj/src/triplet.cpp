#include "trendsolve/triplet.hpp"

#include <array>

#include "trendsolve/error.hpp"

namespace trendsolve {

namespace {

constexpr int pair_index(Sign d1, Sign d2) {
    return static_cast<int>(d1) * 3 + static_cast<int>(d2);
}

struct Targets {
    int count;
    std::array<std::array<Sign, 2>, 3> to;  // (d1, d2) pairs
};

// Transition table for a positively valued variable, indexed by
// (d1, d2) of the source triplet. Targets are stored in canonical order.
constexpr std::array<Targets, 9> kTransitions{{
    // (+,+) -> (+,0)
    {1, {{{Sign::Pos, Sign::Zero}, {}, {}}}},
    // (+,0) -> (+,+), (+,-)
    {2, {{{Sign::Pos, Sign::Pos}, {Sign::Pos, Sign::Neg}, {}}}},
    // (+,-) -> (+,0), (0,0), (0,-)
    {3, {{{Sign::Pos, Sign::Zero}, {Sign::Zero, Sign::Zero}, {Sign::Zero, Sign::Neg}}}},
    // (0,+) -> (+,+)
    {1, {{{Sign::Pos, Sign::Pos}, {}, {}}}},
    // (0,0) -> (+,+), (-,-)
    {2, {{{Sign::Pos, Sign::Pos}, {Sign::Neg, Sign::Neg}, {}}}},
    // (0,-) -> (-,-)
    {1, {{{Sign::Neg, Sign::Neg}, {}, {}}}},
    // (-,+) -> (0,+), (0,0), (-,0)
    {3, {{{Sign::Zero, Sign::Pos}, {Sign::Zero, Sign::Zero}, {Sign::Neg, Sign::Zero}}}},
    // (-,0) -> (-,+), (-,-)
    {2, {{{Sign::Neg, Sign::Pos}, {Sign::Neg, Sign::Neg}, {}}}},
    // (-,-) -> (-,0)
    {1, {{{Sign::Neg, Sign::Zero}, {}, {}}}},
}};

Sign require_definite_d2(const Triplet& t) {
    if (!t.d2.is_singleton())
        throw SemanticError("triplet " + t.str() +
                            " has no definite second derivative");
    return t.d2.single();
}

std::optional<Sign> sign_of_char(char c) {
    switch (c) {
        case '+': return Sign::Pos;
        case '0': return Sign::Zero;
        case '-': return Sign::Neg;
        default: return std::nullopt;
    }
}

}  // namespace

std::string Triplet::str() const {
    std::string out;
    out.push_back(sign_char(value));
    out.push_back(sign_char(d1));
    if (d2.is_full())
        out.push_back('*');
    else if (d2.is_singleton())
        out.push_back(sign_char(d2.single()));
    else
        out.push_back('?');
    return out;
}

std::optional<Triplet> parse_triplet(const std::string& text) {
    if (text.size() != 3) return std::nullopt;
    auto value = sign_of_char(text[0]);
    auto d1 = sign_of_char(text[1]);
    if (!value || !d1) return std::nullopt;
    Triplet t;
    t.value = *value;
    t.d1 = *d1;
    if (text[2] == '*') {
        t.d2 = SignSet::full();
    } else {
        auto d2 = sign_of_char(text[2]);
        if (!d2) return std::nullopt;
        t.d2 = SignSet(*d2);
    }
    return t;
}

std::optional<TripletPattern> parse_triplet_pattern(const std::string& text) {
    if (text.size() != 3) return std::nullopt;
    TripletPattern p;
    SignSet* slots[3] = {&p.value, &p.d1, &p.d2};
    for (int i = 0; i < 3; ++i) {
        if (text[i] == '*') {
            *slots[i] = SignSet::full();
        } else {
            auto s = sign_of_char(text[i]);
            if (!s) return std::nullopt;
            *slots[i] = SignSet(*s);
        }
    }
    return p;
}

std::vector<Triplet> successors(const Triplet& t) {
    if (t.value != Sign::Pos)
        throw SemanticError("transition rules are defined only for "
                            "positively valued variables, got " + t.str());
    Sign d2 = require_definite_d2(t);
    const Targets& row = kTransitions[pair_index(t.d1, d2)];
    std::vector<Triplet> out;
    out.reserve(row.count);
    for (int i = 0; i < row.count; ++i)
        out.push_back(Triplet{Sign::Pos, row.to[i][0], SignSet(row.to[i][1])});
    return out;
}

bool transition_allowed(const Triplet& from, const Triplet& to) {
    if (from.value != Sign::Pos || to.value != Sign::Pos)
        throw SemanticError("transition rules are defined only for "
                            "positively valued variables");
    Sign fd2 = require_definite_d2(from);
    Sign td2 = require_definite_d2(to);
    if (from.d1 == to.d1 && fd2 == td2) return true;
    const Targets& row = kTransitions[pair_index(from.d1, fd2)];
    for (int i = 0; i < row.count; ++i)
        if (row.to[i][0] == to.d1 && row.to[i][1] == td2) return true;
    return false;
}

}  // namespace trendsolve
