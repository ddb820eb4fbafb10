#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <string>

namespace trendsolve {

// Qualitative value. The canonical order Pos < Zero < Neg is the
// enumeration and sort order used everywhere (scenario ids depend on it).
enum class Sign : std::uint8_t { Pos = 0, Zero = 1, Neg = 2 };

constexpr std::array<Sign, 3> kAllSigns{Sign::Pos, Sign::Zero, Sign::Neg};

constexpr char sign_char(Sign s) {
    switch (s) {
        case Sign::Pos: return '+';
        case Sign::Zero: return '0';
        case Sign::Neg: return '-';
    }
    return '?';
}

constexpr Sign negate(Sign s) {
    switch (s) {
        case Sign::Pos: return Sign::Neg;
        case Sign::Zero: return Sign::Zero;
        case Sign::Neg: return Sign::Pos;
    }
    return Sign::Zero;
}

// Sign of s*s.
constexpr Sign qsquare(Sign s) {
    return s == Sign::Zero ? Sign::Zero : Sign::Pos;
}

// Non-empty subset of {+, 0, -}. The full set renders as '*'.
class SignSet {
public:
    constexpr SignSet() : mask_(0) {}          // empty; valid only transiently
    constexpr SignSet(Sign s) : mask_(bit(s)) {}

    static constexpr SignSet full() { return SignSet(raw(0b111)); }
    static constexpr SignSet empty_set() { return SignSet(raw(0)); }
    static constexpr SignSet of(Sign s) { return SignSet(s); }

    constexpr bool contains(Sign s) const { return mask_ & bit(s); }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr bool is_full() const { return mask_ == 0b111; }
    constexpr bool is_singleton() const {
        return mask_ == 1 || mask_ == 2 || mask_ == 4;
    }

    constexpr int size() const {
        return (mask_ & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1);
    }

    // Requires is_singleton().
    constexpr Sign single() const {
        assert(is_singleton());
        return mask_ == 1 ? Sign::Pos : mask_ == 2 ? Sign::Zero : Sign::Neg;
    }

    constexpr SignSet operator|(SignSet o) const { return SignSet(raw(mask_ | o.mask_)); }
    constexpr SignSet operator&(SignSet o) const { return SignSet(raw(mask_ & o.mask_)); }
    constexpr SignSet& operator|=(SignSet o) { mask_ |= o.mask_; return *this; }

    constexpr bool subset_of(SignSet o) const { return (mask_ & ~o.mask_) == 0; }

    constexpr bool operator==(const SignSet&) const = default;
    // Orders singletons as + < 0 < -, with larger sets after; only used
    // for deterministic tie-breaking.
    constexpr bool operator<(SignSet o) const { return mask_ < o.mask_; }

    constexpr std::uint8_t mask() const { return mask_; }

    std::string str() const {
        if (is_full()) return "*";
        std::string out;
        for (Sign s : kAllSigns)
            if (contains(s)) out.push_back(sign_char(s));
        return out.empty() ? "()" : out;
    }

private:
    struct raw {
        constexpr explicit raw(std::uint8_t m) : m(m) {}
        std::uint8_t m;
    };
    constexpr explicit SignSet(raw r) : mask_(r.m) {}
    static constexpr std::uint8_t bit(Sign s) {
        return static_cast<std::uint8_t>(1u << static_cast<std::uint8_t>(s));
    }
    std::uint8_t mask_;
};

namespace detail {

// Qualitative sum of two definite signs. (+)+(-) is any sign.
constexpr SignSet qadd_signs(Sign a, Sign b) {
    if (a == Sign::Zero) return SignSet(b);
    if (b == Sign::Zero) return SignSet(a);
    if (a == b) return SignSet(a);
    return SignSet::full();
}

// Ordinary sign product.
constexpr Sign qmul_signs(Sign a, Sign b) {
    if (a == Sign::Zero || b == Sign::Zero) return Sign::Zero;
    return a == b ? Sign::Pos : Sign::Neg;
}

}  // namespace detail

// Element-wise qualitative sum lifted to sets by union.
constexpr SignSet qadd(SignSet a, SignSet b) {
    SignSet out = SignSet::empty_set();
    for (Sign x : kAllSigns) {
        if (!a.contains(x)) continue;
        for (Sign y : kAllSigns) {
            if (!b.contains(y)) continue;
            out |= detail::qadd_signs(x, y);
        }
    }
    return out;
}

// Element-wise sign product lifted to sets.
constexpr SignSet qmul(SignSet a, SignSet b) {
    SignSet out = SignSet::empty_set();
    for (Sign x : kAllSigns) {
        if (!a.contains(x)) continue;
        for (Sign y : kAllSigns) {
            if (!b.contains(y)) continue;
            out |= SignSet(detail::qmul_signs(x, y));
        }
    }
    return out;
}

}  // namespace trendsolve
