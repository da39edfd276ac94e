#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace hpcalc {

// A monomial in a fixed ring layout: exponent vector over the even variables,
// a bitmask over the odd (exterior) variables, and a power of the degree-2
// variable u (negative only when u has been inverted). Interpretation of the
// slots belongs to the RingSpec; the monomial itself is plain data so that a
// RingSpec can store a denominator polynomial without a circular dependency.
struct Monomial {
    std::vector<int> even;   // exponents, size = number of even variables
    std::uint64_t odd = 0;   // bit i set = odd variable i present (at most once)
    int u_pow = 0;

    bool is_unit() const {
        if (odd != 0 || u_pow != 0) return false;
        for (int e : even)
            if (e != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded-lex-flavored total order used both as the map key order and as the
// term order for exact division: total even exponent first, then the exponent
// vector lexicographically, then the odd mask, then the u power. Multiplying
// by an even, u-free monomial (the only kind a denominator can be) preserves
// the order, which is what the division algorithm needs.
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        long ta = 0, tb = 0;
        for (int e : a.even) ta += e;
        for (int e : b.even) tb += e;
        if (ta != tb) return ta < tb;
        if (a.even != b.even) return a.even < b.even;
        if (a.odd != b.odd) return a.odd < b.odd;
        return a.u_pow < b.u_pow;
    }
};

// Sign of merging two odd-variable products kept in declared order:
// (-1)^{number of transpositions}, or 0 if they share a variable.
// Returns +1, -1, or 0.
inline int odd_merge_sign(std::uint64_t a, std::uint64_t b) {
    if (a & b) return 0;
    int inversions = 0;
    std::uint64_t bb = b;
    while (bb) {
        int j = __builtin_ctzll(bb);
        bb &= bb - 1;
        // elements of a strictly above j must move past b_j
        std::uint64_t above = (j == 63) ? 0 : (a >> (j + 1));
        inversions += __builtin_popcountll(above);
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

} // namespace hpcalc
