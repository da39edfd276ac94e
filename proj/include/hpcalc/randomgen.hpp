#pragma once

#include <random>

#include "hpcalc/element.hpp"

namespace hpcalc {

// Seeded generator of random elements for property checks: uniform random
// monomials with bounded exponents, random odd subsets, small nonzero
// rational-free integer coefficients. Deterministic for a fixed seed.
class RandomGen {
public:
    struct Opts {
        int max_terms = 4;
        int max_exponent = 4;
        int coeff_bound = 3;   // coefficients in [-bound, bound] \ {0}
        int max_u = 0;         // u exponent in [min_u, max_u]
        int min_u = 0;
        int max_f_power = 0;   // denominator exponent in [0, max_f_power]
        bool allow_odd = true;
        std::vector<std::string> skip_vars; // never used in generated monomials
    };

    explicit RandomGen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    GradedElement element(const RingPtr& ring) { return element(ring, Opts{}); }

    GradedElement element(const RingPtr& ring, const Opts& o) {
        std::vector<bool> skip_even(ring->even_vars().size(), false);
        std::vector<bool> skip_odd(ring->odd_vars().size(), false);
        for (const auto& name : o.skip_vars) {
            int ei = ring->even_index(name);
            if (ei >= 0) skip_even[ei] = true;
            int oi = ring->odd_index(name);
            if (oi >= 0) skip_odd[oi] = true;
        }
        GradedElement::Terms terms;
        int n = uniform(1, o.max_terms);
        for (int k = 0; k < n; ++k) {
            Monomial m;
            m.even.resize(ring->even_vars().size());
            for (size_t i = 0; i < m.even.size(); ++i)
                m.even[i] = skip_even[i] ? 0 : uniform(0, o.max_exponent);
            if (o.allow_odd)
                for (size_t j = 0; j < ring->odd_vars().size(); ++j)
                    if (!skip_odd[j] && uniform(0, 2) == 0) m.odd |= 1ull << j;
            if (ring->u_enabled()) m.u_pow = uniform(o.min_u, o.max_u);
            int c = uniform(1, o.coeff_bound);
            if (uniform(0, 1)) c = -c;
            auto [it, fresh] = terms.emplace(std::move(m), Rational(c));
            if (!fresh) it->second += c;
        }
        int fp = (o.max_f_power > 0 && ring->has_denominator()) ? uniform(0, o.max_f_power) : 0;
        return GradedElement(ring, std::move(terms), fp);
    }

    // one homogeneous component of a random element (possibly zero)
    GradedElement homogeneous(const RingPtr& ring) { return homogeneous(ring, Opts{}); }

    GradedElement homogeneous(const RingPtr& ring, const Opts& o) {
        GradedElement e = element(ring, o);
        if (e.is_zero() || e.is_homogeneous()) return e;
        int d = ring->monomial_degree(e.terms().begin()->first);
        return e.homogeneous_part(d);
    }

private:
    std::mt19937_64 rng_;
};

} // namespace hpcalc
