#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpcalc/monomial.hpp"
#include "hpcalc/rational.hpp"

namespace hpcalc {

class RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;

struct ring_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvenVar {
    std::string name;
    int degree = 0;   // even, >= 0
    int partner = -1; // index into odd vars, or -1
};

struct OddVar {
    std::string name;
    int degree = 0;   // odd
    int partner = -1; // index into even vars, or -1
};

// The ambient graded-commutative ring: even polynomial variables, odd
// exterior variables, optionally the degree-2 variable u (optionally
// inverted), and optionally one distinguished denominator element f (a
// nonzero polynomial in the even degree-0 variables). Instances are
// immutable; the with_* methods derive new rings sharing the same variable
// layout, so elements move between them by plain re-tagging.
class RingSpec {
public:
    RingSpec() = default;

    static constexpr int kMaxOdd = 64;

    const std::vector<EvenVar>& even_vars() const { return even_; }
    const std::vector<OddVar>& odd_vars() const { return odd_; }
    bool u_enabled() const { return u_enabled_; }
    bool u_inverted() const { return u_inverted_; }
    bool has_denominator() const { return !denominator_.empty(); }
    const std::map<Monomial, Rational, MonoLess>& denominator_terms() const { return denominator_; }

    int even_index(const std::string& name) const {
        for (size_t i = 0; i < even_.size(); ++i)
            if (even_[i].name == name) return static_cast<int>(i);
        return -1;
    }
    int odd_index(const std::string& name) const {
        for (size_t i = 0; i < odd_.size(); ++i)
            if (odd_[i].name == name) return static_cast<int>(i);
        return -1;
    }
    bool has_name(const std::string& name) const {
        return even_index(name) >= 0 || odd_index(name) >= 0 || name == "u";
    }

    int monomial_degree(const Monomial& m) const {
        int d = 0;
        for (size_t i = 0; i < even_.size(); ++i) d += m.even[i] * even_[i].degree;
        std::uint64_t mask = m.odd;
        while (mask) {
            int j = __builtin_ctzll(mask);
            mask &= mask - 1;
            d += odd_[j].degree;
        }
        return d + 2 * m.u_pow;
    }

    // structural identity: same variable layout, flags and denominator
    bool same_as(const RingSpec& o) const;

    // Derived rings (same variable layout).
    RingPtr with_u(bool inverted) const;
    // f given as a term map over this ring's layout; validated.
    RingPtr with_denominator(const std::map<Monomial, Rational, MonoLess>& f) const;
    RingPtr without_denominator() const;

private:
    friend class RingBuilder;
    std::vector<EvenVar> even_;
    std::vector<OddVar> odd_;
    bool u_enabled_ = false;
    bool u_inverted_ = false;
    std::map<Monomial, Rational, MonoLess> denominator_;
};

// Assembles a RingSpec. form_var adds an even variable together with its odd
// partner named "d"+name of degree one less (the layout used by all de Rham
// constructions); even_var / odd_var add unpaired variables.
class RingBuilder {
public:
    RingBuilder& even_var(const std::string& name, int degree);
    RingBuilder& odd_var(const std::string& name, int degree);
    RingBuilder& form_var(const std::string& name, int even_degree);
    RingBuilder& with_u(bool inverted = false) {
        u_enabled_ = true;
        u_inverted_ = inverted;
        return *this;
    }
    RingPtr build() const;

private:
    void check_fresh(const std::string& name) const;
    std::vector<EvenVar> even_;
    std::vector<OddVar> odd_;
    bool u_enabled_ = false;
    bool u_inverted_ = false;
};

} // namespace hpcalc
