#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "hpcalc/ring.hpp"

namespace hpcalc {

// An element of a RingSpec's localized form ring: a rational linear
// combination of monomials divided by f^s, where f is the ring's
// distinguished denominator and s >= 0. Always kept canonical: no zero
// coefficients, and s minimal (the numerator is not divisible by f while
// s > 0), so equality of canonical forms is equality of values.
class GradedElement {
public:
    using Terms = std::map<Monomial, Rational, MonoLess>;

    GradedElement() = default;
    explicit GradedElement(RingPtr ring) : ring_(std::move(ring)) {}
    GradedElement(RingPtr ring, Terms terms, int f_power = 0);

    static GradedElement zero(const RingPtr& ring) { return GradedElement(ring); }
    static GradedElement constant(const RingPtr& ring, const Rational& c);
    static GradedElement one(const RingPtr& ring) { return constant(ring, 1); }
    static GradedElement var(const RingPtr& ring, const std::string& name);
    static GradedElement u_power(const RingPtr& ring, int k);

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    int f_power() const { return fpow_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // the coefficient of the unit monomial of a constant element
    Rational constant_value() const;

    // Degree under the convention deg(a0 da1...daj) = -j + sum |a_i|,
    // deg u = 2, deg f^-1 = 0. nullopt when terms disagree; zero -> 0.
    std::optional<int> degree() const;
    bool is_homogeneous() const { return degree().has_value(); }
    // the component of the given degree
    GradedElement homogeneous_part(int degree) const;

    GradedElement operator-() const;
    GradedElement operator+(const GradedElement& o) const;
    GradedElement operator-(const GradedElement& o) const;
    GradedElement operator*(const GradedElement& o) const;
    GradedElement scaled(const Rational& c) const;
    GradedElement pow(int k) const; // k < 0 only for the pure monomial u
    bool operator==(const GradedElement& o) const;
    bool operator!=(const GradedElement& o) const { return !(*this == o); }

    // multiply by u^k (k may be negative in a u-inverted ring)
    GradedElement times_u(int k) const;
    // divide by f^s, i.e. raise the denominator exponent (then canonicalize)
    GradedElement over_f(int s) const;

    // Formal partial derivative in an even variable (odd variables and u are
    // constants; the denominator gets the quotient rule).
    GradedElement partial(const std::string& even_var) const;

    // Set the listed even variables and their paired odd partners to zero.
    // Rejects variables that occur in the denominator.
    GradedElement subst_zero(const std::set<std::string>& vars) const;

    // Retag the element onto a ring with the same variable layout
    // (localization / u-inversion moves); checked.
    GradedElement retag(const RingPtr& target) const;
    // Move to a ring with a possibly different layout, matching variables by
    // name; odd reordering signs are accounted for. Variables absent from the
    // target may only occur with exponent zero.
    GradedElement transport(const RingPtr& target) const;

    // Coefficient of t^i (an even variable) with the factor removed.
    GradedElement even_coefficient(const std::string& var, int i) const;
    int max_exponent(const std::string& even_var) const;
    int min_u_power() const;
    int max_u_power() const;
    // u-power decomposition: coefficient of u^k with the u factor removed
    GradedElement u_coefficient(int k) const;
    bool contains_var(const std::string& name) const;

    // Canonical, re-parseable text form.
    std::string str() const;

private:
    void canonicalize();
    RingPtr ring_;
    Terms terms_;
    int fpow_ = 0;

    friend std::optional<GradedElement> divide_exact(const GradedElement&, const GradedElement&);
};

// Exact division of a by the polynomial f (nonzero, even degree-0 variables
// only, no denominator): returns q with q*f = a, or nullopt. Division by the
// single divisor under the graded-lex term order; zero remainder iff
// divisible, since {f} generates the principal ideal.
std::optional<GradedElement> divide_exact(const GradedElement& a, const GradedElement& f);

// The ring's denominator as an element (f^0 numerator form).
GradedElement denominator_element(const RingPtr& ring);

} // namespace hpcalc
