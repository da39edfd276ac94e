#include "hpcalc/derham.hpp"

namespace hpcalc {

namespace {

// derivation on a denominator-free element
GradedElement de_rham_num(const GradedElement& a, const std::vector<bool>& constant) {
    const RingPtr& R = a.ring();
    const auto& evens = R->even_vars();
    GradedElement::Terms out;
    for (const auto& [m, c] : a.terms()) {
        for (size_t i = 0; i < evens.size(); ++i) {
            if (m.even[i] == 0 || constant[i]) continue;
            if (evens[i].partner < 0)
                throw ring_error("variable " + evens[i].name + " has no differential");
            std::uint64_t bit = 1ull << evens[i].partner;
            int sign = odd_merge_sign(bit, m.odd);
            if (sign == 0) continue;
            Monomial mm = m;
            mm.even[i] -= 1;
            mm.odd |= bit;
            Rational cc = c * m.even[i];
            if (sign < 0) cc = -cc;
            auto [it, fresh] = out.emplace(std::move(mm), cc);
            if (!fresh) it->second += cc;
        }
    }
    return GradedElement(R, std::move(out), 0);
}

} // namespace

GradedElement de_rham(const GradedElement& a, const std::set<std::string>& treat_constant) {
    const RingPtr& R = a.ring();
    std::vector<bool> constant(R->even_vars().size(), false);
    for (const auto& name : treat_constant) {
        int vi = R->even_index(name);
        if (vi < 0) throw ring_error("unknown even variable: " + name);
        constant[vi] = true;
    }
    GradedElement num(R, GradedElement::Terms(a.terms()), 0);
    if (a.f_power() == 0) return de_rham_num(num, constant);
    // d(g/f^s) = (d(g) f - s df g) / f^{s+1}, df on the left
    GradedElement f = denominator_element(R);
    GradedElement d_num =
        de_rham_num(num, constant) * f - de_rham_num(f, constant).scaled(a.f_power()) * num;
    return GradedElement(R, GradedElement::Terms(d_num.terms()), a.f_power() + 1);
}

TwistedComplex::TwistedComplex(RingPtr ring, GradedElement potential)
    : ring_(std::move(ring)), potential_(std::move(potential)) {
    if (!ring_->u_enabled()) throw ring_error("twisted complex needs u in the ring");
    potential_ = potential_.retag(ring_);
    auto deg = potential_.degree();
    if (!potential_.is_zero() && (!deg || *deg != 2))
        throw ring_error("potential must be homogeneous of degree 2");
    if (potential_.contains_var("u")) throw ring_error("potential must not involve u");
    d_potential_ = de_rham(potential_);
}

GradedElement TwistedComplex::apply_d(const GradedElement& a) const {
    GradedElement x = a.retag(ring_);
    return d_potential_ * x + de_rham(x).times_u(1);
}

} // namespace hpcalc
