#pragma once

#include <set>

#include "hpcalc/element.hpp"

namespace hpcalc {

// de Rham differential: the odd degree -1 derivation with d(v) = dv on paired
// even variables, d(dv) = 0, d(u) = 0, and the quotient rule on denominators
// d(g/f^s) = (d(g)f - s df g)/f^{s+1}. Even variables listed in
// treat_constant are not differentiated (used for coefficient rings, e.g.
// forms over A inside A[t]).
GradedElement de_rham(const GradedElement& a, const std::set<std::string>& treat_constant = {});

// A twisted complex (Omega^*[u], dh + u d): forms over the ring with the
// degree-2 potential h, differential D(a) = d(h)a + u d(a). The periodic
// flavor is the same data over a u-inverted ring.
class TwistedComplex {
public:
    TwistedComplex(RingPtr ring, GradedElement potential);

    const RingPtr& ring() const { return ring_; }
    const GradedElement& potential() const { return potential_; }
    const GradedElement& d_potential() const { return d_potential_; }
    bool periodic() const { return ring_->u_inverted(); }

    GradedElement apply_d(const GradedElement& a) const;
    bool is_cycle(const GradedElement& a) const { return apply_d(a).is_zero(); }

private:
    RingPtr ring_;
    GradedElement potential_;
    GradedElement d_potential_;
};

} // namespace hpcalc
