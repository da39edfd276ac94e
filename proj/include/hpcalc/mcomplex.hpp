#pragma once

#include <cstdint>

#include "hpcalc/derham.hpp"
#include "hpcalc/report.hpp"

namespace hpcalc {

struct not_in_kernel : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct not_divisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An element of a mapping fiber: (top, bottom) with differential
// (x, y) -> (D x, -phi(x) - D y) for the connecting chain map phi. With this
// convention (tau, -hbar) is literally a chain map into fiber(can2), and the
// boundary inclusion of a localized class lands in the bottom slot.
struct FiberElement {
    GradedElement top;
    GradedElement bottom;
    bool operator==(const FiberElement& o) const { return top == o.top && bottom == o.bottom; }
    bool is_zero() const { return top.is_zero() && bottom.is_zero(); }
};

// The auxiliary complex M = (Omega_A[t, u], t df + dg + u d) over a
// coefficient form ring A, with the degree-0 element f, the degree-2 element
// g, and the operator calculus around it: the linear operators
// nabla = f + u d/dt and phi (with its one-sided inverses), the contracting
// homotopy of the localized t-extended twisted complex, and the mapping-fiber
// comparison maps. Elements of M are elements of the t-extended ring with no
// dt factor; the same ring carries the full twisted complex of A[t].
class MComplex {
public:
    // base: the form ring of A (paired even/odd variables, no u, no t, no
    // denominator). f: degree 0, in the degree-0 even variables. g: degree 2.
    MComplex(const RingPtr& base, const GradedElement& f, const GradedElement& g);

    static constexpr const char* kTName = "t";

    // rings (hn = u adjoined, hp = u inverted; loc = f inverted)
    const RingPtr& ring_At(bool periodic) const { return periodic ? At_p_ : At_; }
    const RingPtr& ring_At_loc(bool periodic) const { return periodic ? At_loc_p_ : At_loc_; }
    const RingPtr& ring_A(bool periodic) const { return periodic ? A_p_ : A_; }
    const RingPtr& ring_A_loc(bool periodic) const { return periodic ? A_loc_p_ : A_loc_; }

    const GradedElement& f_At(bool periodic = false) const { return periodic ? f_At_p_ : f_At_; }
    const GradedElement& g_At(bool periodic = false) const { return periodic ? g_At_p_ : g_At_; }

    // twisted complexes of the square
    TwistedComplex complex_At(bool periodic) const;     // (A[t], ft + g)
    TwistedComplex complex_At_loc(bool periodic) const; // (A[1/f, t], ft + g)
    TwistedComplex complex_A(bool periodic) const;      // (A, g)
    TwistedComplex complex_A_loc(bool periodic) const;  // (A[1/f], g)

    // differential of M itself: t df + dg + u d with t treated as a constant
    GradedElement diff_M(const GradedElement& m) const;

    // nabla(m) = f m + u dm/dt (Omega_A[u]-linear, no dt allowed)
    GradedElement nabla(const GradedElement& m) const;

    // phi(t^i) = (-1)^{i+1} i! u^i / f^{i+1}, extended Omega_A[u]-linearly;
    // lands in the localized complex over A
    GradedElement phi(const GradedElement& m) const;

    // the constructive preimage under nabla . t of a kernel element of phi
    GradedElement preimage_nabla_t(const GradedElement& m) const;

    // section of phi after inverting u: alpha u^l / f^s with s >= 1 maps to
    // (-1)^s/(s-1)! alpha t^{s-1} u^{l-s+1}
    GradedElement phi_section(const GradedElement& target) const;

    // contracting homotopy of (A[1/f, t], ft + g): D h + h D = id
    GradedElement contract(const GradedElement& omega) const;

    // decomposition omega = w1 + w2 dt over A[t] (dt moved to the right)
    std::pair<GradedElement, GradedElement> cone_split(const GradedElement& omega) const;

    // the identification HN(A[t], ft+g) ~ fiber(nabla): (w1, (-1)^{deg+1} w2)
    FiberElement to_fiber(const GradedElement& omega) const;
    FiberElement fiber_nabla_diff(const FiberElement& e) const;

    // set t = dt = 0, landing over A
    GradedElement tau(const GradedElement& omega) const;
    // set t = 0 on a dt-free element of M
    GradedElement tau_M(const GradedElement& m) const;
    // localization maps
    GradedElement can1(const GradedElement& omega) const; // A[t] -> A[1/f, t]
    GradedElement can2(const GradedElement& a) const;     // A -> A[1/f]

    // hbar(w1 t^a + w2 t^b dt) = (-1)^{|w2| + b} b! w2 u^b / f^{b+1}
    GradedElement hbar(const GradedElement& omega) const;

    // sigma = (tau, -hbar) into fiber(can2); strict verifies the input is a
    // cycle of (A[t], ft + g)
    FiberElement sigma(const GradedElement& omega, bool strict = false) const;
    FiberElement fiber_can2_diff(const FiberElement& e, bool periodic) const;
    // the chain map fiber(nabla) -> fiber(can2): (m1, m2) -> (tau_M m1, -phi m2)
    FiberElement fiber_map(const FiberElement& e) const;

    // replays the proof obligations of the localization square on random
    // samples: the contracting homotopy identity, the exactness witnesses
    // around nabla and phi, and the commuting fiber diagrams
    Report verify_key_lemma(int samples, std::uint64_t seed) const;

private:
    void require_no_dt(const GradedElement& m, const char* op) const;
    bool is_periodic_elem(const GradedElement& e) const { return e.ring()->u_inverted(); }

    RingPtr base_;
    RingPtr At_, At_p_, At_loc_, At_loc_p_;
    RingPtr A_, A_p_, A_loc_, A_loc_p_;
    GradedElement f_base_, g_base_;
    GradedElement f_At_, f_At_p_;
    GradedElement g_At_, g_At_p_;
};

} // namespace hpcalc
