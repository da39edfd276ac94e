#include "hpcalc/boundary.hpp"

namespace hpcalc {

namespace {

void require_plain_form(const MComplex& M, const GradedElement& alpha) {
    if (alpha.f_power() != 0) throw ring_error("class numerator must have no denominator");
    if (alpha.contains_var("u")) throw ring_error("class numerator must not involve u");
    if (alpha.ring()->has_name(MComplex::kTName) && alpha.contains_var(MComplex::kTName))
        throw ring_error("class numerator must not involve t");
}

} // namespace

GradedElement class_element(const MComplex& M, const BoundaryClass& c) {
    require_plain_form(M, c.alpha);
    if (c.s < 0) throw ring_error("denominator exponent must be >= 0");
    const auto& L = M.ring_A_loc(true);
    return c.alpha.transport(L).times_u(c.l).over_f(c.s);
}

std::string class_invariant_witness(const MComplex& M, const BoundaryClass& c) {
    require_plain_form(M, c.alpha);
    const auto& R = c.alpha.ring();
    GradedElement f = denominator_element(M.ring_A_loc(false)).transport(R);
    GradedElement lhs = f * de_rham(c.alpha);
    GradedElement rhs = de_rham(f) * c.alpha;
    if (lhs != rhs.scaled(c.s)) return "f*d(alpha) != s*df*alpha for alpha = " + c.alpha.str();
    return {};
}

GradedElement boundary_map(const MComplex& M, const BoundaryClass& c) {
    std::string bad = class_invariant_witness(M, c);
    if (!bad.empty()) throw ring_error("boundary_map: " + bad);
    const auto& R = M.ring_At(true);
    if (c.s == 0) return GradedElement::zero(R);
    GradedElement alpha = c.alpha.transport(R);
    GradedElement t = GradedElement::var(R, MComplex::kTName);
    return de_rham(alpha * t.pow(c.s))
        .times_u(c.l + 1 - c.s)
        .scaled(sign_pow(c.s) / factorial(c.s));
}

std::vector<BoundaryClass> normalize_cycle(const MComplex& M, const GradedElement& omega,
                                           std::optional<int> homological_degree) {
    const auto& L = M.ring_A_loc(true);
    GradedElement w = omega.retag(L);
    if (!M.complex_A_loc(true).is_cycle(w)) throw not_a_cycle("normalize_cycle: input is not a cycle");
    if (homological_degree && !w.is_zero()) {
        auto d = w.degree();
        if (!d || *d != -*homological_degree)
            throw ring_error("normalize_cycle: input is not of pure homological degree " +
                             std::to_string(*homological_degree));
    }
    std::vector<BoundaryClass> out;
    const auto& base = M.ring_A(false); // no u; forms over A
    for (int l = w.min_u_power(); l <= w.max_u_power(); ++l) {
        GradedElement group = w.u_coefficient(l); // minimal f power via canonical form
        if (group.is_zero()) continue;
        BoundaryClass c;
        c.alpha = GradedElement(base, GradedElement::Terms(group.terms()), 0)
                      .transport(M.ring_A(false));
        c.s = group.f_power();
        c.l = l;
        std::string bad = class_invariant_witness(M, c);
        if (!bad.empty())
            throw ring_error("normalize_cycle: stratum violates the cycle condition: " + bad);
        out.push_back(std::move(c));
    }
    return out;
}

Report verify_boundary_via_fiber(const MComplex& M, const BoundaryClass& c) {
    Report rep;

    run_check(rep, "class-invariant", "f·d(alpha) = s·df·alpha",
              [&] { return class_invariant_witness(M, c); });

    GradedElement gamma = boundary_map(M, c);
    auto HPt = M.complex_At(true);
    const auto& R = M.ring_At(true);

    run_check(rep, "boundary-cycle-identities",
              "D(d(alpha) t^s) and D(s alpha t^{s-1} dt) match; gamma is a cycle", [&] {
                  if (!HPt.is_cycle(gamma)) return "D(gamma) != 0 for gamma = " + gamma.str();
                  if (c.s == 0) return std::string();
                  GradedElement alpha = c.alpha.transport(R);
                  GradedElement t = GradedElement::var(R, MComplex::kTName);
                  GradedElement dt = GradedElement::var(R, std::string("d") + MComplex::kTName);
                  GradedElement df = de_rham(denominator_element(M.ring_At_loc(true)).transport(R));
                  // per homogeneous component of d(alpha) t^s, since the sign
                  // (-1)^{j+1} has the parity of the component's degree
                  GradedElement dat = de_rham(alpha) * t.pow(c.s);
                  GradedElement rhs_all = GradedElement::zero(R);
                  GradedElement lhs_all = HPt.apply_d(dat);
                  std::vector<int> degrees;
                  for (const auto& [mono, coeff] : dat.terms()) {
                      int d = R->monomial_degree(mono);
                      bool seen = false;
                      for (int dd : degrees) seen = seen || dd == d;
                      if (!seen) degrees.push_back(d);
                  }
                  GradedElement dalpha = de_rham(alpha);
                  for (int d : degrees) {
                      GradedElement da_comp = dalpha.homogeneous_part(d - 2 * c.s);
                      GradedElement a_comp = alpha.homogeneous_part(d - 2 * c.s + 1);
                      GradedElement rhs =
                          (da_comp * t.pow(c.s - 1) * dt).times_u(1).scaled(c.s) +
                          (df * a_comp * t.pow(c.s) * dt).scaled(c.s);
                      rhs_all = rhs_all + rhs.scaled(sign_pow(d));
                      // the second display: D(s a t^{s-1} dt) equals the same value
                      GradedElement second =
                          HPt.apply_d((a_comp * t.pow(c.s - 1) * dt).scaled(c.s));
                      if (second != rhs)
                          return "D(s alpha t^{s-1} dt) mismatch for alpha component " + a_comp.str();
                  }
                  if (lhs_all != rhs_all)
                      return "D(d(alpha) t^s) does not match the displayed value for alpha = " +
                             c.alpha.str();
                  return std::string();
              });

    run_check(rep, "fiber-image", "sigma(gamma) = (0, alpha u^l / f^s)", [&] {
        FiberElement img = M.sigma(gamma, true);
        if (!img.top.is_zero()) return "tau(gamma) != 0: " + img.top.str();
        GradedElement expected = c.s == 0 ? GradedElement::zero(M.ring_A_loc(true))
                                          : class_element(M, c);
        if (img.bottom != expected)
            return "-hbar(gamma) = " + img.bottom.str() + " != " + expected.str();
        return std::string();
    });

    return rep;
}

} // namespace hpcalc
