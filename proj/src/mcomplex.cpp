#include "hpcalc/mcomplex.hpp"

#include "hpcalc/randomgen.hpp"

namespace hpcalc {

namespace {

// replicate a ring's variables into a builder (paired vars via form_var so
// partner wiring is rebuilt; unpaired odds appended at the end)
RingBuilder builder_from(const RingSpec& base) {
    RingBuilder b;
    for (const auto& ev : base.even_vars()) {
        if (ev.partner >= 0) {
            if (base.odd_vars()[ev.partner].name != "d" + ev.name)
                throw ring_error("paired odd variable must be named d" + ev.name);
            b.form_var(ev.name, ev.degree);
        } else {
            b.even_var(ev.name, ev.degree);
        }
    }
    for (const auto& ov : base.odd_vars())
        if (ov.partner < 0) b.odd_var(ov.name, ov.degree);
    return b;
}

} // namespace

MComplex::MComplex(const RingPtr& base, const GradedElement& f, const GradedElement& g)
    : base_(base), f_base_(f), g_base_(g) {
    if (base->u_enabled() || base->has_denominator())
        throw ring_error("coefficient ring must have no u and no denominator");
    if (base->has_name(kTName) || base->has_name(std::string("d") + kTName))
        throw ring_error("coefficient ring already uses the name t");
    if (f.is_zero()) throw ring_error("f must be nonzero");
    auto fd = f.degree();
    if (!fd || *fd != 0) throw ring_error("f must be homogeneous of degree 0");
    auto gd = g.degree();
    if (!g.is_zero() && (!gd || *gd != 2)) throw ring_error("g must be homogeneous of degree 2");
    for (const auto& [m, c] : g.terms())
        if (m.odd != 0 || m.u_pow != 0) throw ring_error("g must be a ring element (no forms, no u)");
    if (f.f_power() != 0 || g.f_power() != 0) throw ring_error("f and g must have no denominator");

    auto bt = builder_from(*base);
    bt.form_var(kTName, 2);
    At_ = bt.with_u(false).build();
    At_p_ = At_->with_u(true);
    auto ba = builder_from(*base);
    A_ = ba.with_u(false).build();
    A_p_ = A_->with_u(true);

    f_At_ = f.transport(At_);
    f_At_p_ = f.transport(At_p_);
    g_At_ = g.transport(At_);
    g_At_p_ = g.transport(At_p_);

    At_loc_ = At_->with_denominator(f_At_.terms());
    At_loc_p_ = At_p_->with_denominator(f_At_p_.terms());
    A_loc_ = A_->with_denominator(f.transport(A_).terms());
    A_loc_p_ = A_p_->with_denominator(f.transport(A_p_).terms());
}

TwistedComplex MComplex::complex_At(bool periodic) const {
    const auto& R = ring_At(periodic);
    return TwistedComplex(R, f_At(periodic) * GradedElement::var(R, kTName) + g_At(periodic));
}

TwistedComplex MComplex::complex_At_loc(bool periodic) const {
    const auto& R = ring_At_loc(periodic);
    return TwistedComplex(R, (f_At(periodic) * GradedElement::var(ring_At(periodic), kTName) +
                              g_At(periodic))
                                 .retag(R));
}

TwistedComplex MComplex::complex_A(bool periodic) const {
    return TwistedComplex(ring_A(periodic), g_base_.transport(ring_A(periodic)));
}

TwistedComplex MComplex::complex_A_loc(bool periodic) const {
    return TwistedComplex(ring_A_loc(periodic), g_base_.transport(ring_A_loc(periodic)));
}

void MComplex::require_no_dt(const GradedElement& m, const char* op) const {
    if (m.contains_var(std::string("d") + kTName))
        throw ring_error(std::string(op) + ": element of M must not contain dt");
}

GradedElement MComplex::diff_M(const GradedElement& m) const {
    require_no_dt(m, "diff_M");
    const auto& R = m.ring();
    auto t = GradedElement::var(R, kTName);
    auto df = de_rham(f_base_.transport(R));
    auto dg = de_rham(g_base_.transport(R));
    return t * df * m + dg * m + de_rham(m, {kTName}).times_u(1);
}

GradedElement MComplex::nabla(const GradedElement& m) const {
    require_no_dt(m, "nabla");
    return f_base_.transport(m.ring()) * m + m.partial(kTName).times_u(1);
}

GradedElement MComplex::phi(const GradedElement& m) const {
    require_no_dt(m, "phi");
    bool p = is_periodic_elem(m);
    const auto& target = ring_A_loc(p);
    GradedElement out = GradedElement::zero(target);
    int imax = m.max_exponent(kTName);
    for (int i = 0; i <= imax; ++i) {
        GradedElement ci = m.even_coefficient(kTName, i);
        if (ci.is_zero()) continue;
        GradedElement moved = ci.transport(target);
        out = out + moved.times_u(i).scaled(sign_pow(i + 1) * factorial(i)).over_f(i + 1);
    }
    return out;
}

GradedElement MComplex::preimage_nabla_t(const GradedElement& m) const {
    require_no_dt(m, "preimage_nabla_t");
    if (m.f_power() != 0) throw ring_error("preimage_nabla_t: element of M must have no denominator");
    int shift = m.min_u_power();
    if (shift < 0) return preimage_nabla_t(m.times_u(-shift)).times_u(shift);
    if (!phi(m).is_zero()) throw not_in_kernel("preimage_nabla_t: phi(m) != 0");

    const auto& R = m.ring();
    const GradedElement f = f_base_.transport(R);
    int I = m.max_exponent(kTName);
    int J = m.max_u_power();
    auto omega = [&](int i, int j) -> GradedElement {
        if (i < 0 || j < 0) return GradedElement::zero(R);
        return m.even_coefficient(kTName, i).u_coefficient(j);
    };
    // beta[i][j], zero outside 0 <= i <= I, 0 <= j <= J
    std::vector<std::vector<GradedElement>> beta(
        I + 1, std::vector<GradedElement>(J + 1, GradedElement::zero(R)));
    auto beta_at = [&](int i, int j) -> GradedElement {
        if (i < 0 || j < 0 || i > I || j > J) return GradedElement::zero(R);
        return beta[i][j];
    };
    // beta_{0,j} = omega_{0,j+1}; beta_{i,0} = omega_{i+1,0}/f (at (0,0) the
    // two descriptions agree on kernel elements; the first is used)
    for (int j = 0; j <= J; ++j) beta[0][j] = omega(0, j + 1);
    for (int i = 1; i <= I; ++i) {
        auto q = divide_exact(omega(i + 1, 0), f);
        if (!q) throw not_divisible("preimage_nabla_t: omega_{i,0} not divisible by f");
        beta[i][0] = *q;
    }
    for (int i = 1; i <= I; ++i)
        for (int j = 1; j <= J; ++j)
            beta[i][j] = (omega(i, j + 1) - f * beta_at(i - 1, j + 1)).scaled(Rational(1, i + 1));

    GradedElement t = GradedElement::var(R, kTName);
    GradedElement out = GradedElement::zero(R);
    for (int i = 0; i <= I; ++i)
        for (int j = 0; j <= J; ++j)
            if (!beta[i][j].is_zero()) out = out + beta[i][j] * t.pow(i).times_u(j);
    return out;
}

GradedElement MComplex::phi_section(const GradedElement& target) const {
    if (!target.ring()->u_inverted())
        throw ring_error("phi_section: periodic setting required (u must be invertible)");
    int s = target.f_power();
    if (s == 0) throw ring_error("phi_section: denominator exponent must be >= 1");
    const auto& Mring = ring_At(true);
    GradedElement t = GradedElement::var(Mring, kTName);
    GradedElement out = GradedElement::zero(Mring);
    GradedElement num(target.ring()->without_denominator(),
                      GradedElement::Terms(target.terms()), 0);
    for (int l = num.min_u_power(); l <= num.max_u_power(); ++l) {
        GradedElement al = num.u_coefficient(l);
        if (al.is_zero()) continue;
        out = out + al.transport(Mring) * t.pow(s - 1).times_u(l - s + 1);
    }
    return out.scaled(sign_pow(s) / factorial(s - 1));
}

GradedElement MComplex::contract(const GradedElement& omega) const {
    bool p = is_periodic_elem(omega);
    const auto& R = ring_At_loc(p);
    GradedElement w = omega.retag(R);
    int dt_idx = R->odd_index(std::string("d") + kTName);
    int t_idx = R->even_index(kTName);
    std::uint64_t dt_bit = 1ull << dt_idx;

    GradedElement out = GradedElement::zero(R);
    for (const auto& [mono, c] : w.terms()) {
        if (!(mono.odd & dt_bit)) continue;
        // strip dt, moving it to the rightmost slot
        Monomial m2 = mono;
        m2.odd &= ~dt_bit;
        std::uint64_t above = (dt_idx == 63) ? 0 : (m2.odd >> (dt_idx + 1));
        Rational c2 = (__builtin_popcountll(above) % 2 == 0) ? c : -c;
        int j = m2.even[t_idx];
        m2.even[t_idx] = 0;
        int k = m2.u_pow;
        m2.u_pow = 0;
        int deg2 = R->monomial_degree(m2);
        GradedElement w2(R, GradedElement::Terms{{m2, c2}}, 0);
        // (-1)^{|w2|} sum_l (-1)^l w2 u^l / f^{l+1} * d^l(t^j)/dt^l
        for (int l = 0; l <= j; ++l) {
            Rational fall = factorial(j) / factorial(j - l);
            GradedElement term = w2.times_u(l + k)
                                     .over_f(l + 1)
                                     .scaled(sign_pow(deg2 + l) * fall) *
                                 GradedElement::var(R, kTName).pow(j - l);
            out = out + term;
        }
    }
    return out.over_f(w.f_power());
}

std::pair<GradedElement, GradedElement> MComplex::cone_split(const GradedElement& omega) const {
    const auto& R = omega.ring();
    int dt_idx = R->odd_index(std::string("d") + kTName);
    if (dt_idx < 0) throw ring_error("cone_split: ring has no dt");
    std::uint64_t dt_bit = 1ull << dt_idx;
    GradedElement::Terms no_dt, with_dt;
    for (const auto& [mono, c] : omega.terms()) {
        if (!(mono.odd & dt_bit)) {
            no_dt.emplace(mono, c);
            continue;
        }
        Monomial m2 = mono;
        m2.odd &= ~dt_bit;
        std::uint64_t above = (dt_idx == 63) ? 0 : (m2.odd >> (dt_idx + 1));
        Rational c2 = (__builtin_popcountll(above) % 2 == 0) ? c : -c;
        with_dt.emplace(std::move(m2), c2);
    }
    return {GradedElement(R, std::move(no_dt), omega.f_power()),
            GradedElement(R, std::move(with_dt), omega.f_power())};
}

FiberElement MComplex::to_fiber(const GradedElement& omega) const {
    auto [w1, w2] = cone_split(omega);
    const auto& R = omega.ring();
    GradedElement::Terms signed_terms;
    for (const auto& [mono, c] : w2.terms()) {
        Rational cc = (R->monomial_degree(mono) % 2 == 0) ? Rational(-c) : c; // (-1)^{deg+1}
        signed_terms.emplace(mono, cc);
    }
    return {w1, GradedElement(R, std::move(signed_terms), w2.f_power())};
}

FiberElement MComplex::fiber_nabla_diff(const FiberElement& e) const {
    return {diff_M(e.top), -nabla(e.top) - diff_M(e.bottom)};
}

GradedElement MComplex::tau(const GradedElement& omega) const {
    bool p = is_periodic_elem(omega);
    return omega.subst_zero({kTName}).transport(ring_A(p));
}

GradedElement MComplex::tau_M(const GradedElement& m) const {
    require_no_dt(m, "tau_M");
    return tau(m);
}

GradedElement MComplex::can1(const GradedElement& omega) const {
    return omega.retag(ring_At_loc(is_periodic_elem(omega)));
}

GradedElement MComplex::can2(const GradedElement& a) const {
    return a.retag(ring_A_loc(is_periodic_elem(a)));
}

GradedElement MComplex::hbar(const GradedElement& omega) const {
    bool p = is_periodic_elem(omega);
    const auto& R = omega.ring();
    const auto& target = ring_A_loc(p);
    int dt_idx = R->odd_index(std::string("d") + kTName);
    int t_idx = R->even_index(kTName);
    std::uint64_t dt_bit = 1ull << dt_idx;

    GradedElement out = GradedElement::zero(target);
    for (const auto& [mono, c] : omega.terms()) {
        if (!(mono.odd & dt_bit)) continue;
        Monomial m2 = mono;
        m2.odd &= ~dt_bit;
        std::uint64_t above = (dt_idx == 63) ? 0 : (m2.odd >> (dt_idx + 1));
        Rational c2 = (__builtin_popcountll(above) % 2 == 0) ? c : -c;
        int b = m2.even[t_idx];
        m2.even[t_idx] = 0;
        int k = m2.u_pow;
        m2.u_pow = 0;
        int deg2 = R->monomial_degree(m2);
        GradedElement w2(R->without_denominator(), GradedElement::Terms{{m2, c2}}, 0);
        out = out + w2.transport(target)
                        .times_u(b + k)
                        .over_f(b + 1)
                        .scaled(sign_pow(deg2 + b) * factorial(b));
    }
    return out.over_f(omega.f_power());
}

FiberElement MComplex::sigma(const GradedElement& omega, bool strict) const {
    if (strict) {
        bool p = is_periodic_elem(omega);
        if (!complex_At(p).is_cycle(omega)) throw ring_error("sigma: input is not a cycle");
    }
    return {tau(omega), -hbar(omega)};
}

FiberElement MComplex::fiber_can2_diff(const FiberElement& e, bool periodic) const {
    auto DA = complex_A(periodic);
    auto DAl = complex_A_loc(periodic);
    return {DA.apply_d(e.top), -can2(e.top) - DAl.apply_d(e.bottom)};
}

FiberElement MComplex::fiber_map(const FiberElement& e) const {
    return {tau_M(e.top), -phi(e.bottom)};
}

Report MComplex::verify_key_lemma(int samples, std::uint64_t seed) const {
    Report rep;
    RandomGen gen(seed);

    RandomGen::Opts m_opts; // elements of M: no dt
    m_opts.max_terms = 3;
    m_opts.max_exponent = 3;
    m_opts.max_u = 2;
    m_opts.skip_vars = {std::string("d") + kTName};

    RandomGen::Opts full_opts; // elements of Omega_{A[t]}[u]
    full_opts.max_terms = 3;
    full_opts.max_exponent = 3;
    full_opts.max_u = 2;

    RandomGen::Opts loc_opts = full_opts; // localized, u inverted
    loc_opts.min_u = -1;
    loc_opts.max_f_power = 2;

    run_check(rep, "contract-homotopy", "D∘h + h∘D = id on (A[1/f,t], ft+g)", [&] {
        for (int rep_i = 0; rep_i < samples; ++rep_i) {
            bool p = rep_i % 2 == 1;
            auto C = complex_At_loc(p);
            RandomGen::Opts o = loc_opts;
            if (!p) o.min_u = 0;
            auto w = gen.element(ring_At_loc(p), o);
            if (C.apply_d(contract(w)) + contract(C.apply_d(w)) != w) return w.str();
        }
        return std::string();
    });

    run_check(rep, "phi-chain-map", "phi∘D_M = D∘phi", [&] {
        auto DAl = complex_A_loc(false);
        for (int i = 0; i < samples; ++i) {
            auto m = gen.element(ring_At(false), m_opts);
            if (phi(diff_M(m)) != DAl.apply_d(phi(m))) return m.str();
        }
        return std::string();
    });

    run_check(rep, "phi-nabla-t", "phi∘(nabla∘t) = 0", [&] {
        auto t = GradedElement::var(ring_At(false), kTName);
        for (int i = 0; i < samples; ++i) {
            auto m = gen.element(ring_At(false), m_opts);
            if (!phi(nabla(t * m)).is_zero()) return m.str();
        }
        return std::string();
    });

    run_check(rep, "nabla-chain-map", "D_M∘nabla = nabla∘D_M", [&] {
        for (int i = 0; i < samples; ++i) {
            auto m = gen.element(ring_At(false), m_opts);
            if (diff_M(nabla(m)) != nabla(diff_M(m))) return m.str();
        }
        return std::string();
    });

    run_check(rep, "preimage-roundtrip", "preimage((nabla∘t)(m)) = m", [&] {
        auto t = GradedElement::var(ring_At(false), kTName);
        for (int i = 0; i < samples; ++i) {
            auto m = gen.element(ring_At(false), m_opts);
            if (preimage_nabla_t(nabla(t * m)) != m) return m.str();
        }
        return std::string();
    });

    run_check(rep, "phi-section", "phi∘phi_section = id", [&] {
        RandomGen::Opts o;
        o.max_terms = 3;
        o.max_exponent = 3;
        o.min_u = -2;
        o.max_u = 2;
        // resampling bounded: when f is a unit every canonical form has
        // denominator exponent 0 and the s >= 1 domain is empty
        int done = 0;
        for (int attempts = 0; done < samples && attempts < 20 * samples; ++attempts) {
            auto a = gen.element(ring_A_loc(true), o);
            auto target = a.over_f(gen.uniform(1, 2));
            if (target.f_power() == 0) continue; // denominator cancelled, resample
            ++done;
            if (phi(phi_section(target)) != target) return target.str();
        }
        return std::string();
    });

    run_check(rep, "split-intertwines", "dt-split matches the fiber(nabla) differential", [&] {
        auto C = complex_At(false);
        for (int i = 0; i < samples; ++i) {
            auto w = gen.element(ring_At(false), full_opts);
            if (to_fiber(C.apply_d(w)) != fiber_nabla_diff(to_fiber(w))) return w.str();
        }
        return std::string();
    });

    run_check(rep, "phi-nabla-vs-tau", "phi∘nabla = -can2∘tau on M", [&] {
        for (int i = 0; i < samples; ++i) {
            auto m = gen.element(ring_At(false), m_opts);
            if (phi(nabla(m)) != -can2(tau_M(m))) return m.str();
        }
        return std::string();
    });

    run_check(rep, "sigma-composite", "sigma = (fiber map)∘(dt split)", [&] {
        for (int i = 0; i < samples; ++i) {
            bool p = i % 2 == 1;
            auto w = gen.element(ring_At(p), full_opts);
            if (sigma(w) != fiber_map(to_fiber(w))) return w.str();
        }
        return std::string();
    });

    run_check(rep, "hbar-homotopy", "D∘hbar + hbar∘D = can2∘tau", [&] {
        for (int i = 0; i < samples; ++i) {
            bool p = i % 2 == 1;
            auto C = complex_At(p);
            auto DAl = complex_A_loc(p);
            RandomGen::Opts o = full_opts;
            if (p) o.min_u = -1;
            auto w = gen.element(ring_At(p), o);
            if (DAl.apply_d(hbar(w)) + hbar(C.apply_d(w)) != can2(tau(w))) return w.str();
        }
        return std::string();
    });

    run_check(rep, "sigma-cycles", "sigma maps cycles to fiber(can2) cycles", [&] {
        for (int i = 0; i < samples; ++i) {
            bool p = i % 2 == 1;
            auto C = complex_At(p);
            auto w = C.apply_d(gen.element(ring_At(p), full_opts)); // a boundary, hence a cycle
            auto img = sigma(w, true);
            if (!fiber_can2_diff(img, p).is_zero()) return w.str();
        }
        return std::string();
    });

    return rep;
}

} // namespace hpcalc
