#include "hpcalc/corechecks.hpp"

#include "hpcalc/derham.hpp"
#include "hpcalc/randomgen.hpp"

namespace hpcalc {

Report run_core_checks(const RingPtr& ring, int samples, std::uint64_t seed) {
    Report rep;
    RandomGen gen(seed);
    RandomGen::Opts o;
    o.max_terms = 3;
    o.max_exponent = 4;
    o.max_u = ring->u_enabled() ? 2 : 0;
    o.min_u = ring->u_inverted() ? -1 : 0;
    o.max_f_power = ring->has_denominator() ? 2 : 0;

    run_check(rep, "mul-associativity", "(a b) c = a (b c)", [&] {
        for (int i = 0; i < samples; ++i) {
            auto a = gen.element(ring, o), b = gen.element(ring, o), c = gen.element(ring, o);
            if ((a * b) * c != a * (b * c)) return a.str();
        }
        return std::string();
    });

    run_check(rep, "mul-distributivity", "a (b + c) = a b + a c", [&] {
        for (int i = 0; i < samples; ++i) {
            auto a = gen.element(ring, o), b = gen.element(ring, o), c = gen.element(ring, o);
            if (a * (b + c) != a * b + a * c) return a.str();
        }
        return std::string();
    });

    run_check(rep, "graded-commutativity", "a b = (-1)^{|a||b|} b a", [&] {
        for (int i = 0; i < samples; ++i) {
            auto a = gen.homogeneous(ring, o), b = gen.homogeneous(ring, o);
            auto ab = a * b, ba = b * a;
            long long s = static_cast<long long>(*a.degree()) * *b.degree();
            if (ab != (s % 2 == 0 ? ba : -ba)) return a.str() + " ; " + b.str();
        }
        return std::string();
    });

    run_check(rep, "degree-additivity", "deg(a b) = deg a + deg b", [&] {
        for (int i = 0; i < samples; ++i) {
            auto a = gen.homogeneous(ring, o), b = gen.homogeneous(ring, o);
            auto ab = a * b;
            if (ab.is_zero()) continue;
            if (*ab.degree() != *a.degree() + *b.degree()) return a.str() + " ; " + b.str();
        }
        return std::string();
    });

    run_check(rep, "canonical-idempotence", "re-normalizing a canonical form is the identity", [&] {
        for (int i = 0; i < samples; ++i) {
            auto a = gen.element(ring, o);
            if (GradedElement(a.ring(), GradedElement::Terms(a.terms()), a.f_power()) != a)
                return a.str();
        }
        return std::string();
    });

    if (ring->has_denominator()) {
        run_check(rep, "divide-roundtrip", "divide_exact(q f, f) = q", [&] {
            GradedElement f = denominator_element(ring);
            for (int i = 0; i < samples; ++i) {
                auto q = gen.element(ring, o);
                auto back = divide_exact(q * f, f);
                if (!back || *back != q) return q.str();
            }
            return std::string();
        });
    }

    run_check(rep, "derham-squared", "d(d(a)) = 0", [&] {
        for (int i = 0; i < samples; ++i) {
            auto a = gen.element(ring, o);
            if (!de_rham(de_rham(a)).is_zero()) return a.str();
        }
        return std::string();
    });

    run_check(rep, "derham-leibniz", "d(a b) = d(a) b + (-1)^{|a|} a d(b)", [&] {
        for (int i = 0; i < samples; ++i) {
            auto a = gen.homogeneous(ring, o), b = gen.homogeneous(ring, o);
            auto lhs = de_rham(a * b);
            auto rhs = de_rham(a) * b + (a * de_rham(b)).scaled(sign_pow(*a.degree()));
            if (lhs != rhs) return a.str() + " ; " + b.str();
        }
        return std::string();
    });

    if (ring->u_enabled()) {
        run_check(rep, "twisted-d-squared", "(dh + u d)^2 = 0 for random degree-2 h", [&] {
            RandomGen::Opts pot;
            pot.max_terms = 3;
            pot.max_exponent = 2;
            pot.allow_odd = false;
            for (int i = 0; i < samples; ++i) {
                GradedElement h = gen.element(ring, pot);
                // degree-2 ring-element part only
                GradedElement::Terms keep;
                for (const auto& [m, c] : h.terms())
                    if (m.u_pow == 0 && ring->monomial_degree(m) == 2) keep.emplace(m, c);
                TwistedComplex C(ring, GradedElement(ring, std::move(keep), 0));
                auto a = gen.element(ring, o);
                if (!C.apply_d(C.apply_d(a)).is_zero()) return a.str();
            }
            return std::string();
        });
    }

    return rep;
}

} // namespace hpcalc
