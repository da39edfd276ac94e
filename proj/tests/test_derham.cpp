#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpcalc/derham.hpp"
#include "hpcalc/randomgen.hpp"

using namespace hpcalc;

namespace {

GradedElement V(const RingPtr& r, const std::string& n) { return GradedElement::var(r, n); }

} // namespace

TEST_CASE("de Rham differential on polynomials and forms") {
    auto R = RingBuilder().form_var("x", 0).form_var("y", 0).with_u().build();
    auto x = V(R, "x"), y = V(R, "y"), dx = V(R, "dx"), dy = V(R, "dy");

    CHECK(de_rham(x * x * y) == (x * y).scaled(2) * dx + x * x * dy);
    CHECK(de_rham(x * dy) == dx * dy);
    CHECK(de_rham(dx).is_zero());
    CHECK(de_rham(GradedElement::u_power(R, 2)).is_zero());
}

TEST_CASE("quotient rule on the denominator") {
    auto base = RingBuilder().form_var("x", 0).with_u().build();
    auto R = base->with_denominator(GradedElement::var(base, "x").terms());
    auto x = V(R, "x"), dx = V(R, "dx");
    auto inv_x = GradedElement::one(R).over_f(1);

    CHECK(de_rham(inv_x) == (-dx).over_f(2));
    // d(dx/x) = -dx dx / x^2 = 0
    CHECK(de_rham(dx.over_f(1)).is_zero());
    // d(x^2/x) = d(x) exactly (canonical form has no denominator)
    CHECK(de_rham((x * x).over_f(1)) == dx);
}

TEST_CASE("twisted differential D = dh + u d") {
    auto R = RingBuilder().form_var("x", 0).form_var("t", 2).with_u().build();
    auto x = V(R, "x"), t = V(R, "t"), dx = V(R, "dx"), dt = V(R, "dt");

    TwistedComplex HN(R, x * t); // h = ft with f = x
    CHECK(HN.apply_d(GradedElement::one(R)) == t * dx + x * dt);
    CHECK(HN.apply_d(x) == x * t * dx + x * x * dt + de_rham(x).times_u(1));
    CHECK(HN.apply_d(x) == x * t * dx + x * x * dt + dx.times_u(1));

    TwistedComplex flat(R, GradedElement::zero(R)); // h = 0
    CHECK(flat.is_cycle(GradedElement::one(R)));
    CHECK_FALSE(flat.is_cycle(x));
}

TEST_CASE("is_cycle for the normalized cycle shape") {
    // alpha = x^s dx over Q = Q[x], f = x: d(alpha) = 0 and alpha t^s-type
    // cycles over the t-extended ring
    auto R = RingBuilder().form_var("x", 0).form_var("t", 2).with_u().build();
    auto x = V(R, "x"), t = V(R, "t"), dx = V(R, "dx");
    int s = 3;
    auto alpha = x.pow(s) * dx;
    TwistedComplex HN(R, x * t);
    auto omega = de_rham(alpha) * t.pow(s);
    CHECK(de_rham(alpha).is_zero());
    CHECK(HN.is_cycle(omega));
}

TEST_CASE("d is a differential and a graded derivation (random)") {
    auto base = RingBuilder().form_var("x", 0).form_var("y", 0).form_var("t1", 2).with_u().build();
    auto R = base->with_denominator(
        (V(base, "x") * V(base, "x") + V(base, "y") * V(base, "y")).terms());
    RandomGen gen(3);
    RandomGen::Opts o;
    o.max_u = 2;
    o.max_f_power = 2;
    for (int i = 0; i < 200; ++i) {
        auto a = gen.element(R, o);
        CHECK(de_rham(de_rham(a)).is_zero());
        auto ha = gen.homogeneous(R, o), hb = gen.homogeneous(R, o);
        auto lhs = de_rham(ha * hb);
        auto sign = sign_pow(*ha.degree());
        CHECK(lhs == de_rham(ha) * hb + (ha * de_rham(hb)).scaled(sign));
    }
}

TEST_CASE("D squares to zero for random degree-2 potentials") {
    auto R = RingBuilder().form_var("x", 0).form_var("y", 0).form_var("t1", 2).with_u().build();
    RandomGen gen(5);
    RandomGen::Opts pot;
    pot.max_terms = 3;
    pot.max_exponent = 2;
    pot.allow_odd = false;
    RandomGen::Opts o;
    o.max_u = 2;
    for (int i = 0; i < 100; ++i) {
        // random degree-2 potential: degree-2 component of a random polynomial
        auto h = gen.element(R, pot).homogeneous_part(2);
        TwistedComplex c(R, h);
        auto a = gen.element(R, o);
        CHECK(c.apply_d(c.apply_d(a)).is_zero());
    }
}

TEST_CASE("cycle identity used by the boundary formula") {
    // for alpha with f d(alpha) = s df alpha:
    // D(d(alpha) t^s) = (-1)^{j+1} (s d(alpha) t^{s-1} dt u + s df alpha t^s dt)
    // where j + 1 = deg(d(alpha) t^s)
    auto R = RingBuilder().form_var("x", 0).form_var("y", 0).form_var("t", 2).with_u().build();
    auto x = V(R, "x"), y = V(R, "y"), t = V(R, "t"), dt = V(R, "dt");
    auto dx = V(R, "dx"), dy = V(R, "dy");

    auto f = x * x + y * y;
    auto df = de_rham(f);
    TwistedComplex HN(R, f * t);

    // alpha = p(f) df satisfies f d(alpha) = s df alpha (both sides 0) for any s;
    // alpha = f^s dy satisfies it with d(alpha) != 0
    std::vector<GradedElement> alphas = {df, f * df, (f * f + f).scaled(2) * df, x * dx * dy,
                                         f * f * dy};
    std::vector<int> esses = {1, 2, 3, 2, 2};
    for (size_t k = 0; k < alphas.size(); ++k) {
        const auto& alpha = alphas[k];
        int s = esses[k];
        REQUIRE(f * de_rham(alpha) == de_rham(f) * alpha * GradedElement::constant(R, s));
        auto lhs = HN.apply_d(de_rham(alpha) * t.pow(s));
        auto dalpha = de_rham(alpha);
        int deg = *(dalpha * t.pow(s)).degree(); // = j + 1
        auto rhs = (dalpha * t.pow(s - 1) * dt).times_u(1).scaled(s) + (df * alpha * t.pow(s) * dt).scaled(s);
        CHECK(lhs == rhs.scaled(sign_pow(deg)));
    }
}
