#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hpcalc/mfkoszul.hpp"
#include "hpcalc/randomgen.hpp"

using namespace hpcalc;

namespace {

RingPtr line() { return RingBuilder().form_var("x", 0).build(); }
RingPtr plane() { return RingBuilder().form_var("x", 0).form_var("y", 0).build(); }

MComplex context(const GradedElement& f) {
    return MComplex(f.ring(), f, GradedElement::zero(f.ring()));
}

MatrixFactorization mf_1x1(const GradedElement& a, const GradedElement& b) {
    MatrixFactorization mf;
    mf.A = ElemMatrix::from_rows(a.ring(), {{a}});
    mf.B = ElemMatrix::from_rows(a.ring(), {{b}});
    mf.potential = a * b;
    return mf;
}

MatrixFactorization rotation_mf(const RingPtr& Q) {
    auto x = GradedElement::var(Q, "x"), y = GradedElement::var(Q, "y");
    MatrixFactorization mf;
    mf.A = ElemMatrix::from_rows(Q, {{x, -y}, {y, x}});
    mf.B = ElemMatrix::from_rows(Q, {{x, y}, {-y, x}});
    mf.potential = x * x + y * y;
    return mf;
}

} // namespace

TEST_CASE("koszul complex satisfies the module relations") {
    auto Q = plane();
    auto x = GradedElement::var(Q, "x"), y = GradedElement::var(Q, "y");

    SUBCASE("c = 1") {
        auto P = koszul_complex(Q, {x * x});
        CHECK(P.rank() == 2);
        CHECK(P.invariant_witness().empty());
        // d sends e to f, E sends 1 to e and e to 0
        CHECK(P.d.at(0, 1) == x * x);
        CHECK(P.E[0].at(1, 0) == GradedElement::one(Q));
        CHECK(P.E[0].at(0, 1).is_zero());
    }

    SUBCASE("c = 2: d(e1 e2) = f1 e2 - f2 e1") {
        auto P = koszul_complex(Q, {x, y});
        CHECK(P.rank() == 4);
        CHECK(P.invariant_witness().empty());
        // basis order 0, e1, e2, e1e2; column of e1e2 = index 3
        CHECK(P.d.at(2, 3) == x);  // + f1 e2
        CHECK(P.d.at(1, 3) == -y); // - f2 e1
    }

    SUBCASE("c = 1, f = 0: exterior algebra") {
        auto P = koszul_complex(Q, {GradedElement::zero(Q)});
        CHECK(P.d.is_zero());
        CHECK(P.invariant_witness().empty());
    }

    SUBCASE("c = 3 with random potentials") {
        RandomGen gen(9);
        RandomGen::Opts o;
        o.allow_odd = false;
        o.max_exponent = 2;
        o.max_terms = 2;
        for (int i = 0; i < 5; ++i) {
            auto P = koszul_complex(Q, {gen.element(Q, o), gen.element(Q, o), gen.element(Q, o)});
            CHECK(P.invariant_witness().empty());
        }
    }
}

TEST_CASE("koszul duality produces matrix factorizations of sum f_i t_i") {
    auto Q = plane();
    auto x = GradedElement::var(Q, "x"), y = GradedElement::var(Q, "y");

    SUBCASE("c = 1 gives the rank-2 factorization with D^2 = f t I") {
        auto mf = koszul_dualize(koszul_complex(Q, {x}));
        CHECK(mf.rank() == 1);
        CHECK(mf.invariant_witness().empty());
        const auto& Qt = mf.A.ring();
        CHECK(mf.potential == GradedElement::var(Qt, "x") * GradedElement::var(Qt, "t1"));
    }

    SUBCASE("zero module") {
        KoszulModule P;
        P.ring = Q;
        P.d = ElemMatrix(Q, 0, 0);
        auto mf = koszul_dualize(P);
        CHECK(mf.rank() == 0);
        CHECK(mf.invariant_witness().empty());
    }

    SUBCASE("c = 2, f = (x, y): rank-4 operator with D^2 = (x t1 + y t2) I") {
        auto mf = koszul_dualize(koszul_complex(Q, {x, y}));
        CHECK(mf.rank() == 2);
        CHECK(mf.invariant_witness().empty());
        const auto& Qt = mf.A.ring();
        auto expected = GradedElement::var(Qt, "x") * GradedElement::var(Qt, "t1") +
                        GradedElement::var(Qt, "y") * GradedElement::var(Qt, "t2");
        CHECK(mf.potential == expected);
    }

    SUBCASE("random potential tuples, c <= 3") {
        RandomGen gen(31);
        RandomGen::Opts o;
        o.allow_odd = false;
        o.max_exponent = 2;
        o.max_terms = 2;
        for (int c = 1; c <= 3; ++c) {
            for (int i = 0; i < 4; ++i) {
                std::vector<GradedElement> fs;
                for (int k = 0; k < c; ++k) fs.push_back(gen.element(Q, o));
                auto mf = koszul_dualize(koszul_complex(Q, fs));
                CHECK(mf.invariant_witness().empty());
            }
        }
    }
}

TEST_CASE("canonical contraction of a factorization with invertible potential") {
    auto base = line();
    auto xb = GradedElement::var(base, "x");
    auto L = base->with_denominator((xb * xb).terms());
    auto x = GradedElement::var(L, "x");

    auto mf = mf_1x1(x, x);
    auto H = canonical_contraction(mf);
    CHECK(contraction_witness(mf, H).empty());
    CHECK(H.HA.at(0, 0) == x.scaled(Rational(1, 2)).over_f(1));

    SUBCASE("zero potential is rejected") {
        MatrixFactorization z;
        z.A = ElemMatrix(L, 1, 1);
        z.B = ElemMatrix(L, 1, 1);
        z.potential = GradedElement::zero(L);
        CHECK_THROWS_AS(canonical_contraction(z), ring_error);
    }

    SUBCASE("rank zero gives the empty homotopy") {
        MatrixFactorization z;
        z.A = ElemMatrix(L, 0, 0);
        z.B = ElemMatrix(L, 0, 0);
        z.potential = x * x;
        auto Hz = canonical_contraction(z);
        CHECK(Hz.HA.rows() == 0);
        CHECK(contraction_witness(z, Hz).empty());
    }
}

TEST_CASE("chern character of units") {
    SUBCASE("constant matrix has vanishing class") {
        auto Q = line();
        auto M = context(GradedElement::var(Q, "x"));
        auto T = ElemMatrix::from_rows(Q, {{GradedElement::constant(Q, 2)}});
        CHECK(chern1_unit(T, M).is_zero());
    }

    SUBCASE("T = [x] over Q[x][1/x] gives dx/x") {
        auto Q = line();
        auto x = GradedElement::var(Q, "x");
        auto M = context(x);
        auto T = ElemMatrix::from_rows(Q, {{x}});
        const auto& L = M.ring_A_loc(true);
        CHECK(chern1_unit(T, M) == GradedElement::var(L, "dx").over_f(1));
    }

    SUBCASE("diag(x, y) over Q[x,y][1/xy] gives dx/x + dy/y") {
        auto Q = plane();
        auto x = GradedElement::var(Q, "x"), y = GradedElement::var(Q, "y");
        auto M = context(x * y);
        auto T = ElemMatrix::from_rows(
            Q, {{x, GradedElement::zero(Q)}, {GradedElement::zero(Q), y}});
        const auto& L = M.ring_A_loc(true);
        auto dx = GradedElement::var(L, "dx"), dy = GradedElement::var(L, "dy");
        auto xl = GradedElement::var(L, "x"), yl = GradedElement::var(L, "y");
        CHECK(chern1_unit(T, M) == (yl * dx + xl * dy).over_f(1));
    }

    SUBCASE("non-invertible matrix is rejected") {
        auto Q = plane();
        auto x = GradedElement::var(Q, "x");
        auto M = context(x);
        auto T = ElemMatrix::from_rows(Q, {{GradedElement::var(Q, "y")}});
        CHECK_THROWS_AS(chern1_unit(T, M), ring_error);
    }
}

TEST_CASE("chern character of factorizations") {
    auto Q = line();
    auto x = GradedElement::var(Q, "x");

    SUBCASE("(x, x) of x^2") {
        auto M = context(x * x);
        auto mf = mf_1x1(x, x);
        const auto& L = M.ring_A_loc(true);
        auto c1 = chern1_mf(mf, M);
        CHECK(c1 == (GradedElement::var(L, "x") * GradedElement::var(L, "dx")).over_f(1));
        const auto& Rt = M.ring_At(true);
        auto c0 = chern0_mf(mf, M);
        CHECK(c0 == GradedElement::var(Rt, "x") * GradedElement::var(Rt, "dx") *
                        GradedElement::var(Rt, "dt"));
        CHECK(trace_identity_holds(mf, M, 1));
    }

    SUBCASE("(1, f): dA = 0 gives vanishing classes") {
        auto M = context(x * x);
        auto mf = mf_1x1(GradedElement::one(Q), x * x);
        CHECK(chern1_mf(mf, M).is_zero());
        CHECK(chern0_mf(mf, M).is_zero());
        CHECK(trace_identity_holds(mf, M, 1));
    }

    SUBCASE("rotation factorization of x^2 + y^2") {
        auto Q2 = plane();
        auto x2 = GradedElement::var(Q2, "x"), y2 = GradedElement::var(Q2, "y");
        auto f = x2 * x2 + y2 * y2;
        auto M = context(f);
        auto mf = rotation_mf(Q2);
        const auto& L = M.ring_A_loc(true);
        // tr(B dA) = df, so ch1 = df/f with the s = 2 stratum a vanishing 3-form
        CHECK(chern1_mf(mf, M) == de_rham(f.transport(L)).over_f(1));
        const auto& Rt = M.ring_At(true);
        auto c0 = chern0_mf(mf, M);
        CHECK(c0 == de_rham(f.transport(Rt)) * GradedElement::var(Rt, "dt"));
        CHECK(trace_identity_holds(mf, M, 1));
        CHECK(trace_identity_holds(mf, M, 2));
    }
}

TEST_CASE("commuting square verification") {
    auto Q = line();
    auto x = GradedElement::var(Q, "x");

    SUBCASE("corpus (x^a, x^{n-a}), 1 <= a < n <= 4") {
        for (int n = 2; n <= 4; ++n) {
            for (int a = 1; a < n; ++a) {
                auto M = context(x.pow(n));
                auto mf = mf_1x1(x.pow(a), x.pow(n - a));
                auto rep = verify_square(mf, M);
                INFO("a=", a, " n=", n, "\n", rep.json());
                CHECK(rep.all_pass());
            }
        }
    }

    SUBCASE("rotation factorization") {
        auto Q2 = plane();
        auto x2 = GradedElement::var(Q2, "x"), y2 = GradedElement::var(Q2, "y");
        auto M = context(x2 * x2 + y2 * y2);
        auto rep = verify_square(rotation_mf(Q2), M);
        INFO(rep.json());
        CHECK(rep.all_pass());
    }

    SUBCASE("dA = 0 passes trivially") {
        auto M = context(x * x);
        auto rep = verify_square(mf_1x1(GradedElement::one(Q), x * x), M);
        INFO(rep.json());
        CHECK(rep.all_pass());
    }
}

TEST_CASE("chern1 equals the unit-formula route on random diagonal stackings") {
    // (diag of x^{a_i}, diag of x^{n-a_i}) over Q[x], potential x^n
    auto Q = line();
    auto x = GradedElement::var(Q, "x");
    RandomGen gen(41);
    for (int trial = 0; trial < 5; ++trial) {
        int n = gen.uniform(2, 4);
        auto M = context(x.pow(n));
        int rank = gen.uniform(1, 3);
        ElemMatrix A(Q, rank, rank), B(Q, rank, rank);
        for (int i = 0; i < rank; ++i) {
            int a = gen.uniform(1, n - 1);
            A.at(i, i) = x.pow(a);
            B.at(i, i) = x.pow(n - a);
        }
        MatrixFactorization mf{A, B, x.pow(n)};
        REQUIRE(mf.invariant_witness().empty());
        CHECK(chern1_mf(mf, M) == chern1_unit(A, M));
    }
}
