#pragma once

#include <vector>

#include "hpcalc/boundary.hpp"

namespace hpcalc {

// Small dense matrix of graded elements over one ring, row major.
class ElemMatrix {
public:
    ElemMatrix() = default;
    ElemMatrix(RingPtr ring, int rows, int cols);
    static ElemMatrix identity(const RingPtr& ring, int n);
    static ElemMatrix scalar(const GradedElement& h, int n);
    // build from explicit rows
    static ElemMatrix from_rows(const RingPtr& ring,
                                const std::vector<std::vector<GradedElement>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingPtr& ring() const { return ring_; }
    GradedElement& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const GradedElement& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    ElemMatrix operator+(const ElemMatrix& o) const;
    ElemMatrix operator-(const ElemMatrix& o) const;
    ElemMatrix operator*(const ElemMatrix& o) const;
    ElemMatrix scaled(const GradedElement& c) const;
    ElemMatrix scaled(const Rational& c) const;
    bool operator==(const ElemMatrix& o) const;
    bool is_zero() const;

    GradedElement trace() const;
    ElemMatrix d() const; // entrywise de Rham
    ElemMatrix transport(const RingPtr& target) const;
    ElemMatrix retag(const RingPtr& target) const;

    // for matrices of even ring elements (no odd parts)
    GradedElement determinant() const;
    ElemMatrix adjugate() const;

    std::string str() const;

private:
    RingPtr ring_;
    int rows_ = 0, cols_ = 0;
    std::vector<GradedElement> a_;
};

// A two-periodic matrix factorization: square matrices A, B with
// AB = BA = potential * I.
struct MatrixFactorization {
    ElemMatrix A;
    ElemMatrix B;
    GradedElement potential;

    int rank() const { return A.rows(); }
    // empty when AB = BA = potential*I holds, else a description
    std::string invariant_witness() const;
};

// A finite free dg-module over a Koszul algebra: differential d and the odd
// multiplication operators E_i for the exterior generators, with
// d^2 = 0, E_i^2 = 0, E_i E_j + E_j E_i = 0 (i != j), d E_i + E_i d = f_i I.
struct KoszulModule {
    RingPtr ring; // the coefficient polynomial ring
    std::vector<int> degrees;
    ElemMatrix d;
    std::vector<ElemMatrix> E;
    std::vector<GradedElement> potentials;

    int rank() const { return static_cast<int>(degrees.size()); }
    std::string invariant_witness() const;
};

// The rank-2^c Koszul algebra on f_1..f_c as a module over itself:
// basis e_S over subsets, d the odd derivation with d(e_i) = f_i, and
// E_i = left multiplication by e_i.
KoszulModule koszul_complex(const RingPtr& Q, const std::vector<GradedElement>& fs);

// Koszul duality: (P, d) -> (P[t_1..t_c], d + sum E_i t_i), packaged as the
// parity-split matrix pair over Q[t_1..t_c] with potential sum f_i t_i.
MatrixFactorization koszul_dualize(const KoszulModule& P);

// Contracting homotopy H = D / (2 h) of a factorization with invertible
// potential; satisfies D H + H D = I. Stored as the parity pair like D.
struct ContractionHomotopy {
    ElemMatrix HA; // same shape as A
    ElemMatrix HB; // same shape as B
};
ContractionHomotopy canonical_contraction(const MatrixFactorization& mf);
// empty when A HB + HA B = I and B HA + HB A = I
std::string contraction_witness(const MatrixFactorization& mf, const ContractionHomotopy& H);

// 1/h in the localized ring: q / f^N with q h = f^N, if h is a unit.
std::optional<GradedElement> localized_inverse(const GradedElement& h);

// Chern character of a unit: sum over s of
// (-1)^{s+1} (2 s!/(2s)!) tr(T^{-1} dT (dT^{-1} dT)^{s-1}) u^{s-1},
// evaluated over the localized u-inverted ring of M. The sum truncates once
// the trace argument exceeds the ambient form dimension.
GradedElement chern1_unit(const ElemMatrix& T, const MComplex& M);

// The same class computed from a factorization (A, B) of f:
// sum (-1)^{s+1} (2 s!/(2s)!) f^{-s} tr(B dA (dB dA)^{s-1}) u^{s-1}.
GradedElement chern1_mf(const MatrixFactorization& mf, const MComplex& M);

// Degree-0 class over the t-extended complex:
// -sum (2/(2s)!) tr(d(B dA (dA dB)^{s-1} t^s)), d over the t-extended ring.
GradedElement chern0_mf(const MatrixFactorization& mf, const MComplex& M);

// f tr((dB dA)^s) = s df tr(B dA (dB dA)^{s-1}), evaluated exactly.
bool trace_identity_holds(const MatrixFactorization& mf, const MComplex& M, int s);

// Full commuting-square verification: factorization invariant, chern1 is a
// cycle and agrees with the unit formula, its normalized classes map under
// the boundary to chern0 exactly, the trace identities up to the truncation
// bound, and the fiber route for every class.
Report verify_square(const MatrixFactorization& mf, const MComplex& M);

} // namespace hpcalc
