#pragma once

#include <vector>

#include "hpcalc/element.hpp"

namespace hpcalc {

// Dense matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        a_.assign(static_cast<size_t>(rows) * cols, Rational(0));
    }
    static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    RationalMatrix operator*(const RationalMatrix& o) const;
    bool is_zero() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

// Exact rank via fraction-free (Bareiss) elimination.
int rank(const RationalMatrix& M);

// Exact basis of the null space.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& M);

// A bounded complex V_0 -> V_1 -> ... -> V_n given by its differentials
// d_i : V_i -> V_{i+1}; requires d_{i+1} d_i = 0.
class FiniteComplex {
public:
    explicit FiniteComplex(std::vector<RationalMatrix> diffs);
    const std::vector<RationalMatrix>& diffs() const { return d_; }
    int spaces() const { return static_cast<int>(d_.size()) + 1; }
    int dim(int i) const;

private:
    std::vector<RationalMatrix> d_;
};

// dim ker(d_i) / im(d_{i-1}) for each position 0..n, exactly.
std::vector<int> homology_dims(const FiniteComplex& C);

// Homology dimensions of the total-degree <= N strands of the Koszul complex
// on f_1..f_c over the polynomial ring Q, listed from position 0 (cokernel
// end) to position c. In the regular case every entry except position 0
// vanishes and position 0 is the dimension of the degree <= N part of
// Q/(f_1..f_c).
std::vector<int> truncated_koszul_homology(const RingPtr& Q,
                                           const std::vector<GradedElement>& fs, int N);

} // namespace hpcalc
