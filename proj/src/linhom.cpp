#include "hpcalc/linhom.hpp"

#include <map>

namespace hpcalc {

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    RationalMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw ring_error("ragged matrix");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw ring_error("matrix shape mismatch");
    RationalMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (int j = 0; j < o.cols_; ++j) m.at(i, j) += at(i, k) * o.at(k, j);
        }
    return m;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

namespace {

// Fraction-free row echelon form. Rows are first cleared to integers, then
// Bareiss-style elimination keeps every intermediate entry integral (the
// division by the previous pivot is exact). Returns the echelon matrix and
// the pivot column of each of the first `rank` rows.
struct Echelon {
    std::vector<std::vector<Integer>> a;
    std::vector<int> pivot_cols;
};

Echelon bareiss(const RationalMatrix& M) {
    int rows = M.rows(), cols = M.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (int i = 0; i < rows; ++i) {
        Integer l = 1;
        for (int j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, denominator(M.at(i, j)));
        for (int j = 0; j < cols; ++j) {
            Rational v = M.at(i, j) * l;
            a[i][j] = numerator(v);
        }
    }
    Echelon e;
    Integer prev = 1;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int pr = -1;
        for (int i = row; i < rows; ++i)
            if (a[i][col] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[row], a[pr]);
        for (int i = row + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j)
                a[i][j] = (a[row][col] * a[i][j] - a[i][col] * a[row][j]) / prev;
            a[i][col] = 0;
        }
        prev = a[row][col];
        e.pivot_cols.push_back(col);
        ++row;
    }
    e.a = std::move(a);
    return e;
}

} // namespace

int rank(const RationalMatrix& M) { return static_cast<int>(bareiss(M).pivot_cols.size()); }

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& M) {
    int cols = M.cols();
    Echelon e = bareiss(M);
    int r = static_cast<int>(e.pivot_cols.size());
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> x(cols, Rational(0));
        x[fc] = 1;
        for (int k = r - 1; k >= 0; --k) {
            int pc = e.pivot_cols[k];
            Rational s(0);
            for (int j = pc + 1; j < cols; ++j)
                if (e.a[k][j] != 0) s += Rational(e.a[k][j]) * x[j];
            x[pc] = -s / Rational(e.a[k][pc]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

FiniteComplex::FiniteComplex(std::vector<RationalMatrix> diffs) : d_(std::move(diffs)) {
    if (d_.empty()) throw ring_error("complex needs at least one differential");
    for (size_t i = 0; i + 1 < d_.size(); ++i) {
        if (d_[i + 1].cols() != d_[i].rows()) throw ring_error("complex shape mismatch");
        if (!(d_[i + 1] * d_[i]).is_zero()) throw ring_error("d^2 != 0");
    }
}

int FiniteComplex::dim(int i) const {
    if (i < static_cast<int>(d_.size())) return d_[i].cols();
    return d_.back().rows();
}

std::vector<int> homology_dims(const FiniteComplex& C) {
    int n = C.spaces();
    std::vector<int> ranks(n, 0); // rank of d_i, i = 0..n-2
    for (int i = 0; i + 1 < n; ++i) ranks[i] = rank(C.diffs()[i]);
    std::vector<int> h(n);
    for (int i = 0; i < n; ++i) {
        int ker = (i + 1 < n) ? C.dim(i) - ranks[i] : C.dim(i);
        int im = (i > 0) ? ranks[i - 1] : 0;
        h[i] = ker - im;
    }
    return h;
}

namespace {

int poly_degree(const GradedElement& f) {
    int d = 0;
    for (const auto& [m, c] : f.terms()) {
        int t = 0;
        for (int e : m.even) t += e;
        d = std::max(d, t);
    }
    return d;
}

void enumerate_monomials(int vars, int max_deg, std::vector<int>& cur, int pos,
                         std::vector<std::vector<int>>& out) {
    if (pos == vars) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int i = 0; i < pos; ++i) used += cur[i];
    for (int e = 0; e + used <= max_deg; ++e) {
        cur[pos] = e;
        enumerate_monomials(vars, max_deg, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

} // namespace

std::vector<int> truncated_koszul_homology(const RingPtr& Q,
                                           const std::vector<GradedElement>& fs, int N) {
    int c = static_cast<int>(fs.size());
    if (c == 0) throw ring_error("need at least one element");
    int vars = static_cast<int>(Q->even_vars().size());
    for (const auto& f : fs)
        for (const auto& [m, coeff] : f.terms())
            if (m.odd != 0 || m.u_pow != 0)
                throw ring_error("Koszul elements must be polynomials");
    std::vector<int> fdeg(c);
    for (int i = 0; i < c; ++i) fdeg[i] = poly_degree(fs[i]);

    // basis per exterior position p: (subset S with |S| = p, monomial) with
    // total degree bounded by N - sum of deg f_i over S
    struct Strand {
        std::vector<std::pair<unsigned, std::vector<int>>> basis;
        std::map<std::pair<unsigned, std::vector<int>>, int> index;
    };
    std::vector<Strand> strands(c + 1);
    for (unsigned S = 0; S < (1u << c); ++S) {
        int p = __builtin_popcount(S);
        int budget = N;
        for (int i = 0; i < c; ++i)
            if (S & (1u << i)) budget -= fdeg[i];
        if (budget < 0) continue;
        std::vector<std::vector<int>> monos;
        std::vector<int> cur(vars, 0);
        enumerate_monomials(vars, budget, cur, 0, monos);
        for (auto& m : monos) {
            strands[p].index.emplace(std::make_pair(S, m), static_cast<int>(strands[p].basis.size()));
            strands[p].basis.emplace_back(S, std::move(m));
        }
    }

    // differential K_p -> K_{p-1}: e_i replaced by multiplication by f_i
    std::vector<RationalMatrix> diffs; // cohomological order: K_c -> ... -> K_0
    for (int p = c; p >= 1; --p) {
        RationalMatrix d(static_cast<int>(strands[p - 1].basis.size()),
                         static_cast<int>(strands[p].basis.size()));
        for (int col = 0; col < static_cast<int>(strands[p].basis.size()); ++col) {
            const auto& [S, mono] = strands[p].basis[col];
            for (int i = 0; i < c; ++i) {
                if (!(S & (1u << i))) continue;
                int below = __builtin_popcount(S & ((1u << i) - 1));
                unsigned T = S & ~(1u << i);
                for (const auto& [fm, coeff] : fs[i].terms()) {
                    std::vector<int> target = mono;
                    for (int v = 0; v < vars; ++v) target[v] += fm.even[v];
                    auto it = strands[p - 1].index.find(std::make_pair(T, target));
                    if (it == strands[p - 1].index.end())
                        throw ring_error("internal: truncation is not a subcomplex");
                    Rational signed_c = (below % 2 == 0) ? coeff : -coeff;
                    d.at(it->second, col) += signed_c;
                }
            }
        }
        diffs.push_back(std::move(d));
    }

    auto h = homology_dims(FiniteComplex(std::move(diffs)));
    std::vector<int> out(h.rbegin(), h.rend()); // reindex to Koszul positions 0..c
    return out;
}

} // namespace hpcalc
