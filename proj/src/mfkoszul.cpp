#include "hpcalc/mfkoszul.hpp"

#include <sstream>

namespace hpcalc {

ElemMatrix::ElemMatrix(RingPtr ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
    a_.assign(static_cast<size_t>(rows) * cols, GradedElement::zero(ring_));
}

ElemMatrix ElemMatrix::identity(const RingPtr& ring, int n) {
    return scalar(GradedElement::one(ring), n);
}

ElemMatrix ElemMatrix::scalar(const GradedElement& h, int n) {
    ElemMatrix m(h.ring(), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = h;
    return m;
}

ElemMatrix ElemMatrix::from_rows(const RingPtr& ring,
                                 const std::vector<std::vector<GradedElement>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    ElemMatrix m(ring, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw ring_error("ragged matrix literal");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j].retag(ring);
    }
    return m;
}

ElemMatrix ElemMatrix::operator+(const ElemMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ring_error("matrix shape mismatch");
    ElemMatrix m(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
    return m;
}

ElemMatrix ElemMatrix::operator-(const ElemMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ring_error("matrix shape mismatch");
    ElemMatrix m(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
    return m;
}

ElemMatrix ElemMatrix::operator*(const ElemMatrix& o) const {
    if (cols_ != o.rows_) throw ring_error("matrix shape mismatch");
    ElemMatrix m(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < o.cols_; ++j) {
            GradedElement s = GradedElement::zero(ring_);
            for (int k = 0; k < cols_; ++k) s = s + at(i, k) * o.at(k, j);
            m.at(i, j) = std::move(s);
        }
    return m;
}

ElemMatrix ElemMatrix::scaled(const GradedElement& c) const {
    ElemMatrix m(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = c * a_[k];
    return m;
}

ElemMatrix ElemMatrix::scaled(const Rational& c) const {
    ElemMatrix m(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].scaled(c);
    return m;
}

bool ElemMatrix::operator==(const ElemMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t k = 0; k < a_.size(); ++k)
        if (a_[k] != o.a_[k]) return false;
    return true;
}

bool ElemMatrix::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

GradedElement ElemMatrix::trace() const {
    if (rows_ != cols_) throw ring_error("trace of a non-square matrix");
    GradedElement s = GradedElement::zero(ring_);
    for (int i = 0; i < rows_; ++i) s = s + at(i, i);
    return s;
}

ElemMatrix ElemMatrix::d() const {
    ElemMatrix m(ring_, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = de_rham(a_[k]);
    return m;
}

ElemMatrix ElemMatrix::transport(const RingPtr& target) const {
    ElemMatrix m(target, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].transport(target);
    return m;
}

ElemMatrix ElemMatrix::retag(const RingPtr& target) const {
    ElemMatrix m(target, rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k].retag(target);
    return m;
}

namespace {

void require_scalar_entries(const ElemMatrix& m, const char* op) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [mono, c] : m.at(i, j).terms())
                if (mono.odd != 0)
                    throw ring_error(std::string(op) + ": entries must be ring elements");
}

} // namespace

GradedElement ElemMatrix::determinant() const {
    if (rows_ != cols_) throw ring_error("determinant of a non-square matrix");
    require_scalar_entries(*this, "determinant");
    if (rows_ == 0) return GradedElement::one(ring_);
    if (rows_ == 1) return at(0, 0);
    // Laplace along the first row; ranks here are small
    GradedElement det = GradedElement::zero(ring_);
    for (int j = 0; j < cols_; ++j) {
        if (at(0, j).is_zero()) continue;
        ElemMatrix minor(ring_, rows_ - 1, cols_ - 1);
        for (int r = 1; r < rows_; ++r) {
            int cc = 0;
            for (int c = 0; c < cols_; ++c) {
                if (c == j) continue;
                minor.at(r - 1, cc++) = at(r, c);
            }
        }
        GradedElement term = at(0, j) * minor.determinant();
        det = det + (j % 2 == 0 ? term : -term);
    }
    return det;
}

ElemMatrix ElemMatrix::adjugate() const {
    if (rows_ != cols_) throw ring_error("adjugate of a non-square matrix");
    require_scalar_entries(*this, "adjugate");
    ElemMatrix adj(ring_, rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            ElemMatrix minor(ring_, rows_ - 1, cols_ - 1);
            for (int r = 0, rr = 0; r < rows_; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < cols_; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc++) = at(r, c);
                }
                ++rr;
            }
            GradedElement cof = minor.determinant();
            adj.at(j, i) = ((i + j) % 2 == 0) ? cof : -cof;
        }
    return adj;
}

std::string ElemMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string MatrixFactorization::invariant_witness() const {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        return "A and B must be square of equal rank";
    ElemMatrix fI = ElemMatrix::scalar(potential.retag(A.ring()), A.rows());
    if (!(A * B == fI)) return "A B != potential * I";
    if (!(B * A == fI)) return "B A != potential * I";
    return {};
}

std::string KoszulModule::invariant_witness() const {
    int n = rank();
    if (d.rows() != n || d.cols() != n) return "differential shape mismatch";
    if (E.size() != potentials.size()) return "operator/potential count mismatch";
    if (!(d * d).is_zero()) return "d^2 != 0";
    for (size_t i = 0; i < E.size(); ++i) {
        if (E[i].rows() != n || E[i].cols() != n) return "operator shape mismatch";
        if (!(E[i] * E[i]).is_zero()) return "E_i^2 != 0";
        ElemMatrix anti = d * E[i] + E[i] * d;
        if (!(anti == ElemMatrix::scalar(potentials[i].retag(ring), n)))
            return "d E_i + E_i d != f_i I";
        for (size_t j = i + 1; j < E.size(); ++j)
            if (!(E[i] * E[j] + E[j] * E[i]).is_zero()) return "E_i E_j + E_j E_i != 0";
    }
    return {};
}

KoszulModule koszul_complex(const RingPtr& Q, const std::vector<GradedElement>& fs) {
    int c = static_cast<int>(fs.size());
    if (c > 20) throw ring_error("too many Koszul generators");
    for (const auto& f : fs) {
        auto deg = f.degree();
        if (f.f_power() != 0 || (!f.is_zero() && (!deg || *deg != 0)))
            throw ring_error("Koszul generators must be degree-0 ring elements");
    }
    int n = 1 << c;
    KoszulModule P;
    P.ring = Q;
    P.degrees.resize(n);
    for (int S = 0; S < n; ++S) P.degrees[S] = -__builtin_popcount(static_cast<unsigned>(S));
    P.d = ElemMatrix(Q, n, n);
    P.potentials = fs;
    for (int S = 0; S < n; ++S) {
        for (int i = 0; i < c; ++i) {
            if (!(S & (1 << i))) continue;
            int below = __builtin_popcount(static_cast<unsigned>(S) & ((1u << i) - 1));
            int target = S & ~(1 << i);
            GradedElement term = (below % 2 == 0) ? fs[i].retag(Q) : -fs[i].retag(Q);
            P.d.at(target, S) = P.d.at(target, S) + term;
        }
    }
    for (int i = 0; i < c; ++i) {
        ElemMatrix Ei(Q, n, n);
        for (int S = 0; S < n; ++S) {
            if (S & (1 << i)) continue;
            int below = __builtin_popcount(static_cast<unsigned>(S) & ((1u << i) - 1));
            int target = S | (1 << i);
            Ei.at(target, S) = GradedElement::constant(Q, (below % 2 == 0) ? 1 : -1);
        }
        P.E.push_back(std::move(Ei));
    }
    return P;
}

namespace {

RingBuilder builder_copy(const RingSpec& base) {
    RingBuilder b;
    for (const auto& ev : base.even_vars()) {
        if (ev.partner >= 0)
            b.form_var(ev.name, ev.degree);
        else
            b.even_var(ev.name, ev.degree);
    }
    for (const auto& ov : base.odd_vars())
        if (ov.partner < 0) b.odd_var(ov.name, ov.degree);
    return b;
}

} // namespace

MatrixFactorization koszul_dualize(const KoszulModule& P) {
    std::string bad = P.invariant_witness();
    if (!bad.empty()) throw ring_error("koszul_dualize: " + bad);
    int c = static_cast<int>(P.E.size());

    auto b = builder_copy(*P.ring);
    for (int i = 1; i <= c; ++i) b.form_var("t" + std::to_string(i), 2);
    RingPtr Qt = b.build();

    int n = P.rank();
    ElemMatrix D = P.d.transport(Qt);
    GradedElement pot = GradedElement::zero(Qt);
    for (int i = 0; i < c; ++i) {
        GradedElement ti = GradedElement::var(Qt, "t" + std::to_string(i + 1));
        D = D + P.E[i].transport(Qt).scaled(ti);
        pot = pot + P.potentials[i].transport(Qt) * ti;
    }

    std::vector<int> even_idx, odd_idx;
    for (int k = 0; k < n; ++k)
        ((P.degrees[k] % 2 == 0) ? even_idx : odd_idx).push_back(k);
    if (even_idx.size() != odd_idx.size())
        throw ring_error("koszul_dualize: unbalanced parity split");
    int half = static_cast<int>(even_idx.size());

    MatrixFactorization mf;
    mf.A = ElemMatrix(Qt, half, half);
    mf.B = ElemMatrix(Qt, half, half);
    for (int r = 0; r < half; ++r)
        for (int cc = 0; cc < half; ++cc) {
            mf.A.at(r, cc) = D.at(odd_idx[r], even_idx[cc]);
            mf.B.at(r, cc) = D.at(even_idx[r], odd_idx[cc]);
        }
    mf.potential = pot;
    return mf;
}

std::optional<GradedElement> localized_inverse(const GradedElement& h) {
    const RingPtr& R = h.ring();
    if (h.is_zero()) return std::nullopt;
    if (!R->has_denominator()) {
        if (!h.is_constant()) return std::nullopt;
        return GradedElement::constant(R, Rational(1) / h.constant_value());
    }
    GradedElement num(R, GradedElement::Terms(h.terms()), 0);
    for (const auto& [m, cc] : num.terms()) {
        if (m.odd != 0 || m.u_pow != 0) return std::nullopt;
        for (size_t i = 0; i < m.even.size(); ++i)
            if (m.even[i] != 0 && R->even_vars()[i].degree != 0) return std::nullopt;
    }
    GradedElement f = denominator_element(R);
    // h = num / f^{h.f_power()}: 1/h = f^{f_power} q / f^N where q num = f^N;
    // num is a unit iff it divides f^N, with N bounded by num's total degree
    int bound = 0;
    for (const auto& [m, cc] : num.terms()) {
        int t = 0;
        for (int e : m.even) t += e;
        bound = std::max(bound, t);
    }
    GradedElement fN = GradedElement::one(R);
    for (int N = 0; N <= bound; ++N) {
        auto q = divide_exact(fN, num);
        if (q) return (*q).over_f(N) * f.pow(h.f_power());
        fN = fN * f;
    }
    return std::nullopt;
}

GradedElement chern1_unit(const ElemMatrix& T, const MComplex& M) {
    if (T.rows() != T.cols()) throw ring_error("chern1_unit: matrix must be square");
    const auto& L = M.ring_A_loc(true);
    ElemMatrix Tl = T.ring()->same_as(*L) ? T.retag(L) : T.transport(L);
    require_scalar_entries(Tl, "chern1_unit");

    GradedElement det = Tl.determinant();
    auto inv_det = localized_inverse(det);
    if (!inv_det) throw ring_error("chern1_unit: matrix is not invertible over the localization");
    ElemMatrix Tinv = Tl.adjugate().scaled(*inv_det);

    ElemMatrix dT = Tl.d();
    ElemMatrix lead = Tinv * dT;           // T^{-1} dT
    ElemMatrix step = Tinv.d() * dT;       // dT^{-1} dT
    int vmax = static_cast<int>(L->odd_vars().size());

    GradedElement out = GradedElement::zero(L);
    ElemMatrix acc = lead;
    for (int s = 1; 2 * s - 1 <= vmax; ++s) {
        if (s > 1) acc = acc * step;
        Rational coeff = sign_pow(s + 1) * Rational(2) * factorial(s) / factorial(2 * s);
        out = out + acc.trace().scaled(coeff).times_u(s - 1);
    }
    return out;
}

namespace {

void require_factorization_of_f(const MatrixFactorization& mf, const MComplex& M) {
    std::string bad = mf.invariant_witness();
    if (!bad.empty()) throw ring_error("matrix factorization invariant: " + bad);
    GradedElement f = denominator_element(M.ring_A_loc(false));
    if (mf.potential.transport(M.ring_A_loc(false)) != f)
        throw ring_error("factorization potential differs from the localized element f");
}

} // namespace

GradedElement chern1_mf(const MatrixFactorization& mf, const MComplex& M) {
    require_factorization_of_f(mf, M);
    const auto& L = M.ring_A_loc(true);
    ElemMatrix A = mf.A.transport(L), B = mf.B.transport(L);
    ElemMatrix dA = A.d(), dB = B.d();
    ElemMatrix lead = B * dA;
    ElemMatrix step = dB * dA;
    int vmax = static_cast<int>(L->odd_vars().size());

    GradedElement out = GradedElement::zero(L);
    ElemMatrix acc = lead;
    for (int s = 1; 2 * s - 1 <= vmax; ++s) {
        if (s > 1) acc = acc * step;
        Rational coeff = sign_pow(s + 1) * Rational(2) * factorial(s) / factorial(2 * s);
        out = out + acc.trace().scaled(coeff).over_f(s).times_u(s - 1);
    }
    return out;
}

GradedElement chern0_mf(const MatrixFactorization& mf, const MComplex& M) {
    require_factorization_of_f(mf, M);
    const auto& Rt = M.ring_At(true);
    ElemMatrix A = mf.A.transport(Rt), B = mf.B.transport(Rt);
    ElemMatrix dA = A.d(), dB = B.d();
    ElemMatrix lead = B * dA;
    ElemMatrix step = dA * dB;
    GradedElement t = GradedElement::var(Rt, MComplex::kTName);
    // the trace factor is a (2s-1)-form in the coefficient variables
    int vmax = static_cast<int>(M.ring_A(false)->odd_vars().size());

    GradedElement out = GradedElement::zero(Rt);
    ElemMatrix acc = lead;
    for (int s = 1; 2 * s - 1 <= vmax; ++s) {
        if (s > 1) acc = acc * step;
        Rational coeff = Rational(-2) / factorial(2 * s);
        out = out + de_rham(acc.trace() * t.pow(s)).scaled(coeff);
    }
    return out;
}

bool trace_identity_holds(const MatrixFactorization& mf, const MComplex& M, int s) {
    if (s < 1) throw ring_error("trace identity needs s >= 1");
    require_factorization_of_f(mf, M);
    const auto& R = M.ring_A(false);
    ElemMatrix A = mf.A.transport(R), B = mf.B.transport(R);
    ElemMatrix dA = A.d(), dB = B.d();
    GradedElement f = mf.potential.transport(R);

    ElemMatrix dBdA_s = ElemMatrix::identity(R, mf.rank());
    for (int k = 0; k < s; ++k) dBdA_s = dBdA_s * (dB * dA);
    GradedElement lhs = f * dBdA_s.trace();

    ElemMatrix rhs_m = B * dA;
    for (int k = 0; k < s - 1; ++k) rhs_m = rhs_m * (dB * dA);
    GradedElement rhs = de_rham(f) * rhs_m.trace();
    return lhs == rhs.scaled(s);
}

ContractionHomotopy canonical_contraction(const MatrixFactorization& mf) {
    std::string bad = mf.invariant_witness();
    if (!bad.empty()) throw ring_error("canonical_contraction: " + bad);
    if (mf.rank() == 0) return {ElemMatrix(mf.A.ring(), 0, 0), ElemMatrix(mf.A.ring(), 0, 0)};
    auto inv = localized_inverse(mf.potential.retag(mf.A.ring()));
    if (!inv) throw ring_error("canonical_contraction: potential is not invertible");
    GradedElement half_inv = inv->scaled(Rational(1, 2));
    return {mf.A.scaled(half_inv), mf.B.scaled(half_inv)};
}

std::string contraction_witness(const MatrixFactorization& mf, const ContractionHomotopy& H) {
    int n = mf.rank();
    ElemMatrix I = ElemMatrix::identity(mf.A.ring(), n);
    if (!(mf.B * H.HA + H.HB * mf.A == I)) return "B HA + HB A != I";
    if (!(mf.A * H.HB + H.HA * mf.B == I)) return "A HB + HA B != I";
    return {};
}

Report verify_square(const MatrixFactorization& mf, const MComplex& M) {
    Report rep;

    run_check(rep, "factorization-invariant", "A B = B A = f I",
              [&] { return mf.invariant_witness(); });

    GradedElement c1 = chern1_mf(mf, M);
    GradedElement c0 = chern0_mf(mf, M);

    run_check(rep, "chern1-cycle", "u·d(ch1) = 0", [&] {
        if (!M.complex_A_loc(true).is_cycle(c1)) return "d(ch1) != 0 for ch1 = " + c1.str();
        return std::string();
    });

    run_check(rep, "chern1-unit-formula", "ch1 from (A,B) = ch1 of the unit A", [&] {
        GradedElement via_unit = chern1_unit(mf.A.transport(M.ring_A_loc(true)), M);
        if (c1 != via_unit)
            return "ch1 mismatch: " + c1.str() + " vs unit route " + via_unit.str();
        return std::string();
    });

    std::vector<BoundaryClass> classes;
    run_check(rep, "chern1-normalizes", "ch1 splits into classes alpha/f^s u^l", [&] {
        classes = normalize_cycle(M, c1, 1);
        return std::string();
    });

    run_check(rep, "boundary-equals-chern0", "sum of boundaries of ch1 classes = ch0", [&] {
        GradedElement sum = GradedElement::zero(M.ring_At(true));
        for (const auto& c : classes) sum = sum + boundary_map(M, c);
        if (sum != c0) return "boundary(ch1) = " + sum.str() + " != ch0 = " + c0.str();
        return std::string();
    });

    int vmax = static_cast<int>(M.ring_A(false)->odd_vars().size());
    int smax = (vmax + 2) / 2;
    for (int s = 1; s <= smax; ++s) {
        run_check(rep, "trace-identity-s" + std::to_string(s),
                  "f tr((dB dA)^s) = s df tr(B dA (dB dA)^{s-1})", [&] {
                      if (!trace_identity_holds(mf, M, s))
                          return "trace identity fails at s = " + std::to_string(s);
                      return std::string();
                  });
    }

    for (size_t k = 0; k < classes.size(); ++k) {
        Report sub = verify_boundary_via_fiber(M, classes[k]);
        for (auto c : sub.checks()) {
            c.name = "class" + std::to_string(k) + "-" + c.name;
            rep.add(std::move(c));
        }
    }

    return rep;
}

} // namespace hpcalc
