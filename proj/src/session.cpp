#include "hpcalc/session.hpp"

#include <map>

#include "hpcalc/corechecks.hpp"
#include "hpcalc/linhom.hpp"
#include "hpcalc/mfkoszul.hpp"

namespace hpcalc {

namespace {

using Bindings = std::map<std::string, GradedElement>;

GradedElement eval_expr(const ExprPtr& e, const RingPtr& ring, const Bindings* bindings,
                        bool allow_inv) {
    switch (e->kind) {
    case Expr::Kind::Number:
        return GradedElement::constant(ring, e->number);
    case Expr::Kind::Ident: {
        if (bindings) {
            auto it = bindings->find(e->ident);
            if (it != bindings->end()) return it->second.retag(ring);
        }
        if (e->ident == "u") {
            if (!ring->u_enabled()) throw parse_error(e->line, e->col, "u is not available here");
            return GradedElement::u_power(ring, 1);
        }
        if (ring->has_name(e->ident)) return GradedElement::var(ring, e->ident);
        throw parse_error(e->line, e->col, "unknown identifier '" + e->ident + "'");
    }
    case Expr::Kind::Add:
        return eval_expr(e->a, ring, bindings, allow_inv) +
               eval_expr(e->b, ring, bindings, allow_inv);
    case Expr::Kind::Sub:
        return eval_expr(e->a, ring, bindings, allow_inv) -
               eval_expr(e->b, ring, bindings, allow_inv);
    case Expr::Kind::Neg:
        return -eval_expr(e->a, ring, bindings, allow_inv);
    case Expr::Kind::Mul:
        return eval_expr(e->a, ring, bindings, allow_inv) *
               eval_expr(e->b, ring, bindings, allow_inv);
    case Expr::Kind::Pow: {
        GradedElement base = eval_expr(e->a, ring, bindings, allow_inv);
        try {
            return base.pow(e->exponent);
        } catch (const ring_error& err) {
            throw parse_error(e->line, e->col, err.what());
        }
    }
    case Expr::Kind::Diff:
        return de_rham(eval_expr(e->a, ring, bindings, allow_inv));
    case Expr::Kind::Inv: {
        GradedElement v = eval_expr(e->a, ring, bindings, allow_inv);
        if (v.is_constant() && !v.is_zero())
            return GradedElement::constant(ring, Rational(1) / v.constant_value());
        if (!allow_inv || !ring->has_denominator())
            throw parse_error(e->line, e->col, "inv(...) needs the potential declared first");
        auto inv = localized_inverse(v);
        if (!inv)
            throw parse_error(e->line, e->col,
                              "inv(...): argument is not a unit of the localization");
        return *inv;
    }
    }
    throw parse_error(e->line, e->col, "malformed expression");
}

class SessionState {
public:
    SessionState(const SessionSpec& spec, const SessionOptions& options) : opt_(options) {
        build_rings(spec);
    }

    Report run(const SessionSpec& spec) {
        Report rep;
        for (const auto& st : spec.statements) {
            switch (st.kind) {
            case Statement::Kind::Ring:
            case Statement::Kind::EvenVar:
                break; // consumed by build_rings
            case Statement::Kind::Potential:
                // the ring already carries the denominator; bind the name
                bind(st.line, st.name, f_full_);
                potential_seen_ = true;
                break;
            case Statement::Kind::GPart: {
                GradedElement g = eval(st.expr);
                auto deg = g.degree();
                if (!g.is_zero() && (!deg || *deg != 2))
                    throw semantic_error(st.line, "gpart must be homogeneous of degree 2");
                if (g.f_power() != 0 || g.contains_var("u"))
                    throw semantic_error(st.line, "gpart must be a plain ring element");
                g_ = g;
                bind(st.line, st.name, g);
                break;
            }
            case Statement::Kind::Elem:
                bind(st.line, st.name, eval(st.expr));
                break;
            case Statement::Kind::Mf: {
                MatrixFactorization mf;
                mf.A = eval_matrix(st.A, st.line);
                mf.B = eval_matrix(st.B, st.line);
                mf.potential = eval(st.expr);
                if (mfs_.count(st.name) || bindings_.count(st.name))
                    throw semantic_error(st.line, "duplicate name '" + st.name + "'");
                mfs_.emplace(st.name, std::move(mf));
                break;
            }
            case Statement::Kind::Class: {
                BoundaryClass c;
                GradedElement alpha = eval(st.expr);
                if (alpha.f_power() != 0 || alpha.contains_var("u"))
                    throw semantic_error(st.line, "class numerator must be denominator- and u-free");
                c.alpha = alpha;
                c.s = st.s;
                c.l = st.l;
                if (c.s < 0) throw semantic_error(st.line, "s must be >= 0");
                if (classes_.count(st.name) || bindings_.count(st.name))
                    throw semantic_error(st.line, "duplicate name '" + st.name + "'");
                classes_.emplace(st.name, std::move(c));
                break;
            }
            case Statement::Kind::Command:
                run_command(st, rep);
                break;
            }
        }
        return rep;
    }

private:
    void build_rings(const SessionSpec& spec) {
        RingBuilder b;
        bool have_ring = false;
        const Statement* potential_stmt = nullptr;
        for (const auto& st : spec.statements) {
            if (st.kind == Statement::Kind::Ring) {
                if (have_ring) throw semantic_error(st.line, "ring already declared");
                have_ring = true;
                for (const auto& v : st.vars) b.form_var(v, 0);
            } else if (st.kind == Statement::Kind::EvenVar) {
                if (!have_ring) throw semantic_error(st.line, "evenvar before ring");
                if (st.degree <= 0 || st.degree % 2 != 0)
                    throw semantic_error(st.line, "evenvar degree must be a positive even integer");
                try {
                    b.form_var(st.name, st.degree);
                } catch (const ring_error& e) {
                    throw semantic_error(st.line, e.what());
                }
            } else if (st.kind == Statement::Kind::Potential) {
                if (potential_stmt) throw semantic_error(st.line, "potential already declared");
                potential_stmt = &st;
            }
        }
        if (!have_ring) {
            int line = spec.statements.empty() ? 1 : spec.statements.front().line;
            throw semantic_error(line, "no ring declaration");
        }
        base_ = b.build();
        full_nodenom_ = base_->with_u(true);
        full_ = full_nodenom_;
        if (potential_stmt) {
            GradedElement f = eval_over(potential_stmt->expr, full_nodenom_, false);
            auto deg = f.degree();
            if (f.is_zero() || !deg || *deg != 0)
                throw semantic_error(potential_stmt->line,
                                     "potential must be nonzero of degree 0");
            if (f.contains_var("u") || f.f_power() != 0)
                throw semantic_error(potential_stmt->line, "potential must be a polynomial");
            try {
                full_ = full_nodenom_->with_denominator(f.terms());
            } catch (const ring_error& e) {
                throw semantic_error(potential_stmt->line, e.what());
            }
            f_full_ = f.retag(full_);
            f_base_ = f.transport(base_);
        }
        g_ = GradedElement::zero(full_);
    }

    void bind(int line, const std::string& name, const GradedElement& value) {
        if (full_->has_name(name) || bindings_.count(name) || mfs_.count(name) ||
            classes_.count(name))
            throw semantic_error(line, "duplicate name '" + name + "'");
        bindings_.emplace(name, value);
    }

    GradedElement eval(const ExprPtr& e) {
        return eval_expr(e, full_, &bindings_, potential_seen_);
    }

    GradedElement eval_over(const ExprPtr& e, const RingPtr& ring, bool allow_inv) {
        return eval_expr(e, ring, &bindings_, allow_inv);
    }

    ElemMatrix eval_matrix(const MatrixLiteral& lit, int line) {
        std::vector<std::vector<GradedElement>> rows;
        for (const auto& r : lit.rows) {
            std::vector<GradedElement> row;
            for (const auto& e : r) row.push_back(eval(e));
            rows.push_back(std::move(row));
        }
        try {
            return ElemMatrix::from_rows(full_, rows);
        } catch (const ring_error& e) {
            throw semantic_error(line, e.what());
        }
    }

    MComplex make_context(int line) const {
        if (!full_->has_denominator())
            throw semantic_error(line, "this command needs a declared potential");
        return MComplex(base_, f_base_, g_.transport(base_));
    }

    const MatrixFactorization& find_mf(const Statement& st) {
        auto it = mfs_.find(st.words.at(0));
        if (it == mfs_.end())
            throw semantic_error(st.line, "unknown matrix factorization '" + st.words.at(0) + "'");
        return it->second;
    }

    // a command whose result is a value: records pass with the value in the
    // witness slot; exceptions become error records like everywhere else
    template <typename Fn>
    static void run_value(Report& rep, const std::string& name, const std::string& anchor,
                          Fn&& fn) {
        CheckResult r;
        r.name = name;
        r.anchor = anchor;
        auto start = std::chrono::steady_clock::now();
        try {
            r.witness = fn();
            r.status = "pass";
        } catch (const std::exception& e) {
            r.status = "error";
            r.witness = e.what();
        }
        auto stop = std::chrono::steady_clock::now();
        r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        rep.add(std::move(r));
    }

    void run_command(const Statement& st, Report& rep) {
        try {
            if (st.name == "check-core") {
                rep.append(run_core_checks(full_, opt_.samples, opt_.seed));
            } else if (st.name == "check-keylemma") {
                MComplex M = make_context(st.line);
                rep.append(M.verify_key_lemma(opt_.samples, opt_.seed));
            } else if (st.name == "boundary") {
                auto it = classes_.find(st.words.at(0));
                if (it == classes_.end())
                    throw semantic_error(st.line, "unknown class '" + st.words.at(0) + "'");
                MComplex M = make_context(st.line);
                BoundaryClass c = it->second;
                c.alpha = c.alpha.transport(M.ring_A(false));
                run_value(rep, "boundary " + st.words.at(0),
                          "alpha/f^s u^l -> (-1)^s/s! d(alpha t^s) u^{l+1-s}",
                          [&] { return boundary_map(M, c).str(); });
                if (opt_.strict) rep.append(verify_boundary_via_fiber(M, c));
            } else if (st.name == "chern1" || st.name == "chern0") {
                const MatrixFactorization& mf0 = find_mf(st);
                MComplex M = make_context(st.line);
                MatrixFactorization mf = transported_mf(mf0, M);
                run_value(rep, st.name + " " + st.words.at(0),
                          st.name == "chern1" ? "trace formula over the localization"
                                              : "trace formula over the t-extension",
                          [&] {
                              GradedElement v = st.name == "chern1" ? chern1_mf(mf, M)
                                                                    : chern0_mf(mf, M);
                              return v.str();
                          });
            } else if (st.name == "verify-square") {
                const MatrixFactorization& mf0 = find_mf(st);
                MComplex M = make_context(st.line);
                MatrixFactorization mf = transported_mf(mf0, M);
                Report sub = verify_square(mf, M);
                for (auto c : sub.checks()) {
                    c.name = st.words.at(0) + "-" + c.name;
                    rep.add(std::move(c));
                }
            } else if (st.name == "koszul-dualize") {
                std::vector<GradedElement> fs;
                for (const auto& a : st.args) fs.push_back(eval(a).transport(base_));
                run_value(rep, "koszul-dualize", "dual operator squares to sum f_i t_i", [&] {
                    auto P = koszul_complex(base_, fs);
                    std::string bad = P.invariant_witness();
                    if (!bad.empty()) throw ring_error(bad);
                    auto mf = koszul_dualize(P);
                    bad = mf.invariant_witness();
                    if (!bad.empty()) throw ring_error(bad);
                    return "A = " + mf.A.str() + "  B = " + mf.B.str() +
                           "  pot = " + mf.potential.str();
                });
            } else if (st.name == "koszul-homology") {
                std::vector<GradedElement> fs;
                for (const auto& a : st.args) fs.push_back(eval(a).transport(base_));
                run_value(rep, "koszul-homology", "homology of the truncated strands", [&] {
                    auto dims = truncated_koszul_homology(base_, fs, st.n_arg);
                    std::string out = "[";
                    for (size_t i = 0; i < dims.size(); ++i)
                        out += (i ? ", " : "") + std::to_string(dims[i]);
                    return out + "]";
                });
            }
        } catch (const semantic_error&) {
            throw; // input errors abort the run with exit code 2
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            CheckResult r;
            r.name = st.name;
            r.anchor = "command execution";
            r.status = "error";
            r.witness = e.what();
            rep.add(std::move(r));
        }
    }

    MatrixFactorization transported_mf(const MatrixFactorization& mf, const MComplex& M) const {
        MatrixFactorization out;
        out.A = mf.A.transport(M.ring_A(false));
        out.B = mf.B.transport(M.ring_A(false));
        out.potential = mf.potential.transport(M.ring_A(false));
        return out;
    }

private:
    SessionOptions opt_;
    RingPtr base_;         // declared variables only, no u
    RingPtr full_nodenom_; // + u inverted
    RingPtr full_;         // + denominator when a potential is declared
    GradedElement f_full_, f_base_;
    GradedElement g_;
    bool potential_seen_ = false;
    std::map<std::string, GradedElement> bindings_;
    std::map<std::string, MatrixFactorization> mfs_;
    std::map<std::string, BoundaryClass> classes_;
    std::vector<std::string> values_;
};

} // namespace

Report run_session(const SessionSpec& spec, const SessionOptions& options) {
    SessionState state(spec, options);
    return state.run(spec);
}

GradedElement eval_expression(const ExprPtr& e, const RingPtr& ring) {
    return eval_expr(e, ring, nullptr, ring->has_denominator());
}

} // namespace hpcalc
