#include "hpcalc/element.hpp"

#include <algorithm>
#include <sstream>

namespace hpcalc {

namespace {

void require_same_ring(const GradedElement& a, const GradedElement& b) {
    if (!a.ring() || !b.ring()) throw ring_error("element without a ring");
    if (a.ring() == b.ring()) return;
    if (!a.ring()->same_as(*b.ring())) throw ring_error("mismatched rings");
}

Monomial unit_monomial(const RingSpec& r) {
    Monomial m;
    m.even.assign(r.even_vars().size(), 0);
    return m;
}

} // namespace

GradedElement::GradedElement(RingPtr ring, Terms terms, int f_power)
    : ring_(std::move(ring)), terms_(std::move(terms)), fpow_(f_power) {
    if (fpow_ < 0) throw ring_error("negative denominator exponent");
    if (fpow_ > 0 && !ring_->has_denominator())
        throw ring_error("denominator power in a ring without a denominator");
    canonicalize();
}

GradedElement GradedElement::constant(const RingPtr& ring, const Rational& c) {
    GradedElement e(ring);
    if (c != 0) e.terms_.emplace(unit_monomial(*ring), c);
    return e;
}

GradedElement GradedElement::var(const RingPtr& ring, const std::string& name) {
    GradedElement e(ring);
    Monomial m = unit_monomial(*ring);
    if (name == "u") return u_power(ring, 1);
    int ei = ring->even_index(name);
    if (ei >= 0) {
        m.even[ei] = 1;
    } else {
        int oi = ring->odd_index(name);
        if (oi < 0) throw ring_error("unknown variable: " + name);
        m.odd = 1ull << oi;
    }
    e.terms_.emplace(std::move(m), 1);
    return e;
}

GradedElement GradedElement::u_power(const RingPtr& ring, int k) {
    if (k != 0 && !ring->u_enabled()) throw ring_error("ring has no u");
    if (k < 0 && !ring->u_inverted()) throw ring_error("u is not inverted in this ring");
    GradedElement e(ring);
    Monomial m = unit_monomial(*ring);
    m.u_pow = k;
    e.terms_.emplace(std::move(m), 1);
    return e;
}

bool GradedElement::is_constant() const {
    if (terms_.empty()) return true;
    return fpow_ == 0 && terms_.size() == 1 && terms_.begin()->first.is_unit();
}

Rational GradedElement::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw ring_error("element is not a constant");
    return terms_.begin()->second;
}

std::optional<int> GradedElement::degree() const {
    if (terms_.empty()) return 0;
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int dm = ring_->monomial_degree(m);
        if (!d)
            d = dm;
        else if (*d != dm)
            return std::nullopt;
    }
    return d;
}

GradedElement GradedElement::homogeneous_part(int degree) const {
    Terms out;
    for (const auto& [m, c] : terms_)
        if (ring_->monomial_degree(m) == degree) out.emplace(m, c);
    return GradedElement(ring_, std::move(out), fpow_);
}

GradedElement GradedElement::operator-() const {
    GradedElement r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
    require_same_ring(*this, o);
    // align denominators: a/f^s + b/f^r = (a f^{r-s} + b)/f^r for r >= s
    int s = std::max(fpow_, o.fpow_);
    const GradedElement f = ring_->has_denominator() ? denominator_element(ring_) : GradedElement();
    auto lift = [&](const GradedElement& e) {
        GradedElement num(e.ring_, e.terms_, 0);
        for (int k = e.fpow_; k < s; ++k) num = num * f;
        return num;
    };
    GradedElement a = (fpow_ == s) ? GradedElement(ring_, terms_, 0) : lift(*this);
    GradedElement b = (o.fpow_ == s) ? GradedElement(o.ring_, o.terms_, 0) : lift(o);
    Terms out = std::move(a.terms_);
    for (const auto& [m, c] : b.terms_) {
        auto [it, fresh] = out.emplace(m, c);
        if (!fresh) it->second += c;
    }
    return GradedElement(ring_, std::move(out), s);
}

GradedElement GradedElement::operator-(const GradedElement& o) const { return *this + (-o); }

GradedElement GradedElement::operator*(const GradedElement& o) const {
    require_same_ring(*this, o);
    Terms out;
    const size_t nev = ring_->even_vars().size();
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            int sign = odd_merge_sign(ma.odd, mb.odd);
            if (sign == 0) continue;
            Monomial m;
            m.even.resize(nev);
            for (size_t i = 0; i < nev; ++i) m.even[i] = ma.even[i] + mb.even[i];
            m.odd = ma.odd | mb.odd;
            m.u_pow = ma.u_pow + mb.u_pow;
            Rational c = ca * cb;
            if (sign < 0) c = -c;
            auto [it, fresh] = out.emplace(std::move(m), c);
            if (!fresh) it->second += c;
        }
    }
    return GradedElement(ring_, std::move(out), fpow_ + o.fpow_);
}

GradedElement GradedElement::scaled(const Rational& c) const {
    if (c == 0) return GradedElement(ring_);
    GradedElement r(*this);
    for (auto& [m, coeff] : r.terms_) coeff *= c;
    return r;
}

GradedElement GradedElement::pow(int k) const {
    if (k < 0) {
        if (terms_.size() == 1 && fpow_ == 0) {
            const Monomial& m = terms_.begin()->first;
            bool pure_u = m.odd == 0 && m.u_pow != 0;
            for (int e : m.even) pure_u = pure_u && e == 0;
            if (pure_u && terms_.begin()->second == 1)
                return u_power(ring_, m.u_pow * k);
        }
        throw ring_error("negative powers are only defined for u");
    }
    GradedElement r = one(ring_);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

bool GradedElement::operator==(const GradedElement& o) const {
    require_same_ring(*this, o);
    return fpow_ == o.fpow_ && terms_ == o.terms_;
}

GradedElement GradedElement::times_u(int k) const {
    if (k == 0) return *this;
    GradedElement r(*this);
    if (!ring_->u_enabled()) throw ring_error("ring has no u");
    Terms out;
    for (const auto& [m, c] : r.terms_) {
        Monomial mm = m;
        mm.u_pow += k;
        if (mm.u_pow < 0 && !ring_->u_inverted()) throw ring_error("u is not inverted in this ring");
        out.emplace(std::move(mm), c);
    }
    r.terms_ = std::move(out);
    return r;
}

GradedElement GradedElement::over_f(int s) const {
    if (s == 0 || terms_.empty()) return *this;
    if (s < 0) throw ring_error("negative denominator exponent");
    return GradedElement(ring_, terms_, fpow_ + s);
}

GradedElement GradedElement::partial(const std::string& even_var) const {
    int vi = ring_->even_index(even_var);
    if (vi < 0) throw ring_error("unknown even variable: " + even_var);
    auto num_partial = [&](const GradedElement& e) {
        Terms out;
        for (const auto& [m, c] : e.terms_) {
            if (m.even[vi] == 0) continue;
            Monomial mm = m;
            mm.even[vi] -= 1;
            Rational cc = c * m.even[vi];
            auto [it, fresh] = out.emplace(std::move(mm), cc);
            if (!fresh) it->second += cc;
        }
        return GradedElement(e.ring_, std::move(out), 0);
    };
    GradedElement num(ring_, terms_, 0);
    if (fpow_ == 0) return num_partial(num);
    // quotient rule: (g/f^s)' = (g' f - s g f') / f^{s+1}
    GradedElement f = denominator_element(ring_);
    GradedElement dnum = num_partial(num) * f - num_partial(f).scaled(fpow_) * num;
    return GradedElement(ring_, dnum.terms_, fpow_ + 1);
}

GradedElement GradedElement::subst_zero(const std::set<std::string>& vars) const {
    std::vector<int> evens;
    std::uint64_t odd_mask = 0;
    for (const auto& name : vars) {
        int vi = ring_->even_index(name);
        if (vi < 0) throw ring_error("unknown even variable: " + name);
        evens.push_back(vi);
        int p = ring_->even_vars()[vi].partner;
        if (p >= 0) odd_mask |= 1ull << p;
        if (ring_->has_denominator())
            for (const auto& [m, c] : ring_->denominator_terms())
                if (m.even[vi] != 0)
                    throw ring_error("cannot set a denominator variable to zero: " + name);
    }
    Terms out;
    for (const auto& [m, c] : terms_) {
        bool killed = (m.odd & odd_mask) != 0;
        for (int vi : evens) killed = killed || m.even[vi] != 0;
        if (!killed) out.emplace(m, c);
    }
    return GradedElement(ring_, std::move(out), fpow_);
}

GradedElement GradedElement::retag(const RingPtr& target) const {
    if (ring_ == target) return *this;
    const auto& s = *ring_;
    const auto& t = *target;
    if (s.even_vars().size() != t.even_vars().size() || s.odd_vars().size() != t.odd_vars().size())
        throw ring_error("retag: different variable layout");
    for (size_t i = 0; i < s.even_vars().size(); ++i)
        if (s.even_vars()[i].name != t.even_vars()[i].name) throw ring_error("retag: different variable layout");
    for (size_t i = 0; i < s.odd_vars().size(); ++i)
        if (s.odd_vars()[i].name != t.odd_vars()[i].name) throw ring_error("retag: different variable layout");
    if (fpow_ > 0 && s.denominator_terms() != t.denominator_terms())
        throw ring_error("retag: denominators differ");
    return GradedElement(target, terms_, fpow_);
}

namespace {

GradedElement::Terms transport_terms(const RingSpec& s, const GradedElement::Terms& terms,
                                     const RingSpec& t) {
    std::vector<int> even_map(s.even_vars().size()), odd_map(s.odd_vars().size());
    for (size_t i = 0; i < s.even_vars().size(); ++i) even_map[i] = t.even_index(s.even_vars()[i].name);
    for (size_t i = 0; i < s.odd_vars().size(); ++i) odd_map[i] = t.odd_index(s.odd_vars()[i].name);

    GradedElement::Terms out;
    for (const auto& [m, c] : terms) {
        Monomial mm;
        mm.even.assign(t.even_vars().size(), 0);
        mm.u_pow = m.u_pow;
        for (size_t i = 0; i < even_map.size(); ++i) {
            if (m.even[i] == 0) continue;
            if (even_map[i] < 0)
                throw ring_error("transport: variable " + s.even_vars()[i].name + " missing in target");
            mm.even[even_map[i]] = m.even[i];
        }
        // odd part: list source bits in declared order, map, count inversions
        std::vector<int> mapped;
        std::uint64_t mask = m.odd;
        while (mask) {
            int j = __builtin_ctzll(mask);
            mask &= mask - 1;
            if (odd_map[j] < 0)
                throw ring_error("transport: variable " + s.odd_vars()[j].name + " missing in target");
            mapped.push_back(odd_map[j]);
        }
        int inversions = 0;
        for (size_t a = 0; a < mapped.size(); ++a)
            for (size_t b = a + 1; b < mapped.size(); ++b)
                if (mapped[a] > mapped[b]) ++inversions;
        for (int j : mapped) mm.odd |= 1ull << j;
        Rational cc = (inversions % 2 == 0) ? c : -c;
        auto [it, fresh] = out.emplace(std::move(mm), cc);
        if (!fresh) it->second += cc;
    }
    return out;
}

} // namespace

GradedElement GradedElement::transport(const RingPtr& target) const {
    Terms out = transport_terms(*ring_, terms_, *target);
    if (fpow_ > 0) {
        if (!target->has_denominator()) throw ring_error("transport: target has no denominator");
        Terms f_moved = transport_terms(*ring_, Terms(ring_->denominator_terms().begin(),
                                                      ring_->denominator_terms().end()),
                                        *target);
        if (f_moved != target->denominator_terms()) throw ring_error("transport: denominators differ");
    }
    return GradedElement(target, std::move(out), fpow_);
}

GradedElement GradedElement::even_coefficient(const std::string& var, int i) const {
    int vi = ring_->even_index(var);
    if (vi < 0) throw ring_error("unknown even variable: " + var);
    Terms out;
    for (const auto& [m, c] : terms_) {
        if (m.even[vi] != i) continue;
        Monomial mm = m;
        mm.even[vi] = 0;
        out.emplace(std::move(mm), c);
    }
    return GradedElement(ring_, std::move(out), fpow_);
}

int GradedElement::max_exponent(const std::string& even_var) const {
    int vi = ring_->even_index(even_var);
    if (vi < 0) throw ring_error("unknown even variable: " + even_var);
    int r = 0;
    for (const auto& [m, c] : terms_) r = std::max(r, m.even[vi]);
    return r;
}

int GradedElement::min_u_power() const {
    int r = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first || m.u_pow < r) r = m.u_pow;
        first = false;
    }
    return r;
}

int GradedElement::max_u_power() const {
    int r = 0;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first || m.u_pow > r) r = m.u_pow;
        first = false;
    }
    return r;
}

GradedElement GradedElement::u_coefficient(int k) const {
    Terms out;
    for (const auto& [m, c] : terms_) {
        if (m.u_pow != k) continue;
        Monomial mm = m;
        mm.u_pow = 0;
        out.emplace(std::move(mm), c);
    }
    return GradedElement(ring_, std::move(out), fpow_);
}

bool GradedElement::contains_var(const std::string& name) const {
    if (name == "u") {
        for (const auto& [m, c] : terms_)
            if (m.u_pow != 0) return true;
        return false;
    }
    int ei = ring_->even_index(name);
    if (ei >= 0) {
        for (const auto& [m, c] : terms_)
            if (m.even[ei] != 0) return true;
        return false;
    }
    int oi = ring_->odd_index(name);
    if (oi < 0) throw ring_error("unknown variable: " + name);
    for (const auto& [m, c] : terms_)
        if (m.odd & (1ull << oi)) return true;
    return false;
}

void GradedElement::canonicalize() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (it->second == 0) ? terms_.erase(it) : std::next(it);
    if (terms_.empty()) {
        fpow_ = 0;
        return;
    }
    while (fpow_ > 0) {
        GradedElement num(ring_, Terms(terms_), 0);
        auto q = divide_exact(num, denominator_element(ring_));
        if (!q) break;
        terms_ = q->terms_;
        --fpow_;
    }
}

GradedElement denominator_element(const RingPtr& ring) {
    if (!ring->has_denominator()) throw ring_error("ring has no denominator");
    return GradedElement(ring, GradedElement::Terms(ring->denominator_terms().begin(),
                                                    ring->denominator_terms().end()),
                         0);
}

std::optional<GradedElement> divide_exact(const GradedElement& a, const GradedElement& f) {
    require_same_ring(a, f);
    if (f.is_zero()) throw ring_error("division by zero");
    if (f.f_power() != 0) throw ring_error("divisor must have no denominator");
    const RingSpec& R = *a.ring();
    for (const auto& [m, c] : f.terms()) {
        if (m.odd != 0 || m.u_pow != 0) throw ring_error("divisor must be a polynomial in even variables");
        for (size_t i = 0; i < m.even.size(); ++i)
            if (m.even[i] != 0 && R.even_vars()[i].degree != 0)
                throw ring_error("divisor must involve only degree-0 variables");
    }
    if (a.is_zero()) return GradedElement::zero(a.ring());

    const auto& ft = f.terms();
    const Monomial& lf = ft.rbegin()->first; // leading under MonoLess
    const Rational& lfc = ft.rbegin()->second;

    GradedElement::Terms rem(a.terms());
    GradedElement::Terms quot;
    while (!rem.empty()) {
        const Monomial& lr = rem.rbegin()->first;
        // divisibility of the leading monomial
        Monomial q;
        q.even.resize(lr.even.size());
        bool ok = true;
        for (size_t i = 0; i < lr.even.size(); ++i) {
            q.even[i] = lr.even[i] - lf.even[i];
            if (q.even[i] < 0) {
                ok = false;
                break;
            }
        }
        if (!ok) return std::nullopt; // nonzero remainder
        q.odd = lr.odd;
        q.u_pow = lr.u_pow;
        Rational qc = rem.rbegin()->second / lfc;
        quot.emplace(q, qc);
        // rem -= qc * q * f   (f is even and u-free: no signs)
        for (const auto& [mf, cf] : ft) {
            Monomial t;
            t.even.resize(q.even.size());
            for (size_t i = 0; i < q.even.size(); ++i) t.even[i] = q.even[i] + mf.even[i];
            t.odd = q.odd;
            t.u_pow = q.u_pow;
            Rational c = qc * cf;
            auto [it, fresh] = rem.emplace(std::move(t), -c);
            if (!fresh) {
                it->second -= c;
                if (it->second == 0) rem.erase(it);
            } else if (it->second == 0) {
                rem.erase(it);
            }
        }
    }
    return GradedElement(a.ring(), std::move(quot), a.f_power());
}

// ---- printing ----------------------------------------------------------

namespace {

std::string coeff_str(const Rational& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

// one monomial with |coefficient|; empty product prints as the |coefficient|
std::string term_str(const RingSpec& R, const Monomial& m, const Rational& abs_coeff) {
    std::vector<std::string> factors;
    if (abs_coeff != 1) factors.push_back(coeff_str(abs_coeff));
    for (size_t i = 0; i < m.even.size(); ++i) {
        if (m.even[i] == 0) continue;
        std::string s = R.even_vars()[i].name;
        if (m.even[i] != 1) s += "^" + std::to_string(m.even[i]);
        factors.push_back(s);
    }
    std::uint64_t mask = m.odd;
    while (mask) {
        int j = __builtin_ctzll(mask);
        mask &= mask - 1;
        factors.push_back(R.odd_vars()[j].name);
    }
    if (m.u_pow != 0) {
        std::string s = "u";
        if (m.u_pow != 1) s += "^" + std::to_string(m.u_pow);
        factors.push_back(s);
    }
    if (factors.empty()) return coeff_str(abs_coeff);
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "*";
        out += factors[i];
    }
    return out;
}

std::string terms_str(const RingSpec& R, const GradedElement::Terms& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    // descending graded-lex: highest term first
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const Rational& c = it->second;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        out += term_str(R, it->first, a);
        first = false;
    }
    return out;
}

} // namespace

std::string GradedElement::str() const {
    std::string num = terms_str(*ring_, terms_);
    if (fpow_ == 0) return num;
    std::string f = terms_str(*ring_, GradedElement::Terms(ring_->denominator_terms().begin(),
                                                           ring_->denominator_terms().end()));
    std::string out = "(" + num + ")*inv(" + f + ")";
    if (fpow_ != 1) out += "^" + std::to_string(fpow_);
    return out;
}

} // namespace hpcalc
