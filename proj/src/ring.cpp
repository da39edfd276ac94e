#include "hpcalc/ring.hpp"

namespace hpcalc {

bool RingSpec::same_as(const RingSpec& o) const {
    if (this == &o) return true;
    if (u_enabled_ != o.u_enabled_ || u_inverted_ != o.u_inverted_) return false;
    if (even_.size() != o.even_.size() || odd_.size() != o.odd_.size()) return false;
    for (size_t i = 0; i < even_.size(); ++i)
        if (even_[i].name != o.even_[i].name || even_[i].degree != o.even_[i].degree ||
            even_[i].partner != o.even_[i].partner)
            return false;
    for (size_t i = 0; i < odd_.size(); ++i)
        if (odd_[i].name != o.odd_[i].name || odd_[i].degree != o.odd_[i].degree ||
            odd_[i].partner != o.odd_[i].partner)
            return false;
    return denominator_ == o.denominator_;
}

RingPtr RingSpec::with_u(bool inverted) const {
    auto r = std::make_shared<RingSpec>(*this);
    r->u_enabled_ = true;
    r->u_inverted_ = inverted;
    return r;
}

RingPtr RingSpec::with_denominator(const std::map<Monomial, Rational, MonoLess>& f) const {
    if (f.empty()) throw ring_error("denominator must be nonzero");
    for (const auto& [m, c] : f) {
        if (m.odd != 0 || m.u_pow != 0)
            throw ring_error("denominator must be a polynomial in even variables");
        for (size_t i = 0; i < even_.size(); ++i)
            if (m.even[i] != 0 && even_[i].degree != 0)
                throw ring_error("denominator must involve only degree-0 variables");
        if (m.even.size() != even_.size())
            throw ring_error("denominator has a foreign monomial layout");
    }
    auto r = std::make_shared<RingSpec>(*this);
    r->denominator_ = f;
    return r;
}

RingPtr RingSpec::without_denominator() const {
    auto r = std::make_shared<RingSpec>(*this);
    r->denominator_.clear();
    return r;
}

void RingBuilder::check_fresh(const std::string& name) const {
    if (name == "u") throw ring_error("variable name 'u' is reserved");
    if (name.empty()) throw ring_error("empty variable name");
    for (const auto& v : even_)
        if (v.name == name) throw ring_error("duplicate variable name: " + name);
    for (const auto& v : odd_)
        if (v.name == name) throw ring_error("duplicate variable name: " + name);
}

RingBuilder& RingBuilder::even_var(const std::string& name, int degree) {
    if (degree < 0 || degree % 2 != 0)
        throw ring_error("even variable degree must be an even integer >= 0: " + name);
    check_fresh(name);
    even_.push_back({name, degree, -1});
    return *this;
}

RingBuilder& RingBuilder::odd_var(const std::string& name, int degree) {
    if (degree % 2 == 0) throw ring_error("odd variable degree must be odd: " + name);
    check_fresh(name);
    if (odd_.size() >= RingSpec::kMaxOdd) throw ring_error("too many odd variables");
    odd_.push_back({name, degree, -1});
    return *this;
}

RingBuilder& RingBuilder::form_var(const std::string& name, int even_degree) {
    even_var(name, even_degree);
    odd_var("d" + name, even_degree - 1);
    even_.back().partner = static_cast<int>(odd_.size()) - 1;
    odd_.back().partner = static_cast<int>(even_.size()) - 1;
    return *this;
}

RingPtr RingBuilder::build() const {
    auto r = std::make_shared<RingSpec>();
    r->even_ = even_;
    r->odd_ = odd_;
    r->u_enabled_ = u_enabled_;
    r->u_inverted_ = u_inverted_;
    return r;
}

} // namespace hpcalc
