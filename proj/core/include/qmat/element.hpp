#pragma once

#include <map>
#include <optional>

#include "qmat/monomial.hpp"
#include "qmat/ratfunc.hpp"

namespace qmat {

// Linear combination of normal-form monomials over the scalar type K
// (RationalFunction for generic q, Rational for a specialized value).
//
// Invariants: every stored coefficient is nonzero; all monomials have the
// element's shape; terms are kept in descending graded-lex order.
template <class K>
class Element {
public:
    using TermMap = std::map<Monomial, K, MonomialDescGrlex>;

    Element() = default;
    explicit Element(const AlgebraShape& s) : shape_(s) { require_valid(s); }

    static Element zero(const AlgebraShape& s) { return Element(s); }

    static Element scalar(const AlgebraShape& s, const K& c) {
        Element e(s);
        e.accumulate(Monomial(s), c);
        return e;
    }

    static Element one(const AlgebraShape& s) { return scalar(s, K(1)); }

    static Element generator(const AlgebraShape& s, Gen g) {
        require_in_shape(s, g);
        Element e(s);
        e.accumulate(Monomial::generator(s, g), K(1));
        return e;
    }

    static Element from_monomial(const AlgebraShape& s, const Monomial& m, const K& c) {
        Element e(s);
        e.accumulate(m, c);
        return e;
    }

    const AlgebraShape& shape() const { return shape_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_scalar() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first.is_empty());
    }

    // Scalar value when is_scalar(); zero element gives K(0).
    K scalar_value() const {
        if (terms_.empty()) return K(0);
        return terms_.begin()->second;
    }

    K coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K(0) : it->second;
    }

    // Top degree; the zero element reports -1.
    int degree() const {
        if (terms_.empty()) return -1;
        return terms_.begin()->first.degree();
    }

    int min_degree() const {
        if (terms_.empty()) return -1;
        return terms_.rbegin()->first.degree();
    }

    bool is_homogeneous() const {
        return terms_.empty() || degree() == min_degree();
    }

    Element homogeneous_component(int d) const {
        Element out(shape_);
        for (const auto& [m, c] : terms_)
            if (m.degree() == d) out.terms_.emplace(m, c);
        return out;
    }

    const std::pair<const Monomial, K>& leading_term() const {
        if (terms_.empty()) throw Error("zero element has no leading term");
        return *terms_.begin();
    }

    // Add c * m in place, dropping the term if the sum cancels.
    void accumulate(const Monomial& m, const K& c) {
        if (qmat::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (qmat::is_zero(it->second)) terms_.erase(it);
        }
    }

    void accumulate_scaled(const Element& rhs, const K& c) {
        require_same(shape_, rhs.shape_);
        if (qmat::is_zero(c)) return;
        for (const auto& [m, v] : rhs.terms_) accumulate(m, v * c);
    }

    Element& operator+=(const Element& rhs) {
        require_same(shape_, rhs.shape_);
        for (const auto& [m, c] : rhs.terms_) accumulate(m, c);
        return *this;
    }

    Element& operator-=(const Element& rhs) {
        require_same(shape_, rhs.shape_);
        for (const auto& [m, c] : rhs.terms_) accumulate(m, K(0) - c);
        return *this;
    }

    Element operator+(const Element& rhs) const {
        Element out = *this;
        out += rhs;
        return out;
    }

    Element operator-(const Element& rhs) const {
        Element out = *this;
        out -= rhs;
        return out;
    }

    Element operator-() const {
        Element out(shape_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, K(0) - c);
        return out;
    }

    Element scaled(const K& c) const {
        Element out(shape_);
        if (qmat::is_zero(c)) return out;
        for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
        return out;
    }

    bool operator==(const Element& rhs) const {
        return shape_ == rhs.shape_ && terms_ == rhs.terms_;
    }

private:
    AlgebraShape shape_;
    TermMap terms_;
};

// Substitute q = v in every coefficient.  Throws ZeroSpecialization for
// v = 0 and PoleAtSpecialization when a coefficient has a pole at v.
inline Element<Rational> specialize(const Element<RationalFunction>& x, const Rational& v) {
    Element<Rational> out(x.shape());
    for (const auto& [m, c] : x.terms()) out.accumulate(m, c.evaluate(v));
    return out;
}

}  // namespace qmat
