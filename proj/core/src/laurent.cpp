#include "qmat/laurent.hpp"

#include <vector>

#include "qmat/errors.hpp"

namespace qmat {

Rational rational_from_text(const std::string& text) {
    if (text.empty()) throw Error("empty rational literal");
    try {
        Rational r(text);
        if (sgn(r.get_den()) == 0) throw Error("zero denominator in rational literal");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal: " + text);
    }
}

Rational LaurentPoly::coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPoly::lowest_exponent() const {
    if (terms_.empty()) throw Error("zero polynomial has no exponents");
    return terms_.begin()->first;
}

int LaurentPoly::highest_exponent() const {
    if (terms_.empty()) throw Error("zero polynomial has no exponents");
    return terms_.rbegin()->first;
}

Rational LaurentPoly::leading_coeff() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading coefficient");
    return terms_.rbegin()->second;
}

Rational LaurentPoly::trailing_coeff() const {
    if (terms_.empty()) throw Error("zero polynomial has no trailing coefficient");
    return terms_.begin()->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) put(k, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
    for (const auto& [k, c] : rhs.terms_) put(k, -c);
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    out += rhs;
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& rhs) const {
    LaurentPoly out = *this;
    out -= rhs;
    return out;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly out;
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& rhs) const {
    LaurentPoly out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : rhs.terms_) out.put(ka + kb, ca * cb);
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

LaurentPoly LaurentPoly::times_term(const Rational& c, int k) const {
    LaurentPoly out;
    if (qmat::is_zero(c)) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e + k, v * c);
    return out;
}

LaurentPoly& LaurentPoly::scale(const Rational& c) {
    *this = times_term(c, 0);
    return *this;
}

Rational LaurentPoly::evaluate(const Rational& v) const {
    if (qmat::is_zero(v)) throw ZeroSpecialization();
    Rational acc(0);
    for (const auto& [k, c] : terms_) acc += c * rational_pow(v, k);
    return acc;
}

namespace {

// Dense ordinary-polynomial view: coefficients ascending from degree 0.
using Dense = std::vector<Rational>;

Dense to_dense(const LaurentPoly& p) {
    Dense d(static_cast<std::size_t>(p.highest_exponent() - p.lowest_exponent()) + 1,
            Rational(0));
    int low = p.lowest_exponent();
    for (const auto& [k, c] : p.terms()) d[static_cast<std::size_t>(k - low)] = c;
    return d;
}

LaurentPoly from_dense(const Dense& d, int shift) {
    LaurentPoly out;
    for (std::size_t i = 0; i < d.size(); ++i)
        out += LaurentPoly::term(d[i], static_cast<int>(i) + shift);
    return out;
}

void trim(Dense& d) {
    while (!d.empty() && qmat::is_zero(d.back())) d.pop_back();
}

// Remainder of a by b over Q[x]; b nonzero, leading coeff of b is unit.
Dense poly_mod(Dense a, const Dense& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    return a;
}

void make_primitive(Dense& d) {
    Rational content(0);
    for (const auto& c : d) content = rational_gcd(content, c);
    if (qmat::is_zero(content) || qmat::is_one(content)) return;
    for (auto& c : d) c /= content;
}

}  // namespace

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& rhs) const {
    if (rhs.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (is_zero()) return LaurentPoly();
    int shift = lowest_exponent() - rhs.lowest_exponent();
    Dense a = to_dense(*this);
    Dense b = to_dense(rhs);
    Dense quot(a.size(), Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rational f = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        quot[off] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        trim(a);
    }
    if (!a.empty()) throw Error("polynomial division is not exact");
    return from_dense(quot, shift);
}

LaurentPoly LaurentPoly::gcd(const LaurentPoly& a, const LaurentPoly& b) {
    auto canonical = [](const LaurentPoly& p) {
        if (p.is_zero()) return LaurentPoly();
        return p.times_term(Rational(1) / p.leading_coeff(), -p.lowest_exponent());
    };
    if (a.is_zero()) return canonical(b);
    if (b.is_zero()) return canonical(a);
    Dense pa = to_dense(a);
    Dense pb = to_dense(b);
    make_primitive(pa);
    make_primitive(pb);
    while (!pb.empty()) {
        Dense pr = poly_mod(pa, pb);
        make_primitive(pr);
        pa = std::move(pb);
        pb = std::move(pr);
    }
    return canonical(from_dense(pa, 0));
}

}  // namespace qmat
