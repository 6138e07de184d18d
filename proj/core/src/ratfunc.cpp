#include "qmat/ratfunc.hpp"

#include "qmat/errors.hpp"

namespace qmat {

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    reduce();
}

void RationalFunction::normalize_unit() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    Rational lc = den_.leading_coeff();
    int low = den_.lowest_exponent();
    if (qmat::is_one(lc) && low == 0) return;
    Rational inv = Rational(1) / lc;
    num_ = num_.times_term(inv, -low);
    den_ = den_.times_term(inv, -low);
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    if (!den_.is_one()) {
        LaurentPoly g = LaurentPoly::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_.divide_exact(g);
            den_ = den_.divide_exact(g);
        }
    }
    normalize_unit();
}

RationalFunction RationalFunction::operator+(const RationalFunction& rhs) const {
    if (is_zero()) return rhs;
    if (rhs.is_zero()) return *this;
    if (den_.is_one() && rhs.den_.is_one())
        return RationalFunction(raw_t{}, num_ + rhs.num_, LaurentPoly(1));
    return RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& rhs) const {
    return *this + (-rhs);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out = *this;
    out.num_ = -out.num_;
    return out;
}

RationalFunction RationalFunction::operator*(const RationalFunction& rhs) const {
    if (is_zero() || rhs.is_zero()) return RationalFunction();
    if (den_.is_one() && rhs.den_.is_one())
        return RationalFunction(raw_t{}, num_ * rhs.num_, LaurentPoly(1));
    return RationalFunction(num_ * rhs.num_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& rhs) const {
    return *this * rhs.inverse();
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    // gcd(num, den) = 1 survives the swap; only the unit needs fixing.
    return RationalFunction(raw_t{}, den_, num_);
}

RationalFunction RationalFunction::pow(long k) const {
    if (k == 0) return RationalFunction(1);
    RationalFunction base = k < 0 ? inverse() : *this;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1
                            : static_cast<unsigned long>(k);
    RationalFunction acc(1);
    while (e != 0) {
        if (e & 1UL) acc *= base;
        base = base * base;
        e >>= 1UL;
    }
    return acc;
}

Rational RationalFunction::evaluate(const Rational& v) const {
    if (qmat::is_zero(v)) throw ZeroSpecialization();
    if (is_zero()) return Rational(0);
    Rational dv = den_.evaluate(v);
    if (qmat::is_zero(dv))
        throw PoleAtSpecialization("coefficient has a pole at q = " + to_text(v));
    return num_.evaluate(v) / dv;
}

}  // namespace qmat
