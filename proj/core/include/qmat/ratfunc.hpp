#pragma once

#include <optional>
#include <string>

#include "qmat/laurent.hpp"

namespace qmat {

// Element of Q(q), the scalar field of the generic-parameter algebra.
//
// Canonical form: reduced fraction of Laurent polynomials with the
// denominator monic and of lowest exponent 0; zero is 0/1.  Every
// constructor and operation restores this form, so operator== is
// structural equality.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(int c) : num_(c), den_(1) {}
    RationalFunction(const Rational& c) : num_(c), den_(1) {}
    RationalFunction(LaurentPoly p) : num_(std::move(p)), den_(1) {}
    RationalFunction(LaurentPoly num, LaurentPoly den);

    static RationalFunction q_power(int k) {
        return RationalFunction(LaurentPoly::q_power(k));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    // The value as an element of Q, when it is one.
    std::optional<Rational> as_rational() const {
        if (!den_.is_one() || !num_.is_constant()) return std::nullopt;
        return num_.coeff(0);
    }

    RationalFunction operator+(const RationalFunction& rhs) const;
    RationalFunction operator-(const RationalFunction& rhs) const;
    RationalFunction operator*(const RationalFunction& rhs) const;
    RationalFunction operator/(const RationalFunction& rhs) const;
    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& rhs) { return *this = *this + rhs; }
    RationalFunction& operator-=(const RationalFunction& rhs) { return *this = *this - rhs; }
    RationalFunction& operator*=(const RationalFunction& rhs) { return *this = *this * rhs; }
    RationalFunction& operator/=(const RationalFunction& rhs) { return *this = *this / rhs; }

    RationalFunction inverse() const;
    RationalFunction pow(long k) const;

    bool operator==(const RationalFunction& rhs) const {
        return num_ == rhs.num_ && den_ == rhs.den_;
    }

    // Substitute q = v.  Throws ZeroSpecialization for v = 0 and
    // PoleAtSpecialization when the denominator vanishes at v.
    Rational evaluate(const Rational& v) const;

    std::string str() const;

private:
    LaurentPoly num_;
    LaurentPoly den_;

    struct raw_t {};
    // Trusted constructor: inputs already reduced, only the unit part of
    // the denominator may need fixing.
    RationalFunction(raw_t, LaurentPoly num, LaurentPoly den)
        : num_(std::move(num)), den_(std::move(den)) {
        normalize_unit();
    }
    void reduce();
    void normalize_unit();
};

inline bool is_zero(const RationalFunction& f) { return f.is_zero(); }
inline bool is_one(const RationalFunction& f) { return f.is_one(); }

}  // namespace qmat
