#pragma once

#include <map>
#include <string>

#include "qmat/rational.hpp"

namespace qmat {

// Laurent polynomial in q with rational coefficients.
//
// Canonical form invariant: the term map never stores a zero coefficient,
// so zero is exactly the empty map and operator== is structural.
class LaurentPoly {
public:
    // exponent -> coefficient, ascending exponent
    using TermMap = std::map<int, Rational>;

    LaurentPoly() = default;
    LaurentPoly(const Rational& c) { put(0, c); }
    LaurentPoly(int c) { put(0, Rational(c)); }

    static LaurentPoly q_power(int k) { return term(Rational(1), k); }
    static LaurentPoly term(const Rational& c, int k) {
        LaurentPoly p;
        p.put(k, c);
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_.begin()->first == 0);
    }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 &&
               qmat::is_one(terms_.begin()->second);
    }
    std::size_t term_count() const { return terms_.size(); }

    // Coefficient of q^k (zero when absent).
    Rational coeff(int k) const;

    // The four accessors below require a nonzero polynomial.
    int lowest_exponent() const;
    int highest_exponent() const;
    Rational leading_coeff() const;   // coefficient at the highest exponent
    Rational trailing_coeff() const;  // coefficient at the lowest exponent

    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    LaurentPoly operator+(const LaurentPoly& rhs) const;
    LaurentPoly operator-(const LaurentPoly& rhs) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& rhs) const;
    LaurentPoly& operator*=(const LaurentPoly& rhs);

    // Multiply by the single term c * q^k.
    LaurentPoly times_term(const Rational& c, int k) const;
    LaurentPoly& scale(const Rational& c);

    bool operator==(const LaurentPoly& rhs) const { return terms_ == rhs.terms_; }

    // Substitute q = v.  v = 0 is rejected (q must stay invertible).
    Rational evaluate(const Rational& v) const;

    // Exact division in the Laurent ring.  Throws DivisionByZero when rhs
    // is zero and Error when the division leaves a remainder.
    LaurentPoly divide_exact(const LaurentPoly& rhs) const;

    // gcd up to units c * q^k, canonicalized: monic with lowest exponent 0.
    // gcd(0, b) is the canonicalized b (and symmetrically).
    static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

    std::string str() const;

private:
    TermMap terms_;

    void put(int k, const Rational& c) {
        if (qmat::is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (qmat::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend class RationalFunction;
};

inline bool is_zero(const LaurentPoly& p) { return p.is_zero(); }
inline bool is_one(const LaurentPoly& p) { return p.is_one(); }

}  // namespace qmat
