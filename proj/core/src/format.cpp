#include "qmat/format.hpp"

namespace qmat {
namespace detail {
namespace {

// c * q^k with c > 0, as a bare product like "3/2*q^-1", "q^2" or "5".
std::string term_text(const Rational& c, int k) {
    if (k == 0) return to_text(c);
    std::string qpart = k == 1 ? "q" : "q^" + std::to_string(k);
    if (qmat::is_one(c)) return qpart;
    return to_text(c) + "*" + qpart;
}

// Nonzero polynomial, highest exponent first: "q - q^-1".
std::string poly_text(const LaurentPoly& p) {
    std::vector<Atom> atoms;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        bool neg = sgn(it->second) < 0;
        atoms.push_back({neg, term_text(neg ? Rational(-it->second) : it->second,
                                        it->first)});
    }
    return join_atoms(atoms);
}

std::string wrapped_poly_text(const LaurentPoly& p) {
    if (p.term_count() == 1)
        return term_text(p.leading_coeff(), p.highest_exponent());
    return "(" + poly_text(p) + ")";
}

}  // namespace

std::string join_atoms(const std::vector<Atom>& atoms) {
    std::string out;
    for (const Atom& a : atoms) {
        if (out.empty())
            out += a.negative ? "-" : "";
        else
            out += a.negative ? " - " : " + ";
        out += a.text;
    }
    return out;
}

std::vector<Atom> scalar_atoms(const Rational& c) {
    bool neg = sgn(c) < 0;
    return {{neg, to_text(neg ? Rational(-c) : c)}};
}

std::vector<Atom> scalar_atoms(const RationalFunction& c) {
    if (c.is_polynomial()) {
        std::vector<Atom> atoms;
        for (auto it = c.num().terms().rbegin(); it != c.num().terms().rend(); ++it) {
            bool neg = sgn(it->second) < 0;
            atoms.push_back({neg, term_text(neg ? Rational(-it->second) : it->second,
                                            it->first)});
        }
        return atoms;
    }
    bool neg = sgn(c.num().leading_coeff()) < 0;
    LaurentPoly num = neg ? -c.num() : c.num();
    return {{neg, wrapped_poly_text(num) + "/(" + poly_text(c.den()) + ")"}};
}

CoeffText coeff_text(const Rational& c) {
    bool neg = sgn(c) < 0;
    Rational mag = neg ? Rational(-c) : c;
    return {neg, qmat::is_one(mag), to_text(mag)};
}

CoeffText coeff_text(const RationalFunction& c) {
    if (c.is_polynomial()) {
        bool neg = sgn(c.num().leading_coeff()) < 0;
        LaurentPoly num = neg ? -c.num() : c.num();
        return {neg, num.is_one(), wrapped_poly_text(num)};
    }
    bool neg = sgn(c.num().leading_coeff()) < 0;
    LaurentPoly num = neg ? -c.num() : c.num();
    return {neg, false, wrapped_poly_text(num) + "/(" + poly_text(c.den()) + ")"};
}

std::string monomial_text(const AlgebraShape& s, const Monomial& m) {
    std::string out;
    for (int i = 0; i < s.generator_count(); ++i) {
        int e = m.exponent(i);
        if (e == 0) continue;
        if (!out.empty()) out += "*";
        out += gen_at(s, i).str();
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace detail

std::string to_text(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    return detail::poly_text(p);
}

std::string to_text(const RationalFunction& f) {
    if (f.is_zero()) return "0";
    return detail::join_atoms(detail::scalar_atoms(f));
}

std::string LaurentPoly::str() const { return to_text(RationalFunction(*this)); }

std::string RationalFunction::str() const { return to_text(*this); }

}  // namespace qmat
