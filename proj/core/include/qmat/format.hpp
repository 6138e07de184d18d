#pragma once

#include <string>
#include <vector>

#include "qmat/element.hpp"

namespace qmat {

namespace detail {

// One summand with its sign pulled out, ready for " + " / " - " joining.
struct Atom {
    bool negative;
    std::string text;
};

// Multiplicative prefix of a monomial term.  is_unit means the magnitude
// is 1, so the prefix (and its "*") is omitted entirely.
struct CoeffText {
    bool negative;
    bool is_unit;
    std::string text;
};

std::vector<Atom> scalar_atoms(const Rational& c);
std::vector<Atom> scalar_atoms(const RationalFunction& c);
CoeffText coeff_text(const Rational& c);
CoeffText coeff_text(const RationalFunction& c);
std::string monomial_text(const AlgebraShape& s, const Monomial& m);
std::string join_atoms(const std::vector<Atom>& atoms);

}  // namespace detail

std::string to_text(const LaurentPoly& p);
std::string to_text(const RationalFunction& f);

// Canonical printed form: terms in descending graded-lex order, multi-term
// coefficients parenthesized, exponents as ^k.  The output parses back to
// an equal element, and equal elements print identically.
template <class K>
std::string to_text(const Element<K>& x) {
    if (x.is_zero()) return "0";
    std::vector<detail::Atom> atoms;
    for (const auto& [m, c] : x.terms()) {
        if (m.is_empty()) {
            for (auto&& a : detail::scalar_atoms(c)) atoms.push_back(a);
            continue;
        }
        detail::CoeffText ct = detail::coeff_text(c);
        std::string mono = detail::monomial_text(x.shape(), m);
        atoms.push_back(
            {ct.negative, ct.is_unit ? std::move(mono) : ct.text + "*" + mono});
    }
    return detail::join_atoms(atoms);
}

}  // namespace qmat
