#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qmat/shape.hpp"

namespace qmat {

// Exponent vector of an ordered (normal-form) monomial, indexed by the
// row-major generator position.  The vector length is fixed by the shape
// it was created for.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(const AlgebraShape& s)
        : exps_(static_cast<std::size_t>(s.generator_count()), 0) {}

    static Monomial from_word(const AlgebraShape& s, const Word& w) {
        Monomial m(s);
        for (Gen g : w) ++m.exps_[static_cast<std::size_t>(gen_index(s, g))];
        return m;
    }

    static Monomial generator(const AlgebraShape& s, Gen g) {
        Monomial m(s);
        m.exps_[static_cast<std::size_t>(gen_index(s, g))] = 1;
        return m;
    }

    int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
    std::size_t size() const { return exps_.size(); }
    int exponent(int flat_index) const {
        return exps_[static_cast<std::size_t>(flat_index)];
    }
    int exponent(const AlgebraShape& s, Gen g) const {
        return exps_[static_cast<std::size_t>(gen_index(s, g))];
    }
    bool is_empty() const {
        for (int e : exps_)
            if (e != 0) return false;
        return true;
    }

    // Expansion as an ordered word: Y[1,1]-block first.
    Word word(const AlgebraShape& s) const {
        Word w;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            for (int k = 0; k < exps_[i]; ++k)
                w.push_back(gen_at(s, static_cast<int>(i)));
        return w;
    }

    // Exponent-wise sum; the commutative shadow of a product.
    Monomial times(const Monomial& rhs) const {
        Monomial out = *this;
        for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] += rhs.exps_[i];
        return out;
    }

    bool operator==(const Monomial&) const = default;

    // Graded lexicographic order: first by total degree, then earlier
    // generators weigh more.  Y[1,1]^2 > Y[1,1]*Y[1,2] > Y[1,2]^2.
    static std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
        int da = a.degree();
        int db = b.degree();
        if (da != db) return da <=> db;
        for (std::size_t i = 0; i < a.exps_.size(); ++i)
            if (a.exps_[i] != b.exps_[i]) return a.exps_[i] <=> b.exps_[i];
        return std::strong_ordering::equal;
    }

private:
    std::vector<int> exps_;
};

// Comparator putting the grlex-largest monomial first; the storage and
// printing order of element terms.
struct MonomialDescGrlex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::grlex(a, b) == std::strong_ordering::greater;
    }
};

}  // namespace qmat
