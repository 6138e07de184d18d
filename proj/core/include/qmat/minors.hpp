#pragma once

#include <algorithm>
#include <map>

#include "qmat/algebra.hpp"

namespace qmat {

// Strictly increasing 1-based row or column indices.
using IndexSet = std::vector<int>;

inline void require_index_set(const IndexSet& set, int bound, const char* what) {
    if (set.empty())
        throw InvalidIndexSet(std::string(what) + " index set is empty");
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] < 1 || set[i] > bound)
            throw IndexOutOfRange(std::string(what) + " index " +
                                  std::to_string(set[i]) + " outside 1.." +
                                  std::to_string(bound));
        if (i > 0 && set[i] <= set[i - 1])
            throw InvalidIndexSet(std::string(what) +
                                  " index set must be strictly increasing");
    }
}

// Complement of a valid index set inside 1..bound.
inline IndexSet complement(const IndexSet& set, int bound) {
    IndexSet out;
    std::size_t pos = 0;
    for (int v = 1; v <= bound; ++v) {
        if (pos < set.size() && set[pos] == v)
            ++pos;
        else
            out.push_back(v);
    }
    return out;
}

struct MinorId {
    IndexSet rows;
    IndexSet cols;

    std::string str() const {
        auto list = [](const IndexSet& s) {
            std::string out = "[";
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(s[i]);
            }
            return out + "]";
        };
        return list(rows) + "|" + list(cols);
    }
};

namespace detail {

inline int inversion_count(const std::vector<int>& perm) {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv;
}

}  // namespace detail

// Quantum minor: the alternating sum over permutations w of the column
// set, with weight (-q)^(inversions of w), of the row-ordered products.
// A t x t minor is homogeneous of degree t.
template <class K>
Element<K> quantum_minor(const Algebra<K>& A, const MinorId& id) {
    require_index_set(id.rows, A.shape().rows, "row");
    require_index_set(id.cols, A.shape().cols, "column");
    if (id.rows.size() != id.cols.size())
        throw SizeMismatch("minor needs equally many rows and columns");
    std::size_t t = id.rows.size();
    std::vector<int> perm(t);
    for (std::size_t i = 0; i < t; ++i) perm[i] = static_cast<int>(i);
    Element<K> out(A.shape());
    do {
        int ell = detail::inversion_count(perm);
        Word w;
        for (std::size_t i = 0; i < t; ++i)
            w.push_back(Gen{id.rows[i], id.cols[static_cast<std::size_t>(perm[i])]});
        K c = A.q_power(ell);
        if (ell % 2 != 0) c = K(0) - c;
        out.accumulate_scaled(A.straighten(w), c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// The full quantum determinant of a square shape; generates the center.
template <class K>
Element<K> quantum_determinant(const Algebra<K>& A) {
    require_square(A.shape());
    IndexSet all;
    for (int i = 1; i <= A.shape().rows; ++i) all.push_back(i);
    return quantum_minor(A, MinorId{all, all});
}

// The antidiagonal chain of normal elements on a square shape:
// index 1..n walks solid minors up the last columns, n..2n-1 walks them
// down the first columns, and index 2n is the constant 1.
template <class K>
Element<K> b_element(const Algebra<K>& A, int index) {
    require_square(A.shape());
    int n = A.shape().rows;
    if (index < 1 || index > 2 * n)
        throw IndexOutOfRange("normal-element index " + std::to_string(index) +
                              " outside 1.." + std::to_string(2 * n));
    if (index == 2 * n) return A.one();
    IndexSet rows;
    IndexSet cols;
    if (index <= n) {
        for (int i = 1; i <= index; ++i) rows.push_back(i);
        for (int a = n - index + 1; a <= n; ++a) cols.push_back(a);
    } else {
        for (int i = index - n + 1; i <= n; ++i) rows.push_back(i);
        for (int a = 1; a <= 2 * n - index; ++a) cols.push_back(a);
    }
    return quantum_minor(A, MinorId{rows, cols});
}

// Commutative polynomial in n variables: exponent tuple -> coefficient.
using CommPoly = std::map<std::vector<int>, Rational>;

// Image of a commutative polynomial under the substitution that realizes
// it as a normal element: each variable j contributes the pair of chain
// elements b_j and b_{n+j}, with exponents i and r_j - i where r_j is the
// variable's top degree.  Factors are multiplied in ascending j with b_j
// before b_{n+j}.
template <class K>
Element<K> normal_from_polynomial(const Algebra<K>& A, const CommPoly& poly) {
    require_square(A.shape());
    int n = A.shape().rows;
    std::vector<int> top(static_cast<std::size_t>(n), 0);
    for (const auto& [exps, c] : poly) {
        if (exps.size() != static_cast<std::size_t>(n))
            throw SizeMismatch("exponent tuple length must equal the shape size");
        for (int j = 0; j < n; ++j) {
            if (exps[static_cast<std::size_t>(j)] < 0)
                throw IndexOutOfRange("negative exponent in polynomial");
            top[static_cast<std::size_t>(j)] =
                std::max(top[static_cast<std::size_t>(j)], exps[static_cast<std::size_t>(j)]);
        }
    }
    Element<K> out(A.shape());
    for (const auto& [exps, c] : poly) {
        if (is_zero(c)) continue;
        Element<K> factor = A.one();
        for (int j = 0; j < n; ++j) {
            int e = exps[static_cast<std::size_t>(j)];
            int co = top[static_cast<std::size_t>(j)] - e;
            factor = A.multiply(factor,
                                A.pow(b_element(A, j + 1), static_cast<unsigned>(e)));
            factor = A.multiply(factor, A.pow(b_element(A, n + j + 1),
                                              static_cast<unsigned>(co)));
        }
        out += factor.scaled(K(c));
    }
    return out;
}

// Generator image under the determinant-valued anti-endomorphism: the
// complementary minor with rows and columns exchanged, weighted by
// (-q)^(row - col).
template <class K>
Element<K> gamma_generator_image(const Algebra<K>& A, Gen g) {
    require_square(A.shape());
    require_in_shape(A.shape(), g);
    int n = A.shape().rows;
    if (n < 2)
        throw ShapeMismatch("the anti-endomorphism needs a shape of size >= 2");
    MinorId id{complement({g.col}, n), complement({g.row}, n)};
    int d = g.row - g.col;
    K c = A.q_power(d);
    if (((d % 2) + 2) % 2 == 1) c = K(0) - c;
    return quantum_minor(A, id).scaled(c);
}

// Apply the anti-endomorphism to a whole element: reverse each monomial
// and multiply the generator images in the reversed order.
template <class K>
Element<K> gamma(const Algebra<K>& A, const Element<K>& x) {
    require_same(A.shape(), x.shape());
    Element<K> out(A.shape());
    int total = A.shape().generator_count();
    for (const auto& [m, c] : x.terms()) {
        Element<K> acc = A.one();
        for (int idx = total - 1; idx >= 0; --idx) {
            int e = m.exponent(idx);
            if (e == 0) continue;
            Element<K> img = gamma_generator_image(A, gen_at(A.shape(), idx));
            acc = A.multiply(acc, A.pow(img, static_cast<unsigned>(e)));
        }
        out += acc.scaled(c);
    }
    return out;
}

}  // namespace qmat
