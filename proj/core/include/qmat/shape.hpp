#pragma once

#include <compare>
#include <string>
#include <vector>

#include "qmat/errors.hpp"

namespace qmat {

// Rectangle of generators Y[i,a] with 1 <= i <= rows, 1 <= a <= cols.
struct AlgebraShape {
    int rows = 0;
    int cols = 0;

    constexpr AlgebraShape() = default;
    constexpr AlgebraShape(int m, int n) : rows(m), cols(n) {}

    int generator_count() const { return rows * cols; }
    bool is_square() const { return rows == cols; }
    bool operator==(const AlgebraShape&) const = default;

    std::string str() const {
        return std::to_string(rows) + "x" + std::to_string(cols);
    }
};

inline AlgebraShape square_shape(int n) { return AlgebraShape(n, n); }

inline void require_valid(const AlgebraShape& s) {
    if (s.rows < 1 || s.cols < 1)
        throw IndexOutOfRange("shape must have at least one row and column");
}

inline void require_square(const AlgebraShape& s) {
    if (!s.is_square())
        throw ShapeMismatch("operation needs a square shape, got " + s.str());
}

inline void require_same(const AlgebraShape& a, const AlgebraShape& b) {
    if (!(a == b))
        throw ShapeMismatch("shapes differ: " + a.str() + " vs " + b.str());
}

// One generator, 1-based indices.  The default ordering (row, then
// column) is exactly the normal-form ordering of the basis monomials.
struct Gen {
    int row = 0;
    int col = 0;

    auto operator<=>(const Gen&) const = default;

    std::string str() const {
        return "Y[" + std::to_string(row) + "," + std::to_string(col) + "]";
    }
};

inline bool in_shape(const AlgebraShape& s, Gen g) {
    return g.row >= 1 && g.row <= s.rows && g.col >= 1 && g.col <= s.cols;
}

inline void require_in_shape(const AlgebraShape& s, Gen g) {
    if (!in_shape(s, g))
        throw IndexOutOfRange(g.str() + " is outside shape " + s.str());
}

// Row-major flat position of a generator; inverse of gen_at.
inline int gen_index(const AlgebraShape& s, Gen g) {
    return (g.row - 1) * s.cols + (g.col - 1);
}

inline Gen gen_at(const AlgebraShape& s, int index) {
    return Gen{index / s.cols + 1, index % s.cols + 1};
}

// A formal product of generators, leftmost factor first.  Not assumed
// ordered; the straightening engine turns words into normal forms.
using Word = std::vector<Gen>;

}  // namespace qmat
