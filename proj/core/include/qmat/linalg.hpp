#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>

#include "qmat/ratfunc.hpp"

namespace qmat {

// Sparse vector over the field F: (column, value) pairs with strictly
// increasing columns and nonzero values.
template <class F>
using SparseRow = std::vector<std::pair<int, F>>;

template <class F>
SparseRow<F> linear_combine(const F& a, const SparseRow<F>& x, const F& b,
                            const SparseRow<F>& y) {
    SparseRow<F> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, b * y[j].second);
            ++j;
        } else {
            F v = a * x[i].second + b * y[j].second;
            if (!qmat::is_zero(v)) out.emplace_back(x[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <class F>
F sparse_dot(const SparseRow<F>& row, const std::vector<F>& dense) {
    F acc(0);
    for (const auto& [c, v] : row) acc += v * dense[static_cast<std::size_t>(c)];
    return acc;
}

// Row normalization hooks keep entries small during elimination.

inline void normalize_row(SparseRow<Rational>& row) {
    if (row.empty()) return;
    Rational content(0);
    for (const auto& [c, v] : row) content = rational_gcd(content, v);
    if (sgn(row.front().second) < 0) content = -content;
    if (qmat::is_one(content)) return;
    for (auto& [c, v] : row) v /= content;
}

// Clear denominators, strip the polynomial gcd, the rational content and
// the common power of q, and normalize the sign of the first entry.
inline void normalize_row(SparseRow<RationalFunction>& row) {
    if (row.empty()) return;
    LaurentPoly den_lcm(1);
    for (const auto& [c, v] : row) {
        if (v.is_polynomial()) continue;
        LaurentPoly g = LaurentPoly::gcd(den_lcm, v.den());
        den_lcm = (den_lcm * v.den()).divide_exact(g);
    }
    std::vector<LaurentPoly> nums;
    nums.reserve(row.size());
    if (den_lcm.is_one()) {
        for (const auto& [c, v] : row) nums.push_back(v.num());
    } else {
        RationalFunction mult(den_lcm);
        for (const auto& [c, v] : row) {
            RationalFunction p = v * mult;
            nums.push_back(p.num());  // polynomial by construction
        }
    }
    LaurentPoly g;
    for (const auto& p : nums) {
        g = LaurentPoly::gcd(g, p);
        if (g.is_one()) break;
    }
    if (!g.is_one()) {
        for (auto& p : nums) p = p.divide_exact(g);
    }
    Rational content(0);
    int shift = INT_MAX;
    for (const auto& p : nums) {
        shift = std::min(shift, p.lowest_exponent());
        for (const auto& [k, c] : p.terms()) content = rational_gcd(content, c);
    }
    if (sgn(nums.front().leading_coeff()) < 0) content = -content;
    Rational inv = Rational(1) / content;
    for (std::size_t i = 0; i < nums.size(); ++i)
        row[i].second = RationalFunction(nums[i].times_term(inv, -shift));
}

// Incremental row-echelon elimination with fraction-free updates:
// candidate rows are reduced against the stored pivots by cross
// multiplication, so no entry ever needs a true division.
template <class F>
class Echelon {
public:
    explicit Echelon(int ncols) : ncols_(ncols) {
        if (ncols < 0) throw SizeMismatch("negative column count");
    }

    int cols() const { return ncols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Insert a row, reducing it first; returns whether the rank grew.
    bool add_row(SparseRow<F> row) {
        check_row(row);
        normalize_row(row);
        while (!row.empty()) {
            auto it = by_lead_.find(row.front().first);
            if (it == by_lead_.end()) {
                by_lead_.emplace(row.front().first, rows_.size());
                rows_.push_back(std::move(row));
                return true;
            }
            const SparseRow<F>& pivot = rows_[static_cast<std::size_t>(it->second)];
            F neg = F(0) - row.front().second;
            row = linear_combine(pivot.front().second, row, neg, pivot);
            normalize_row(row);
        }
        return false;
    }

    // Fully reduce a row against the pivots; empty result means the row
    // lies in the row space.
    SparseRow<F> reduce(SparseRow<F> row) const {
        check_row(row);
        std::size_t start = 0;
        while (start < row.size()) {
            auto it = by_lead_.find(row[start].first);
            if (it == by_lead_.end()) {
                ++start;
                continue;
            }
            const SparseRow<F>& pivot = rows_[static_cast<std::size_t>(it->second)];
            F neg = F(0) - row[start].second;
            row = linear_combine(pivot.front().second, row, neg, pivot);
            normalize_row(row);
            // entries left of 'start' were already pivot-free and stay so
        }
        return row;
    }

    bool in_row_space(const SparseRow<F>& row) const { return reduce(row).empty(); }

    std::vector<int> pivot_columns() const {
        std::vector<int> out;
        for (const auto& [c, idx] : by_lead_) out.push_back(c);
        return out;
    }

    std::vector<int> free_columns() const {
        std::vector<int> out;
        for (int c = 0; c < ncols_; ++c)
            if (!by_lead_.contains(c)) out.push_back(c);
        return out;
    }

    // Canonical kernel vector for a free column: 1 there, 0 at the other
    // free columns, pivot coordinates back-substituted.
    std::vector<F> kernel_vector(int free_col) const {
        if (by_lead_.contains(free_col))
            throw Error("column is not free");
        std::vector<F> x(static_cast<std::size_t>(ncols_), F(0));
        x[static_cast<std::size_t>(free_col)] = F(1);
        for (auto it = by_lead_.rbegin(); it != by_lead_.rend(); ++it) {
            const SparseRow<F>& row = rows_[static_cast<std::size_t>(it->second)];
            F acc(0);
            for (std::size_t k = 1; k < row.size(); ++k)
                acc += row[k].second * x[static_cast<std::size_t>(row[k].first)];
            if (!qmat::is_zero(acc))
                x[static_cast<std::size_t>(it->first)] =
                    (F(0) - acc) / row.front().second;
        }
        return x;
    }

    std::vector<std::vector<F>> kernel_basis() const {
        std::vector<std::vector<F>> out;
        for (int c : free_columns()) out.push_back(kernel_vector(c));
        return out;
    }

private:
    int ncols_;
    std::vector<SparseRow<F>> rows_;
    std::map<int, int> by_lead_;

    void check_row(const SparseRow<F>& row) const {
        int prev = -1;
        for (const auto& [c, v] : row) {
            if (c <= prev || c >= ncols_)
                throw SizeMismatch("sparse row has bad column structure");
            if (qmat::is_zero(v)) throw Error("sparse row stores a zero");
            prev = c;
        }
    }
};

// Reduced row-echelon canonicalization of a spanning set: pivots are 1
// with zeros above and below, rows sorted by pivot column.  Equal spans
// produce identical output.
template <class F>
std::vector<std::vector<F>> rref(std::vector<std::vector<F>> rows) {
    std::vector<std::vector<F>> basis;
    for (auto& row : rows) {
        for (const auto& b : basis) {
            std::size_t p = 0;
            while (qmat::is_zero(b[p])) ++p;
            F f = row[p];
            if (qmat::is_zero(f)) continue;
            for (std::size_t c = p; c < row.size(); ++c) row[c] -= f * b[c];
        }
        std::size_t p = 0;
        while (p < row.size() && qmat::is_zero(row[p])) ++p;
        if (p == row.size()) continue;
        F inv = F(1) / row[p];
        for (std::size_t c = p; c < row.size(); ++c) row[c] = row[c] * inv;
        for (auto& b : basis) {
            F f = b[p];
            if (qmat::is_zero(f)) continue;
            for (std::size_t c = p; c < row.size(); ++c) b[c] -= f * row[c];
        }
        basis.push_back(std::move(row));
    }
    std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) {
        std::size_t pa = 0, pb = 0;
        while (pa < a.size() && qmat::is_zero(a[pa])) ++pa;
        while (pb < b.size() && qmat::is_zero(b[pb])) ++pb;
        return pa < pb;
    });
    return basis;
}

// One solution of a sparse inhomogeneous system (free unknowns set to 0),
// or nothing when the system is inconsistent.
template <class F>
std::optional<std::vector<F>> solve_sparse(const std::vector<SparseRow<F>>& eqs,
                                           int nunknowns,
                                           const std::vector<F>& rhs) {
    if (eqs.size() != rhs.size())
        throw SizeMismatch("equation and right-hand-side counts differ");
    Echelon<F> ech(nunknowns + 1);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        SparseRow<F> row = eqs[i];
        if (!qmat::is_zero(rhs[i]))
            row.emplace_back(nunknowns, F(0) - rhs[i]);
        ech.add_row(std::move(row));
    }
    auto pivots = ech.pivot_columns();
    if (std::find(pivots.begin(), pivots.end(), nunknowns) != pivots.end())
        return std::nullopt;
    std::vector<F> x = ech.kernel_vector(nunknowns);
    x.pop_back();
    return x;
}

// Options for the exact kernel computation over Q(q).
struct KernelOptions {
    bool exact_only = false;
    std::vector<Rational> probe_values = {Rational(2), Rational(3), Rational(5)};
};

struct QKernel {
    std::vector<std::vector<RationalFunction>> basis;
    int rank = 0;
    bool used_specialization = false;
    int exact_rows_used = 0;
    int verification_rounds = 0;
};

// Exact kernel over Q(q).  The hybrid mode first locates a maximal
// independent row set with cheap specialized runs (q = v), eliminates
// only those rows exactly, then proves the candidate kernel correct by
// dotting every remaining row against it; rows that fail are added and
// the loop repeats.  Specializing can only lose rank, never gain it, so
// the verified result equals the exact one.
inline QKernel kernel_over_qfield(
    const std::vector<SparseRow<RationalFunction>>& rows, int ncols,
    const KernelOptions& opt = {}) {
    QKernel out;
    if (opt.exact_only) {
        Echelon<RationalFunction> ech(ncols);
        for (const auto& row : rows) ech.add_row(row);
        out.basis = ech.kernel_basis();
        out.rank = ech.rank();
        out.exact_rows_used = static_cast<int>(rows.size());
        return out;
    }
    for (const Rational& v : opt.probe_values)
        if (qmat::is_zero(v) || v == 1 || v == -1)
            throw Error("probe value must avoid 0, 1, and -1");

    std::vector<std::size_t> best_pivots;
    int best_rank = -1;
    bool any_probe = false;
    for (const Rational& v : opt.probe_values) {
        try {
            Echelon<Rational> ech(ncols);
            std::vector<std::size_t> pivots;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                SparseRow<Rational> srow;
                for (const auto& [c, f] : rows[i]) {
                    Rational val = f.evaluate(v);
                    if (!qmat::is_zero(val)) srow.emplace_back(c, std::move(val));
                }
                if (ech.add_row(std::move(srow))) pivots.push_back(i);
            }
            any_probe = true;
            if (ech.rank() > best_rank) {
                best_rank = ech.rank();
                best_pivots = std::move(pivots);
            }
        } catch (const PoleAtSpecialization&) {
            // this probe value hits a pole somewhere; try the next one
        }
    }
    if (!any_probe) {
        KernelOptions fallback;
        fallback.exact_only = true;
        return kernel_over_qfield(rows, ncols, fallback);
    }

    out.used_specialization = true;
    Echelon<RationalFunction> ech(ncols);
    for (std::size_t idx : best_pivots) {
        ech.add_row(rows[idx]);
        ++out.exact_rows_used;
    }
    for (int round = 0; round <= ncols + 1; ++round) {
        ++out.verification_rounds;
        std::vector<std::vector<RationalFunction>> kernel = ech.kernel_basis();
        std::vector<std::size_t> violating;
        if (!kernel.empty()) {
            for (std::size_t i = 0; i < rows.size(); ++i) {
                for (const auto& k : kernel) {
                    if (!sparse_dot(rows[i], k).is_zero()) {
                        violating.push_back(i);
                        break;
                    }
                }
            }
        }
        if (violating.empty()) {
            out.basis = std::move(kernel);
            out.rank = ech.rank();
            return out;
        }
        for (std::size_t idx : violating) {
            ech.add_row(rows[idx]);
            ++out.exact_rows_used;
        }
    }
    throw Error("kernel verification failed to converge");
}

}  // namespace qmat
