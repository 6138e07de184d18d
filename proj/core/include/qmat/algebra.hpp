#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qmat/element.hpp"

namespace qmat {

inline Rational scalar_pow(const Rational& v, long k) { return rational_pow(v, k); }
inline RationalFunction scalar_pow(const RationalFunction& f, long k) { return f.pow(k); }

// Coefficients used when a wrongly-ordered adjacent pair of generators is
// rewritten.  The standard table encodes the defining relations; tests may
// build deliberately perturbed tables to watch checks fail.
template <class K>
struct RelationTable {
    K same_row;     // (i,b)(i,a) -> same_row * (i,a)(i,b), a < b
    K same_col;     // (j,a)(i,a) -> same_col * (i,a)(j,a), i < j
    K distant;      // (j,b)(i,a) -> distant * (i,a)(j,b), i < j, a > b
    K cross_swap;   // (j,b)(i,a) -> cross_swap * (i,a)(j,b) + ..., i < j, a < b
    K cross_extra;  // ... + cross_extra * (i,b)(j,a)

    static RelationTable standard(const K& q) {
        if (qmat::is_zero(q)) throw ZeroSpecialization();
        K qinv = scalar_pow(q, -1);
        return RelationTable{qinv, qinv, K(1), K(1), K(0) - (q - qinv)};
    }
};

// Which wrongly-ordered adjacent pair is rewritten first.  All strategies
// reach the same normal form; having several makes that testable.
enum class StraightenStrategy { Leftmost, Rightmost, Random };

enum class RelationKind { RowSwap, ColSwap, Distant, Cross };

// One instance of a defining relation, identified by its generator pair
// a < b.  RowSwap: same row; ColSwap: same column; Distant: a strictly
// north-east of b; Cross: a strictly north-west of b.
struct RelationInstance {
    RelationKind kind;
    Gen a;
    Gen b;

    std::string str() const {
        const char* k = kind == RelationKind::RowSwap   ? "row-swap"
                        : kind == RelationKind::ColSwap ? "col-swap"
                        : kind == RelationKind::Distant ? "commute"
                                                        : "cross";
        return std::string(k) + " " + a.str() + "," + b.str();
    }
};

// All defining-relation instances of the shape, one per generator pair.
inline std::vector<RelationInstance> defining_relations(const AlgebraShape& s) {
    require_valid(s);
    std::vector<RelationInstance> out;
    int total = s.generator_count();
    for (int i = 0; i < total; ++i) {
        for (int j = i + 1; j < total; ++j) {
            Gen a = gen_at(s, i);
            Gen b = gen_at(s, j);
            RelationKind kind;
            if (a.row == b.row)
                kind = RelationKind::RowSwap;
            else if (a.col == b.col)
                kind = RelationKind::ColSwap;
            else if (a.col > b.col)
                kind = RelationKind::Distant;
            else
                kind = RelationKind::Cross;
            out.push_back(RelationInstance{kind, a, b});
        }
    }
    return out;
}

template <class K>
struct RelationTerm {
    K coeff;
    Gen g1;
    Gen g2;
};

// The quantized coordinate ring of the rectangular matrix space: an
// iterated skew-polynomial extension whose normal-form basis consists of
// the ordered monomials in the generators.
//
// All methods are const and touch only local state, so one Algebra may be
// shared by concurrent readers.
template <class K>
class Algebra {
public:
    Algebra(const AlgebraShape& s, const K& q)
        : Algebra(s, q, RelationTable<K>::standard(q)) {}

    Algebra(const AlgebraShape& s, const K& q, RelationTable<K> table)
        : shape_(s), q_(q), table_(std::move(table)) {
        require_valid(s);
        if (qmat::is_zero(q)) throw ZeroSpecialization();
    }

    const AlgebraShape& shape() const { return shape_; }
    const K& q() const { return q_; }
    K q_power(long k) const { return scalar_pow(q_, k); }
    const RelationTable<K>& table() const { return table_; }

    Element<K> zero() const { return Element<K>::zero(shape_); }
    Element<K> one() const { return Element<K>::one(shape_); }
    Element<K> scalar(const K& c) const { return Element<K>::scalar(shape_, c); }
    Element<K> generator(Gen g) const { return Element<K>::generator(shape_, g); }
    Element<K> generator(int row, int col) const {
        return Element<K>::generator(shape_, Gen{row, col});
    }

    // Normal form of a formal word.  Rewrites one wrongly-ordered adjacent
    // pair at a time; every rewrite replaces a word by lexicographically
    // smaller words of the same length, so the worklist terminates.
    Element<K> straighten(const Word& w,
                          StraightenStrategy strategy = StraightenStrategy::Leftmost,
                          std::uint64_t seed = 0) const {
        for (Gen g : w) require_in_shape(shape_, g);
        std::mt19937_64 rng(seed);
        Element<K> out(shape_);
        std::map<Word, K> pending;
        pending.emplace(w, K(1));
        while (!pending.empty()) {
            auto node = pending.extract(pending.begin());
            const Word& cur = node.key();
            K c = std::move(node.mapped());
            if (qmat::is_zero(c)) continue;
            std::vector<std::size_t> inversions;
            for (std::size_t k = 0; k + 1 < cur.size(); ++k)
                if (cur[k + 1] < cur[k]) inversions.push_back(k);
            if (inversions.empty()) {
                out.accumulate(Monomial::from_word(shape_, cur), c);
                continue;
            }
            std::size_t k;
            switch (strategy) {
                case StraightenStrategy::Leftmost: k = inversions.front(); break;
                case StraightenStrategy::Rightmost: k = inversions.back(); break;
                default:
                    k = inversions[std::uniform_int_distribution<std::size_t>(
                        0, inversions.size() - 1)(rng)];
            }
            Gen left = cur[k];
            Gen right = cur[k + 1];  // right < left
            Word swapped = cur;
            std::swap(swapped[k], swapped[k + 1]);
            auto push = [&pending](Word word, K coeff) {
                auto [it, inserted] = pending.emplace(std::move(word), coeff);
                if (!inserted) it->second += coeff;
            };
            if (left.row == right.row) {
                push(std::move(swapped), c * table_.same_row);
            } else if (left.col == right.col) {
                push(std::move(swapped), c * table_.same_col);
            } else if (left.col < right.col) {
                push(std::move(swapped), c * table_.distant);
            } else {
                push(std::move(swapped), c * table_.cross_swap);
                Word extra = cur;
                extra[k] = Gen{right.row, left.col};
                extra[k + 1] = Gen{left.row, right.col};
                push(std::move(extra), c * table_.cross_extra);
            }
        }
        return out;
    }

    Element<K> multiply(const Element<K>& a, const Element<K>& b) const {
        require_same(shape_, a.shape());
        require_same(shape_, b.shape());
        Element<K> out(shape_);
        for (const auto& [ma, ca] : a.terms()) {
            for (const auto& [mb, cb] : b.terms()) {
                K c = ca * cb;
                if (ma.is_empty()) {
                    out.accumulate(mb, c);
                    continue;
                }
                if (mb.is_empty()) {
                    out.accumulate(ma, c);
                    continue;
                }
                Word w = ma.word(shape_);
                Word wb = mb.word(shape_);
                w.insert(w.end(), wb.begin(), wb.end());
                out.accumulate_scaled(straighten(w), c);
            }
        }
        return out;
    }

    Element<K> pow(const Element<K>& a, unsigned int k) const {
        Element<K> acc = one();
        for (unsigned int i = 0; i < k; ++i) acc = multiply(acc, a);
        return acc;
    }

    Element<K> commutator(const Element<K>& a, const Element<K>& b) const {
        return multiply(a, b) - multiply(b, a);
    }

    // Terms of one defining relation: the sum evaluates to zero under the
    // standard table.  Coefficients come from q directly, not from the
    // table, so a perturbed table makes the residuals visibly nonzero.
    std::vector<RelationTerm<K>> relation_terms(const RelationInstance& r) const {
        K qinv = q_power(-1);
        std::vector<RelationTerm<K>> t;
        switch (r.kind) {
            case RelationKind::RowSwap:
            case RelationKind::ColSwap:
                t.push_back({K(1), r.b, r.a});
                t.push_back({K(0) - qinv, r.a, r.b});
                break;
            case RelationKind::Distant:
                t.push_back({K(1), r.b, r.a});
                t.push_back({K(0) - K(1), r.a, r.b});
                break;
            case RelationKind::Cross:
                t.push_back({K(1), r.b, r.a});
                t.push_back({K(0) - K(1), r.a, r.b});
                t.push_back({q_ - qinv, Gen{r.a.row, r.b.col}, Gen{r.b.row, r.a.col}});
                break;
        }
        return t;
    }

    // Normal form of the relation's term list; zero iff the engine's
    // rewrites agree with the defining relations.
    Element<K> relation_residual(const RelationInstance& r) const {
        Element<K> out(shape_);
        for (const auto& term : relation_terms(r))
            out.accumulate_scaled(straighten(Word{term.g1, term.g2}), term.coeff);
        return out;
    }

private:
    AlgebraShape shape_;
    K q_;
    RelationTable<K> table_;
};

// Ordered monomials of total degree d, in descending graded-lex order.
inline std::vector<Monomial> monomials_of_degree(const AlgebraShape& s, int d) {
    require_valid(s);
    if (d < 0) return {};
    std::vector<Monomial> out;
    Word scratch;
    int total = s.generator_count();
    // Assign exponents to the flat positions greedily from the left;
    // larger early exponents first gives descending graded-lex.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == total - 1) {
            for (int k = 0; k < remaining; ++k) scratch.push_back(gen_at(s, pos));
            out.push_back(Monomial::from_word(s, scratch));
            for (int k = 0; k < remaining; ++k) scratch.pop_back();
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            for (int k = 0; k < e; ++k) scratch.push_back(gen_at(s, pos));
            self(self, pos + 1, remaining - e);
            for (int k = 0; k < e; ++k) scratch.pop_back();
        }
    };
    rec(rec, 0, d);
    return out;
}

// Number of ordered monomials of total degree d: C(d + g - 1, d) for g
// generators.
inline std::uint64_t monomial_count(const AlgebraShape& s, int d) {
    require_valid(s);
    if (d < 0) return 0;
    mpz_class num(1);
    mpz_class den(1);
    int g = s.generator_count();
    for (int i = 1; i <= d; ++i) {
        num *= g - 1 + i;
        den *= i;
    }
    mpz_class out = num / den;
    if (!out.fits_ulong_p()) throw Error("monomial count overflows");
    return out.get_ui();
}

}  // namespace qmat
