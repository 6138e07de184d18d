#pragma once

#include <optional>
#include <variant>

#include "qmat/minors.hpp"

namespace qmat {

enum class MapKind { Homomorphism, AntiHomomorphism };

// A linear multiplicative (or anti-multiplicative) map given by its
// generator images.  verified becomes true once check_map has passed for
// the declared kind.
template <class K>
struct GeneratorMap {
    AlgebraShape shape;
    MapKind kind = MapKind::Homomorphism;
    std::vector<Element<K>> images;  // indexed by the row-major position
    bool verified = false;

    const Element<K>& image(Gen g) const {
        require_in_shape(shape, g);
        return images[static_cast<std::size_t>(gen_index(shape, g))];
    }
};

template <class K>
GeneratorMap<K> identity_map(const Algebra<K>& A) {
    GeneratorMap<K> f{A.shape(), MapKind::Homomorphism, {}, true};
    for (int i = 0; i < A.shape().generator_count(); ++i)
        f.images.push_back(A.generator(gen_at(A.shape(), i)));
    return f;
}

// Extend the generator images multiplicatively over an element.  For an
// anti-homomorphism each monomial's factors are consumed in reverse.
template <class K>
Element<K> apply_map(const Algebra<K>& A, const GeneratorMap<K>& f,
                     const Element<K>& x) {
    require_same(A.shape(), f.shape);
    require_same(A.shape(), x.shape());
    int total = A.shape().generator_count();
    Element<K> out(A.shape());
    for (const auto& [m, c] : x.terms()) {
        Element<K> acc = A.one();
        auto mul_in = [&](int idx) {
            int e = m.exponent(idx);
            if (e == 0) return;
            acc = A.multiply(acc, A.pow(f.images[static_cast<std::size_t>(idx)],
                                        static_cast<unsigned>(e)));
        };
        if (f.kind == MapKind::Homomorphism)
            for (int idx = 0; idx < total; ++idx) mul_in(idx);
        else
            for (int idx = total - 1; idx >= 0; --idx) mul_in(idx);
        out += acc.scaled(c);
    }
    return out;
}

template <class K>
struct RelationResidual {
    RelationInstance relation;
    Element<K> residual;
};

template <class K>
struct MapCheckReport {
    bool pass = false;
    std::vector<RelationResidual<K>> failures;
};

// Verify that the generator images satisfy every defining relation, i.e.
// that the map extends to the whole algebra.  For an anti-homomorphism
// the relation's products are reversed before substituting.
template <class K>
MapCheckReport<K> check_map(const Algebra<K>& A, const GeneratorMap<K>& f) {
    require_same(A.shape(), f.shape);
    MapCheckReport<K> report;
    report.pass = true;
    for (const auto& r : defining_relations(A.shape())) {
        Element<K> residual(A.shape());
        for (const auto& term : A.relation_terms(r)) {
            const Element<K>& x = f.image(term.g1);
            const Element<K>& y = f.image(term.g2);
            Element<K> prod = f.kind == MapKind::Homomorphism ? A.multiply(x, y)
                                                              : A.multiply(y, x);
            residual += prod.scaled(term.coeff);
        }
        if (!residual.is_zero()) {
            report.pass = false;
            report.failures.push_back({r, std::move(residual)});
        }
    }
    return report;
}

// Run check_map and mark the map verified; throws when the check fails.
template <class K>
GeneratorMap<K> verified(const Algebra<K>& A, GeneratorMap<K> f) {
    MapCheckReport<K> report = check_map(A, f);
    if (!report.pass)
        throw Error("generator map violates " +
                    report.failures.front().relation.str());
    f.verified = true;
    return f;
}

// Scaling parameters of a torus automorphism: one scalar per row and one
// per column, with the last column pinned to 1 so the tuple is unique.
template <class K>
struct TorusParam {
    std::vector<K> row_scalars;  // size = shape.rows, all nonzero
    std::vector<K> col_scalars;  // size = shape.cols, last entry 1

    K scalar_at(Gen g) const {
        return row_scalars[static_cast<std::size_t>(g.row - 1)] *
               col_scalars[static_cast<std::size_t>(g.col - 1)];
    }
};

template <class K>
void require_torus_param(const AlgebraShape& s, const TorusParam<K>& h) {
    if (h.row_scalars.size() != static_cast<std::size_t>(s.rows) ||
        h.col_scalars.size() != static_cast<std::size_t>(s.cols))
        throw SizeMismatch("torus parameter sizes do not match the shape");
    for (const K& a : h.row_scalars)
        if (qmat::is_zero(a)) throw Error("torus row scalar is zero");
    for (const K& b : h.col_scalars)
        if (qmat::is_zero(b)) throw Error("torus column scalar is zero");
    if (!qmat::is_one(h.col_scalars.back()))
        throw Error("last torus column scalar must be 1");
}

// Diagonal automorphism scaling Y[i,a] by row_scalars[i]*col_scalars[a].
template <class K>
GeneratorMap<K> torus_automorphism(const Algebra<K>& A, const TorusParam<K>& h) {
    require_torus_param(A.shape(), h);
    GeneratorMap<K> f{A.shape(), MapKind::Homomorphism, {}, false};
    for (int i = 0; i < A.shape().generator_count(); ++i) {
        Gen g = gen_at(A.shape(), i);
        f.images.push_back(A.generator(g).scaled(h.scalar_at(g)));
    }
    return verified(A, std::move(f));
}

// Transposition Y[i,a] -> Y[a,i] on a square shape.
template <class K>
GeneratorMap<K> transpose_automorphism(const Algebra<K>& A) {
    require_square(A.shape());
    GeneratorMap<K> f{A.shape(), MapKind::Homomorphism, {}, false};
    for (int i = 0; i < A.shape().generator_count(); ++i) {
        Gen g = gen_at(A.shape(), i);
        f.images.push_back(A.generator(Gen{g.col, g.row}));
    }
    return verified(A, std::move(f));
}

// Transposition without the verification pass; for evaluator internals.
template <class K>
Element<K> transpose_apply(const Algebra<K>& A, const Element<K>& x) {
    require_square(A.shape());
    require_same(A.shape(), x.shape());
    Element<K> out(A.shape());
    for (const auto& [m, c] : x.terms()) {
        Word w;
        for (int idx = 0; idx < A.shape().generator_count(); ++idx) {
            Gen g = gen_at(A.shape(), idx);
            for (int e = 0; e < m.exponent(idx); ++e) w.push_back(Gen{g.col, g.row});
        }
        out.accumulate_scaled(A.straighten(w), c);
    }
    return out;
}

// The determinant-valued anti-endomorphism as a generator map; on an n x n
// shape it multiplies degrees by n - 1.
template <class K>
GeneratorMap<K> gamma_map(const Algebra<K>& A) {
    require_square(A.shape());
    GeneratorMap<K> f{A.shape(), MapKind::AntiHomomorphism, {}, false};
    for (int i = 0; i < A.shape().generator_count(); ++i)
        f.images.push_back(gamma_generator_image(A, gen_at(A.shape(), i)));
    return f;
}

// f after g (apply g first).  Kinds multiply: two anti maps compose to a
// homomorphism.  The composite is returned unverified.
template <class K>
GeneratorMap<K> compose(const Algebra<K>& A, const GeneratorMap<K>& f,
                        const GeneratorMap<K>& g) {
    require_same(A.shape(), f.shape);
    require_same(A.shape(), g.shape);
    GeneratorMap<K> out{A.shape(),
                        f.kind == g.kind ? MapKind::Homomorphism
                                         : MapKind::AntiHomomorphism,
                        {},
                        false};
    for (const auto& img : g.images) out.images.push_back(apply_map(A, f, img));
    return out;
}

template <class K>
bool maps_equal(const GeneratorMap<K>& f, const GeneratorMap<K>& g) {
    return f.shape == g.shape && f.kind == g.kind && f.images == g.images;
}

// When every generator image is a scalar multiple of the same generator,
// return the scalar matrix; otherwise nothing.
template <class K>
std::optional<std::vector<std::vector<K>>> diagonal_scalars(
    const Algebra<K>& A, const GeneratorMap<K>& f) {
    require_same(A.shape(), f.shape);
    std::vector<std::vector<K>> lambda(
        static_cast<std::size_t>(A.shape().rows),
        std::vector<K>(static_cast<std::size_t>(A.shape().cols), K(0)));
    for (int idx = 0; idx < A.shape().generator_count(); ++idx) {
        Gen g = gen_at(A.shape(), idx);
        const Element<K>& img = f.images[static_cast<std::size_t>(idx)];
        if (img.term_count() != 1) return std::nullopt;
        const auto& [m, c] = img.leading_term();
        if (!(m == Monomial::generator(A.shape(), g))) return std::nullopt;
        lambda[static_cast<std::size_t>(g.row - 1)]
              [static_cast<std::size_t>(g.col - 1)] = c;
    }
    return lambda;
}

// A 2x2 multiplicative condition the scalar matrix failed to satisfy:
// lambda[i][a] * lambda[j][b] != lambda[i][b] * lambda[j][a].
struct RankOneFailure {
    int row1, row2, col1, col2;

    std::string str() const {
        return "rows " + std::to_string(row1) + "," + std::to_string(row2) +
               " cols " + std::to_string(col1) + "," + std::to_string(col2);
    }
};

// Factor a matrix of nonzero scalars into torus parameters.  Succeeds
// exactly when the matrix is multiplicatively rank one; the returned
// parameters have the last column scalar pinned to 1.
template <class K>
std::variant<TorusParam<K>, RankOneFailure> recognize_torus(
    const AlgebraShape& s, const std::vector<std::vector<K>>& lambda) {
    require_valid(s);
    if (lambda.size() != static_cast<std::size_t>(s.rows))
        throw SizeMismatch("scalar matrix has the wrong number of rows");
    for (const auto& row : lambda) {
        if (row.size() != static_cast<std::size_t>(s.cols))
            throw SizeMismatch("scalar matrix has the wrong number of columns");
        for (const K& v : row)
            if (qmat::is_zero(v)) throw Error("scalar matrix entry is zero");
    }
    std::size_t last = static_cast<std::size_t>(s.cols - 1);
    TorusParam<K> h;
    for (int i = 0; i < s.rows; ++i)
        h.row_scalars.push_back(lambda[static_cast<std::size_t>(i)][last]);
    for (int a = 0; a < s.cols; ++a)
        h.col_scalars.push_back(lambda[0][static_cast<std::size_t>(a)] /
                                lambda[0][last]);
    for (int i = 0; i < s.rows; ++i) {
        for (int a = 0; a < s.cols; ++a) {
            K expect = h.row_scalars[static_cast<std::size_t>(i)] *
                       h.col_scalars[static_cast<std::size_t>(a)];
            if (!(expect == lambda[static_cast<std::size_t>(i)]
                                  [static_cast<std::size_t>(a)]))
                return RankOneFailure{1, i + 1, a + 1, s.cols};
        }
    }
    return h;
}

// mu with a = mu * b, when the elements are proportional.
template <class K>
std::optional<K> proportional_scalar(const Element<K>& a, const Element<K>& b) {
    require_same(a.shape(), b.shape());
    if (b.is_zero()) return a.is_zero() ? std::optional<K>(K(0)) : std::nullopt;
    if (a.is_zero()) return K(0);
    if (a.term_count() != b.term_count()) return std::nullopt;
    const auto& [mb, cb] = b.leading_term();
    K mu = a.coeff(mb) / cb;
    if (!(a == b.scaled(mu))) return std::nullopt;
    return mu;
}

}  // namespace qmat
