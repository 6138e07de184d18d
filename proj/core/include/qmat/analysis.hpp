#pragma once

#include "qmat/format.hpp"
#include "qmat/linalg.hpp"
#include "qmat/minors.hpp"

namespace qmat {

using QAlgebra = Algebra<RationalFunction>;
using QElement = Element<RationalFunction>;

// Certificate that u q-commutes with every generator: u * Y[i,a] equals
// q^twist * Y[i,a] * u, one exponent per generator in row-major order.
struct TwistCertificate {
    QElement element;
    std::vector<std::pair<Gen, long>> twists;

    long twist(Gen g) const {
        for (const auto& [h, k] : twists)
            if (h == g) return k;
        throw IndexOutOfRange("no twist recorded for " + g.str());
    }
};

// The integer k with u * g = q^k * g * u, when one exists.  u must be
// nonzero.  The candidate k is read off one matching monomial pair and
// then checked against the full products, so a returned value is proven.
inline std::optional<long> q_commutation_twist(const QAlgebra& A, const QElement& u,
                                               Gen g) {
    require_same(A.shape(), u.shape());
    require_in_shape(A.shape(), g);
    if (u.is_zero()) throw Error("the zero element has no commutation twist");
    QElement ge = A.generator(g);
    QElement ug = A.multiply(u, ge);
    QElement gu = A.multiply(ge, u);
    const auto& [m, a] = ug.leading_term();
    RationalFunction b = gu.coeff(m);
    if (b.is_zero()) return std::nullopt;
    RationalFunction ratio = a / b;
    if (!ratio.is_polynomial() || ratio.num().term_count() != 1 ||
        !is_one(ratio.num().leading_coeff()))
        return std::nullopt;
    long k = ratio.num().highest_exponent();
    if (!(ug == gu.scaled(A.q_power(k)))) return std::nullopt;
    return k;
}

struct NormalityReport {
    std::optional<TwistCertificate> certificate;
    std::optional<Gen> failed_at;

    bool ok() const { return certificate.has_value(); }
};

// Decide whether u is normal in the strong sense that it q-commutes with
// every generator, and certify the twists when it is.
inline NormalityReport is_normal_qcentral(const QAlgebra& A, const QElement& u) {
    NormalityReport report;
    TwistCertificate cert{u, {}};
    for (int idx = 0; idx < A.shape().generator_count(); ++idx) {
        Gen g = gen_at(A.shape(), idx);
        std::optional<long> k = q_commutation_twist(A, u, g);
        if (!k.has_value()) {
            report.failed_at = g;
            return report;
        }
        cert.twists.emplace_back(g, *k);
    }
    report.certificate = std::move(cert);
    return report;
}

inline bool is_central(const QAlgebra& A, const QElement& u) {
    require_same(A.shape(), u.shape());
    for (int idx = 0; idx < A.shape().generator_count(); ++idx) {
        QElement g = A.generator(gen_at(A.shape(), idx));
        if (!(A.multiply(u, g) == A.multiply(g, u))) return false;
    }
    return true;
}

// x' with x * u = u * x', computed monomial-by-monomial from the twist
// certificate and re-verified exactly before returning.
inline QElement conjugate_past_normal(const QAlgebra& A, const TwistCertificate& cert,
                                      const QElement& x) {
    require_same(A.shape(), cert.element.shape());
    require_same(A.shape(), x.shape());
    QElement out(A.shape());
    for (const auto& [m, c] : x.terms()) {
        long total = 0;
        for (const auto& [g, k] : cert.twists)
            total += k * m.exponent(A.shape(), g);
        out.accumulate(m, c * A.q_power(-total));
    }
    if (!(A.multiply(x, cert.element) == A.multiply(cert.element, out)))
        throw Error("twist certificate does not match its element");
    return out;
}

// Exact right division by a certified normal element: w with u * w = v,
// or nothing when v lies outside the left ideal generated by u.
inline std::optional<QElement> right_divide_by_normal(const QAlgebra& A,
                                                      const QElement& v,
                                                      const TwistCertificate& cert) {
    const QElement& u = cert.element;
    require_same(A.shape(), u.shape());
    require_same(A.shape(), v.shape());
    if (u.is_zero()) throw Error("division by the zero element");
    if (v.is_zero()) return A.zero();

    int dlo, dhi;
    if (u.is_homogeneous() && v.is_homogeneous()) {
        dlo = dhi = v.degree() - u.degree();
    } else {
        dlo = std::max(0, v.min_degree() - u.degree());
        dhi = v.degree() - u.min_degree();
    }
    if (dhi < 0) return std::nullopt;
    dlo = std::max(dlo, 0);

    std::vector<Monomial> candidates;
    for (int d = dhi; d >= dlo; --d)
        for (const auto& m : monomials_of_degree(A.shape(), d))
            candidates.push_back(m);

    // coefficient of basis monomial mu in u * candidate, as equations
    std::map<Monomial, std::map<int, RationalFunction>, MonomialDescGrlex> eq;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        QElement prod =
            A.multiply(u, QElement::from_monomial(A.shape(), candidates[j], RationalFunction(1)));
        for (const auto& [mu, c] : prod.terms())
            eq[mu][static_cast<int>(j)] += c;
    }
    for (const auto& term : v.terms()) eq[term.first];  // a row per target monomial

    std::vector<SparseRow<RationalFunction>> rows;
    std::vector<RationalFunction> rhs;
    for (const auto& [mu, cols] : eq) {
        SparseRow<RationalFunction> row;
        for (const auto& [j, c] : cols)
            if (!c.is_zero()) row.emplace_back(j, c);
        rows.push_back(std::move(row));
        rhs.push_back(v.coeff(mu));
    }
    auto sol = solve_sparse(rows, static_cast<int>(candidates.size()), rhs);
    if (!sol.has_value()) return std::nullopt;
    QElement w(A.shape());
    for (std::size_t j = 0; j < candidates.size(); ++j)
        w.accumulate(candidates[j], (*sol)[j]);
    if (!(A.multiply(u, w) == v)) throw Error("right division verification failed");
    return w;
}

// Coordinate system of a linear space: a named list of coordinates tied
// to a shape.  Cross-ambient comparisons are rejected.
struct Ambient {
    std::string kind;
    AlgebraShape shape;
    std::vector<std::string> coords;

    bool operator==(const Ambient&) const = default;
};

// Subspace in reduced row-echelon canonical form: equal spans have equal
// bases, so operator== on the basis decides equality of spaces.
struct LinearSpace {
    Ambient ambient;
    std::vector<std::vector<RationalFunction>> basis;

    int dimension() const { return static_cast<int>(basis.size()); }
};

inline LinearSpace space_from_vectors(
    Ambient ambient, std::vector<std::vector<RationalFunction>> vectors) {
    for (const auto& v : vectors)
        if (v.size() != ambient.coords.size())
            throw SizeMismatch("vector length does not match the ambient");
    return LinearSpace{std::move(ambient), rref(std::move(vectors))};
}

enum class SpaceRelation { Equal, FirstInsideSecond, SecondInsideFirst, Incomparable };

struct SpaceComparison {
    SpaceRelation relation;
    // basis vectors of one space that the other fails to contain
    std::vector<std::vector<RationalFunction>> only_in_first;
    std::vector<std::vector<RationalFunction>> only_in_second;
};

inline SpaceComparison compare_spaces(const LinearSpace& a, const LinearSpace& b) {
    if (!(a.ambient == b.ambient))
        throw AmbientMismatch("spaces live over different ambients");
    int ncols = static_cast<int>(a.ambient.coords.size());
    auto sparse = [](const std::vector<RationalFunction>& v) {
        SparseRow<RationalFunction> row;
        for (std::size_t c = 0; c < v.size(); ++c)
            if (!v[c].is_zero()) row.emplace_back(static_cast<int>(c), v[c]);
        return row;
    };
    Echelon<RationalFunction> ea(ncols);
    for (const auto& v : a.basis) ea.add_row(sparse(v));
    Echelon<RationalFunction> eb(ncols);
    for (const auto& v : b.basis) eb.add_row(sparse(v));
    SpaceComparison out;
    for (const auto& v : a.basis)
        if (!eb.in_row_space(sparse(v))) out.only_in_first.push_back(v);
    for (const auto& v : b.basis)
        if (!ea.in_row_space(sparse(v))) out.only_in_second.push_back(v);
    if (out.only_in_first.empty() && out.only_in_second.empty())
        out.relation = SpaceRelation::Equal;
    else if (out.only_in_first.empty())
        out.relation = SpaceRelation::FirstInsideSecond;
    else if (out.only_in_second.empty())
        out.relation = SpaceRelation::SecondInsideFirst;
    else
        out.relation = SpaceRelation::Incomparable;
    return out;
}

enum class SolveMode { Specialized, Exact };

struct SolveOptions {
    SolveMode mode = SolveMode::Specialized;
    std::vector<Rational> probe_values = {Rational(2), Rational(3), Rational(5)};
};

inline KernelOptions to_kernel_options(const SolveOptions& opt) {
    KernelOptions k;
    k.exact_only = opt.mode == SolveMode::Exact;
    k.probe_values = opt.probe_values;
    return k;
}

namespace detail {

inline std::string coord_name(const AlgebraShape& s, const Monomial& m) {
    return m.is_empty() ? "1" : monomial_text(s, m);
}

}  // namespace detail

// Degreewise list of all monomials up to maxdeg, highest degree first;
// the coordinate order of center computations.
inline std::vector<Monomial> graded_monomials(const AlgebraShape& s, int maxdeg) {
    std::vector<Monomial> out;
    for (int d = maxdeg; d >= 0; --d)
        for (const auto& m : monomials_of_degree(s, d)) out.push_back(m);
    return out;
}

inline Ambient center_ambient(const AlgebraShape& s, int maxdeg) {
    Ambient amb;
    amb.kind = "elements of degree <= " + std::to_string(maxdeg);
    amb.shape = s;
    for (const auto& m : graded_monomials(s, maxdeg))
        amb.coords.push_back(detail::coord_name(s, m));
    return amb;
}

struct CenterBasis {
    LinearSpace space;
    std::vector<QElement> elements;
};

// Exact basis of the center truncated to degree maxdeg.  The commutator
// conditions split by degree, so each graded block is solved on its own;
// every reported element is re-checked by direct multiplication.
inline CenterBasis center_basis(const QAlgebra& A, int maxdeg,
                                const SolveOptions& opt = {}) {
    if (maxdeg < 0) throw IndexOutOfRange("negative degree bound");
    const AlgebraShape& s = A.shape();
    std::vector<Monomial> global = graded_monomials(s, maxdeg);
    std::map<Monomial, std::size_t, MonomialDescGrlex> position;
    for (std::size_t i = 0; i < global.size(); ++i) position.emplace(global[i], i);

    std::vector<std::vector<RationalFunction>> vectors;
    for (int d = 0; d <= maxdeg; ++d) {
        std::vector<Monomial> monos = monomials_of_degree(s, d);
        std::map<int, std::map<Monomial, std::map<int, RationalFunction>,
                               MonomialDescGrlex>>
            eq;
        for (std::size_t j = 0; j < monos.size(); ++j) {
            QElement mu = QElement::from_monomial(s, monos[j], RationalFunction(1));
            for (int gi = 0; gi < s.generator_count(); ++gi) {
                QElement comm = A.commutator(mu, A.generator(gen_at(s, gi)));
                for (const auto& [nu, c] : comm.terms())
                    eq[gi][nu][static_cast<int>(j)] += c;
            }
        }
        std::vector<SparseRow<RationalFunction>> rows;
        for (const auto& [gi, by_mono] : eq)
            for (const auto& [nu, cols] : by_mono) {
                SparseRow<RationalFunction> row;
                for (const auto& [j, c] : cols)
                    if (!c.is_zero()) row.emplace_back(j, c);
                if (!row.empty()) rows.push_back(std::move(row));
            }
        QKernel kernel = kernel_over_qfield(rows, static_cast<int>(monos.size()),
                                            to_kernel_options(opt));
        for (const auto& k : kernel.basis) {
            std::vector<RationalFunction> v(global.size(), RationalFunction(0));
            for (std::size_t j = 0; j < monos.size(); ++j)
                v[position.at(monos[j])] = k[j];
            vectors.push_back(std::move(v));
        }
    }
    CenterBasis out;
    out.space = space_from_vectors(center_ambient(s, maxdeg), std::move(vectors));
    for (const auto& v : out.space.basis) {
        QElement x(s);
        for (std::size_t i = 0; i < global.size(); ++i) x.accumulate(global[i], v[i]);
        if (!is_central(A, x))
            throw Error("center candidate failed exact re-verification");
        out.elements.push_back(std::move(x));
    }
    return out;
}

// A degree-raising candidate derivation, stored by its generator images.
struct DerivationCandidate {
    AlgebraShape shape;
    std::vector<QElement> images;  // row-major generator order

    const QElement& image(Gen g) const {
        require_in_shape(shape, g);
        return images[static_cast<std::size_t>(gen_index(shape, g))];
    }
};

// Leibniz extension of the generator images to any element.
inline QElement apply_derivation(const QAlgebra& A, const DerivationCandidate& d,
                                 const QElement& x) {
    require_same(A.shape(), d.shape);
    require_same(A.shape(), x.shape());
    QElement out(A.shape());
    for (const auto& [m, c] : x.terms()) {
        Word w = m.word(A.shape());
        for (std::size_t i = 0; i < w.size(); ++i) {
            Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            Word suffix(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end());
            QElement term = QElement::from_monomial(
                A.shape(), Monomial::from_word(A.shape(), prefix), RationalFunction(1));
            term = A.multiply(term, d.image(w[i]));
            term = A.multiply(term, QElement::from_monomial(
                                        A.shape(), Monomial::from_word(A.shape(), suffix),
                                        RationalFunction(1)));
            out += term.scaled(c);
        }
    }
    return out;
}

// The commutator derivation y -> x*y - y*x.
inline DerivationCandidate inner_derivation(const QAlgebra& A, const QElement& x) {
    require_same(A.shape(), x.shape());
    DerivationCandidate d{A.shape(), {}};
    for (int gi = 0; gi < A.shape().generator_count(); ++gi)
        d.images.push_back(A.commutator(x, A.generator(gen_at(A.shape(), gi))));
    return d;
}

inline Ambient derivation_ambient(const AlgebraShape& s, int shift) {
    if (shift < 0) throw IndexOutOfRange("derivation shift must be >= 0");
    Ambient amb;
    amb.kind = "derivations raising degree by " + std::to_string(shift);
    amb.shape = s;
    for (int gi = 0; gi < s.generator_count(); ++gi)
        for (const auto& m : monomials_of_degree(s, 1 + shift))
            amb.coords.push_back(gen_at(s, gi).str() + " -> " +
                                 detail::coord_name(s, m));
    return amb;
}

struct DerivationSpace {
    LinearSpace space;
    std::vector<DerivationCandidate> basis;
};

namespace detail {

inline std::vector<RationalFunction> derivation_vector(
    const AlgebraShape& s, const std::vector<Monomial>& monos,
    const DerivationCandidate& d) {
    std::map<Monomial, std::size_t, MonomialDescGrlex> position;
    for (std::size_t i = 0; i < monos.size(); ++i) position.emplace(monos[i], i);
    std::vector<RationalFunction> v(
        static_cast<std::size_t>(s.generator_count()) * monos.size(),
        RationalFunction(0));
    for (int gi = 0; gi < s.generator_count(); ++gi) {
        const QElement& img = d.images[static_cast<std::size_t>(gi)];
        for (const auto& [m, c] : img.terms()) {
            auto it = position.find(m);
            if (it == position.end())
                throw SizeMismatch("derivation image has the wrong degree");
            v[static_cast<std::size_t>(gi) * monos.size() + it->second] = c;
        }
    }
    return v;
}

inline DerivationCandidate decode_derivation(const AlgebraShape& s,
                                             const std::vector<Monomial>& monos,
                                             const std::vector<RationalFunction>& v) {
    DerivationCandidate d{s, {}};
    for (int gi = 0; gi < s.generator_count(); ++gi) {
        QElement img(s);
        for (std::size_t j = 0; j < monos.size(); ++j)
            img.accumulate(monos[j],
                           v[static_cast<std::size_t>(gi) * monos.size() + j]);
        d.images.push_back(std::move(img));
    }
    return d;
}

}  // namespace detail

// Canonicalized span of explicit derivation candidates, for comparison
// against a solved space.
inline LinearSpace derivation_span(const QAlgebra& A,
                                   const std::vector<DerivationCandidate>& cands,
                                   int shift) {
    std::vector<Monomial> monos = monomials_of_degree(A.shape(), 1 + shift);
    std::vector<std::vector<RationalFunction>> vectors;
    for (const auto& d : cands) {
        require_same(A.shape(), d.shape);
        vectors.push_back(detail::derivation_vector(A.shape(), monos, d));
    }
    return space_from_vectors(derivation_ambient(A.shape(), shift),
                              std::move(vectors));
}

// All derivations raising degree by the shift, solved from the linearized
// defining relations: applying a derivation to a relation's terms with
// the product rule must give zero.  Every kernel element is re-verified
// exactly through the element-level product rule before being reported.
inline DerivationSpace graded_derivation_space(const QAlgebra& A, int shift,
                                               const SolveOptions& opt = {}) {
    const AlgebraShape& s = A.shape();
    std::vector<Monomial> monos = monomials_of_degree(s, 1 + shift);
    std::size_t per_gen = monos.size();
    int ncols = s.generator_count() * static_cast<int>(per_gen);
    std::map<Monomial, std::size_t, MonomialDescGrlex> position;
    for (std::size_t i = 0; i < per_gen; ++i) position.emplace(monos[i], i);

    std::vector<SparseRow<RationalFunction>> rows;
    for (const auto& r : defining_relations(s)) {
        std::map<Monomial, std::map<int, RationalFunction>, MonomialDescGrlex> eq;
        for (const auto& term : A.relation_terms(r)) {
            int col1 = gen_index(s, term.g1) * static_cast<int>(per_gen);
            int col2 = gen_index(s, term.g2) * static_cast<int>(per_gen);
            for (std::size_t j = 0; j < per_gen; ++j) {
                QElement mu =
                    QElement::from_monomial(s, monos[j], RationalFunction(1));
                // d(g1)*g2 contribution of unknown (g1, mu)
                QElement p1 = A.multiply(mu, A.generator(term.g2));
                for (const auto& [nu, c] : p1.terms())
                    eq[nu][col1 + static_cast<int>(j)] += c * term.coeff;
                // g1*d(g2) contribution of unknown (g2, mu)
                QElement p2 = A.multiply(A.generator(term.g1), mu);
                for (const auto& [nu, c] : p2.terms())
                    eq[nu][col2 + static_cast<int>(j)] += c * term.coeff;
            }
        }
        for (const auto& [nu, cols] : eq) {
            SparseRow<RationalFunction> row;
            for (const auto& [col, c] : cols)
                if (!c.is_zero()) row.emplace_back(col, c);
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }
    QKernel kernel = kernel_over_qfield(rows, ncols, to_kernel_options(opt));

    DerivationSpace out;
    out.space = space_from_vectors(derivation_ambient(s, shift),
                                   std::move(kernel.basis));
    for (const auto& v : out.space.basis) {
        DerivationCandidate d = detail::decode_derivation(s, monos, v);
        for (const auto& r : defining_relations(s)) {
            QElement residual(s);
            for (const auto& term : A.relation_terms(r)) {
                QElement x = A.generator(term.g1);
                QElement y = A.generator(term.g2);
                QElement leibniz = A.multiply(d.image(term.g1), y) +
                                   A.multiply(x, d.image(term.g2));
                residual += leibniz.scaled(term.coeff);
            }
            if (!residual.is_zero())
                throw Error("derivation candidate failed exact re-verification");
        }
        out.basis.push_back(std::move(d));
    }
    return out;
}

}  // namespace qmat
