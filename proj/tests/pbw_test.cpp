#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "qmat/algebra.hpp"
#include "qmat/format.hpp"
#include "support/testrand.hpp"

using namespace qmat;
using testsupport::Rng;

namespace {

using RF = RationalFunction;

Algebra<RF> make_algebra(int m, int n) {
    return Algebra<RF>(AlgebraShape(m, n), RF::q_power(1));
}

// Monomial literal bypassing the straightening engine: the word must
// already be ordered.
Element<RF> literal(const AlgebraShape& s, const Word& w, const RF& c) {
    return Element<RF>::from_monomial(s, Monomial::from_word(s, w), c);
}

}  // namespace

TEST_CASE("straightening matches the defining relations on frozen pairs") {
    auto A = make_algebra(2, 2);
    const AlgebraShape s = A.shape();
    RF q = A.q();
    RF qinv = A.q_power(-1);

    // same row: Y[1,2]*Y[1,1] = q^-1 * Y[1,1]*Y[1,2]
    CHECK(A.straighten({{1, 2}, {1, 1}}) ==
          literal(s, {{1, 1}, {1, 2}}, qinv));
    // same column: Y[2,1]*Y[1,1] = q^-1 * Y[1,1]*Y[2,1]
    CHECK(A.straighten({{2, 1}, {1, 1}}) ==
          literal(s, {{1, 1}, {2, 1}}, qinv));
    // antidiagonal pair commutes: Y[2,1]*Y[1,2] = Y[1,2]*Y[2,1]
    CHECK(A.straighten({{2, 1}, {1, 2}}) == literal(s, {{1, 2}, {2, 1}}, RF(1)));
    // diagonal pair: Y[2,2]*Y[1,1] = Y[1,1]*Y[2,2] - (q - q^-1) Y[1,2]*Y[2,1]
    Element<RF> expected = literal(s, {{1, 1}, {2, 2}}, RF(1)) +
                           literal(s, {{1, 2}, {2, 1}}, RF(0) - (q - qinv));
    CHECK(A.straighten({{2, 2}, {1, 1}}) == expected);
    // and the reverse product needs the +(q - q^-1) correction
    Element<RF> expected2 = literal(s, {{1, 1}, {2, 2}}, RF(1)) +
                            literal(s, {{1, 2}, {2, 1}}, q - qinv);
    CHECK(A.multiply(A.generator(1, 1), A.generator(2, 2)) ==
          literal(s, {{1, 1}, {2, 2}}, RF(1)));
    CHECK(A.straighten({{2, 2}, {1, 1}}) + literal(s, {{1, 2}, {2, 1}}, RF(2) * (q - qinv)) ==
          expected2);
}

TEST_CASE("printed normal form matches the canonical text") {
    auto A = make_algebra(3, 3);
    Element<RF> nf = A.straighten({{2, 2}, {1, 1}});
    CHECK(to_text(nf) == "Y[1,1]*Y[2,2] - (q - q^-1)*Y[1,2]*Y[2,1]");
    CHECK(to_text(A.one()) == "1");
    CHECK(to_text(A.zero()) == "0");
    CHECK(to_text(A.generator(2, 3)) == "Y[2,3]");
    CHECK(to_text(A.scalar(A.q_power(-2))) == "q^-2");
    CHECK(to_text(-A.generator(1, 2)) == "-Y[1,2]");
}

TEST_CASE("all defining relations normalize to zero across shapes") {
    for (auto [m, n] : {std::pair{2, 2}, {3, 3}, {3, 4}, {4, 4}}) {
        auto A = make_algebra(m, n);
        auto relations = defining_relations(A.shape());
        int g = m * n;
        CHECK(relations.size() == static_cast<std::size_t>(g * (g - 1) / 2));
        for (const auto& r : relations) {
            Element<RF> residual = A.relation_residual(r);
            INFO(r.str());
            CHECK(residual.is_zero());
        }
    }
}

TEST_CASE("relation right-hand sides match literal expansions") {
    auto A = make_algebra(3, 4);
    const AlgebraShape s = A.shape();
    RF q = A.q();
    RF qinv = A.q_power(-1);
    for (const auto& r : defining_relations(s)) {
        Element<RF> nf = A.straighten({r.b, r.a});
        Element<RF> expect(s);
        switch (r.kind) {
            case RelationKind::RowSwap:
            case RelationKind::ColSwap:
                expect = literal(s, {r.a, r.b}, qinv);
                break;
            case RelationKind::Distant:
                expect = literal(s, {r.a, r.b}, RF(1));
                break;
            case RelationKind::Cross:
                expect = literal(s, {r.a, r.b}, RF(1)) +
                         literal(s, {Gen{r.a.row, r.b.col}, Gen{r.b.row, r.a.col}},
                                 RF(0) - (q - qinv));
                break;
        }
        INFO(r.str());
        CHECK(nf == expect);
    }
}

TEST_CASE("every straightening strategy reaches the same normal form") {
    auto A = make_algebra(3, 3);
    Rng rng(8101);
    for (int trial = 0; trial < 60; ++trial) {
        Word w = rng.word(A.shape(), rng.uniform(2, 6));
        Element<RF> left = A.straighten(w, StraightenStrategy::Leftmost);
        CHECK(left == A.straighten(w, StraightenStrategy::Rightmost));
        CHECK(left == A.straighten(w, StraightenStrategy::Random, 1));
        CHECK(left == A.straighten(w, StraightenStrategy::Random, 99));
    }
}

TEST_CASE("already ordered words pass through unchanged") {
    auto A = make_algebra(3, 3);
    Rng rng(8102);
    for (int trial = 0; trial < 40; ++trial) {
        Monomial m = rng.monomial(A.shape(), rng.uniform(0, 5));
        Word w = m.word(A.shape());
        Element<RF> nf = A.straighten(w);
        CHECK(nf == Element<RF>::from_monomial(A.shape(), m, RF(1)));
    }
}

TEST_CASE("multiplication is associative on random elements") {
    auto A = make_algebra(3, 3);
    Rng rng(8103);
    for (int trial = 0; trial < 40; ++trial) {
        Element<RF> a = rng.element(A.shape(), 2, 2);
        Element<RF> b = rng.element(A.shape(), 2, 2);
        Element<RF> c = rng.element(A.shape(), 2, 2);
        CHECK(A.multiply(A.multiply(a, b), c) == A.multiply(a, A.multiply(b, c)));
    }
}

TEST_CASE("multiplication distributes and respects scalars") {
    auto A = make_algebra(2, 3);
    Rng rng(8104);
    for (int trial = 0; trial < 40; ++trial) {
        Element<RF> a = rng.element(A.shape(), 2, 3);
        Element<RF> b = rng.element(A.shape(), 2, 3);
        Element<RF> c = rng.element(A.shape(), 2, 3);
        CHECK(A.multiply(a, b + c) == A.multiply(a, b) + A.multiply(a, c));
        CHECK(A.multiply(a + b, c) == A.multiply(a, c) + A.multiply(b, c));
        RF mu = RF(rng.laurent(2) + LaurentPoly(1));
        CHECK(A.multiply(a.scaled(mu), b) == A.multiply(a, b).scaled(mu));
        CHECK(A.multiply(A.one(), a) == a);
        CHECK(A.multiply(a, A.one()) == a);
    }
}

TEST_CASE("degrees add and products of nonzero elements are nonzero") {
    auto A = make_algebra(3, 3);
    Rng rng(8105);
    for (int trial = 0; trial < 50; ++trial) {
        Element<RF> a = rng.element(A.shape(), 2, 2);
        Element<RF> b = rng.element(A.shape(), 2, 2);
        Element<RF> p = A.multiply(a, b);
        CHECK(!p.is_zero());
        CHECK(p.degree() == a.degree() + b.degree());
        CHECK(p.min_degree() == a.min_degree() + b.min_degree());
    }
}

TEST_CASE("homogeneous components partition an element") {
    auto A = make_algebra(3, 3);
    Rng rng(8106);
    for (int trial = 0; trial < 30; ++trial) {
        Element<RF> a = rng.element(A.shape(), 3, 5);
        Element<RF> sum(A.shape());
        for (int d = 0; d <= a.degree(); ++d) {
            Element<RF> comp = a.homogeneous_component(d);
            CHECK(comp.is_homogeneous());
            sum += comp;
        }
        CHECK(sum == a);
    }
}

TEST_CASE("specialization commutes with multiplication") {
    auto A = make_algebra(3, 3);
    Rng rng(8107);
    for (Rational v : {Rational(2), Rational(3), Rational(-1), Rational(1, 2)}) {
        Algebra<Rational> Av(A.shape(), v);
        for (int trial = 0; trial < 15; ++trial) {
            Element<RF> a = rng.element(A.shape(), 2, 2);
            Element<RF> b = rng.element(A.shape(), 2, 2);
            CHECK(specialize(A.multiply(a, b), v) ==
                  Av.multiply(specialize(a, v), specialize(b, v)));
        }
    }
}

TEST_CASE("specialized straightening at q = 1 is commutative") {
    Algebra<Rational> A(square_shape(3), Rational(1));
    Rng rng(8108);
    for (int trial = 0; trial < 30; ++trial) {
        Word w = rng.word(A.shape(), 4);
        Word rev(w.rbegin(), w.rend());
        CHECK(A.straighten(w) == A.straighten(rev));
    }
}

TEST_CASE("monomial bases have the right sizes and order") {
    AlgebraShape s = square_shape(3);
    CHECK(monomial_count(s, 0) == 1);
    CHECK(monomial_count(s, 1) == 9);
    CHECK(monomial_count(s, 2) == 45);
    CHECK(monomial_count(s, 3) == 165);
    CHECK(monomial_count(AlgebraShape(2, 3), 2) == 21);
    for (int d = 0; d <= 3; ++d) {
        auto basis = monomials_of_degree(s, d);
        CHECK(basis.size() == monomial_count(s, d));
        for (std::size_t i = 0; i + 1 < basis.size(); ++i)
            CHECK(Monomial::grlex(basis[i], basis[i + 1]) ==
                  std::strong_ordering::greater);
        if (d > 0) {
            // the largest monomial is Y[1,1]^d
            Word w(static_cast<std::size_t>(d), Gen{1, 1});
            CHECK(basis.front() == Monomial::from_word(s, w));
        }
    }
}

TEST_CASE("graded-lex order ranks frozen examples correctly") {
    AlgebraShape s = square_shape(2);
    auto m = [&](const Word& w) { return Monomial::from_word(s, w); };
    CHECK(Monomial::grlex(m({{1, 1}}), m({})) == std::strong_ordering::greater);
    CHECK(Monomial::grlex(m({{1, 1}}), m({{2, 2}})) == std::strong_ordering::greater);
    CHECK(Monomial::grlex(m({{1, 1}, {1, 1}}), m({{1, 1}, {1, 2}})) ==
          std::strong_ordering::greater);
    CHECK(Monomial::grlex(m({{1, 2}, {2, 1}}), m({{2, 1}, {1, 2}})) ==
          std::strong_ordering::equal);
    CHECK(Monomial::grlex(m({{2, 2}}), m({{1, 1}, {2, 2}})) ==
          std::strong_ordering::less);
}

TEST_CASE("shape and index errors are reported") {
    auto A = make_algebra(2, 2);
    CHECK_THROWS_AS(A.straighten({{3, 1}}), IndexOutOfRange);
    CHECK_THROWS_AS(A.generator(0, 1), IndexOutOfRange);
    auto B = make_algebra(2, 3);
    CHECK_THROWS_AS(A.multiply(A.one(), B.one()), ShapeMismatch);
    CHECK_THROWS_AS(Element<RF>::one(A.shape()) + Element<RF>::one(B.shape()),
                    ShapeMismatch);
    CHECK_THROWS_AS(Algebra<Rational>(square_shape(2), Rational(0)),
                    ZeroSpecialization);
    CHECK_THROWS_AS(Element<RF>(AlgebraShape(0, 2)), IndexOutOfRange);
}

TEST_CASE("a perturbed relation table leaves nonzero residuals") {
    RF q = RF::q_power(1);
    auto table = RelationTable<RF>::standard(q);
    table.cross_extra = RF(0);  // drop the correction term of the cross relation
    Algebra<RF> broken(square_shape(2), q, table);
    bool saw_nonzero = false;
    for (const auto& r : defining_relations(broken.shape()))
        if (!broken.relation_residual(r).is_zero()) saw_nonzero = true;
    CHECK(saw_nonzero);
}

TEST_CASE("one algebra instance serves concurrent straightening calls") {
    auto A = make_algebra(3, 3);
    Rng rng(8109);
    std::vector<Word> words;
    for (int i = 0; i < 24; ++i) words.push_back(rng.word(A.shape(), 5));
    std::vector<Element<RF>> expected;
    for (const auto& w : words) expected.push_back(A.straighten(w));
    std::vector<std::thread> pool;
    std::vector<int> mismatches(4, 0);
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = 0; i < words.size(); ++i)
                if (!(A.straighten(words[i]) == expected[i])) ++mismatches[t];
        });
    }
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t) CHECK(mismatches[t] == 0);
}
