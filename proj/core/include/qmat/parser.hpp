#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qmat/minors.hpp"
#include "qmat/morphisms.hpp"

namespace qmat {

namespace ast {

enum class Kind {
    Number,
    QVar,
    Generator,
    Minor,
    Det,
    BElem,
    Gamma,
    Tau,
    Torus,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,
};

struct Node;
using Expr = std::shared_ptr<const Node>;

// One tagged node type instead of a variant: only the fields relevant to
// the kind are populated, everything else stays defaulted.
struct Node {
    Kind kind;
    Rational number;                   // Number
    Gen gen{1, 1};                     // Generator
    std::vector<int> rows, cols;       // Minor
    int arg = 0;                       // Det size, BElem index, Pow exponent
    std::vector<Expr> children;        // operands, in source order
    std::vector<Expr> row_scalars;     // Torus
    std::vector<Expr> col_scalars;
};

}  // namespace ast

using ast::Expr;

// expr   := term (('+' | '-') term)*
// term   := factor (('*' | '/') factor)*
// factor := '-' factor | power
// power  := atom ('^' ['-'] INT)?
// atom   := INT | 'q' | 'Y' '[' INT ',' INT ']'
//         | 'minor' '(' '[' INT,.. ']' ',' '[' INT,.. ']' ')'
//         | 'det' '(' INT ')' | 'b' '(' INT ')'
//         | 'gamma' '(' expr ')' | 'tau' '(' expr ')'
//         | 'torus' '(' expr,.. ';' expr,.. ')' '(' expr ')'
//         | '(' expr ')'
// Failures throw ParseError carrying the 1-based character position.
Expr parse_expression(const std::string& text);

// Renders a tree back to source text that reparses to the same tree,
// inserting parentheses only where precedence demands them.
std::string expr_text(const Expr& e);

namespace detail {

template <typename K>
K scalar_operand(const Element<K>& x, const std::string& what) {
    if (!x.is_scalar()) throw EvalError(what + " needs a scalar operand");
    return x.scalar_value();
}

}  // namespace detail

// Evaluates a parsed expression inside the given algebra.  'q' stands for
// the algebra's own deformation scalar, so the same tree evaluates both
// generically and at a specialization.  Division and negative powers are
// only defined for scalar operands; det(k) insists on matching the shape.
template <typename K>
Element<K> evaluate(const Algebra<K>& A, const Expr& e) {
    using ast::Kind;
    if (!e) throw EvalError("cannot evaluate an empty expression");
    switch (e->kind) {
        case Kind::Number:
            return A.scalar(K(e->number));
        case Kind::QVar:
            return A.scalar(A.q());
        case Kind::Generator:
            require_in_shape(A.shape(), e->gen);
            return A.generator(e->gen);
        case Kind::Minor:
            return quantum_minor(A, MinorId{e->rows, e->cols});
        case Kind::Det:
            require_square(A.shape());
            if (e->arg != A.shape().rows)
                throw EvalError("det(" + std::to_string(e->arg) +
                                ") does not match the ambient shape " +
                                A.shape().str());
            return quantum_determinant(A);
        case Kind::BElem:
            return b_element(A, e->arg);
        case Kind::Gamma:
            return gamma(A, evaluate(A, e->children.at(0)));
        case Kind::Tau:
            return transpose_apply(A, evaluate(A, e->children.at(0)));
        case Kind::Torus: {
            TorusParam<K> h;
            for (const auto& s : e->row_scalars)
                h.row_scalars.push_back(
                    detail::scalar_operand(evaluate(A, s), "a torus weight"));
            for (const auto& s : e->col_scalars)
                h.col_scalars.push_back(
                    detail::scalar_operand(evaluate(A, s), "a torus weight"));
            GeneratorMap<K> f = torus_automorphism(A, h);
            return apply_map(A, f, evaluate(A, e->children.at(0)));
        }
        case Kind::Add:
            return evaluate(A, e->children.at(0)) + evaluate(A, e->children.at(1));
        case Kind::Sub:
            return evaluate(A, e->children.at(0)) - evaluate(A, e->children.at(1));
        case Kind::Mul:
            return A.multiply(evaluate(A, e->children.at(0)),
                              evaluate(A, e->children.at(1)));
        case Kind::Div: {
            Element<K> lhs = evaluate(A, e->children.at(0));
            K d = detail::scalar_operand(evaluate(A, e->children.at(1)), "division");
            if (is_zero(d)) throw DivisionByZero("division by zero in an expression");
            K inv = scalar_pow(d, -1);
            return lhs.scaled(inv);
        }
        case Kind::Neg:
            return -evaluate(A, e->children.at(0));
        case Kind::Pow: {
            Element<K> base = evaluate(A, e->children.at(0));
            if (e->arg >= 0) return A.pow(base, static_cast<unsigned int>(e->arg));
            K s = detail::scalar_operand(base, "a negative power");
            if (is_zero(s)) throw DivisionByZero("negative power of zero");
            K p = scalar_pow(s, e->arg);
            return A.scalar(p);
        }
    }
    throw EvalError("unhandled expression node");
}

}  // namespace qmat
