#include "qmat/parser.hpp"

#include <cctype>
#include <climits>

namespace qmat {

namespace {

enum class Tok {
    Int,
    Ident,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Semi,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;  // 1-based position of the first character
};

std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        unsigned char c = static_cast<unsigned char>(src[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t pos = i + 1;
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            out.push_back({Tok::Int, src.substr(i, j - i), pos});
            i = j;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), pos});
            i = j;
            continue;
        }
        Tok kind;
        switch (src[i]) {
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case ',': kind = Tok::Comma; break;
            case ';': kind = Tok::Semi; break;
            case '+': kind = Tok::Plus; break;
            case '-': kind = Tok::Minus; break;
            case '*': kind = Tok::Star; break;
            case '/': kind = Tok::Slash; break;
            case '^': kind = Tok::Caret; break;
            default: throw ParseError(pos, "a recognized token");
        }
        out.push_back({kind, src.substr(i, 1), pos});
        ++i;
    }
    out.push_back({Tok::End, "", src.size() + 1});
    return out;
}

using ast::Expr;
using ast::Kind;
using ast::Node;

std::shared_ptr<Node> make(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return n;
}

Expr binary(Kind k, Expr lhs, Expr rhs) {
    auto n = make(k);
    n->children = {std::move(lhs), std::move(rhs)};
    return n;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t at = 0;

    const Token& peek() const { return toks[at]; }

    Token eat() {
        Token t = toks[at];
        if (t.kind != Tok::End) ++at;
        return t;
    }

    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) throw ParseError(peek().pos, what);
        return eat();
    }

    int expect_int(const std::string& what) {
        Token t = expect(Tok::Int, what);
        try {
            long long v = std::stoll(t.text);
            if (v > INT_MAX) throw std::out_of_range(t.text);
            return static_cast<int>(v);
        } catch (const std::out_of_range&) {
            throw ParseError(t.pos, "a smaller integer");
        }
    }

    std::vector<int> bracketed_list() {
        expect(Tok::LBracket, "'['");
        std::vector<int> out;
        out.push_back(expect_int("an integer"));
        while (peek().kind == Tok::Comma) {
            eat();
            out.push_back(expect_int("an integer"));
        }
        expect(Tok::RBracket, "']'");
        return out;
    }

    std::vector<Expr> expr_list() {
        std::vector<Expr> out;
        out.push_back(expr());
        while (peek().kind == Tok::Comma) {
            eat();
            out.push_back(expr());
        }
        return out;
    }

    Expr atom() {
        const Token& t = peek();
        if (t.kind == Tok::Int) {
            Token num = eat();
            auto n = make(Kind::Number);
            n->number = Rational(mpz_class(num.text));
            return n;
        }
        if (t.kind == Tok::LParen) {
            eat();
            Expr inner = expr();
            expect(Tok::RParen, "')'");
            return inner;
        }
        if (t.kind == Tok::Ident) {
            Token name = eat();
            if (name.text == "q") return make(Kind::QVar);
            if (name.text == "Y") {
                expect(Tok::LBracket, "'['");
                int row = expect_int("an integer");
                expect(Tok::Comma, "','");
                int col = expect_int("an integer");
                expect(Tok::RBracket, "']'");
                auto n = make(Kind::Generator);
                n->gen = Gen{row, col};
                return n;
            }
            if (name.text == "minor") {
                expect(Tok::LParen, "'('");
                auto n = make(Kind::Minor);
                n->rows = bracketed_list();
                expect(Tok::Comma, "','");
                n->cols = bracketed_list();
                expect(Tok::RParen, "')'");
                return n;
            }
            if (name.text == "det" || name.text == "b") {
                expect(Tok::LParen, "'('");
                auto n = make(name.text == "det" ? Kind::Det : Kind::BElem);
                n->arg = expect_int("an integer");
                expect(Tok::RParen, "')'");
                return n;
            }
            if (name.text == "gamma" || name.text == "tau") {
                expect(Tok::LParen, "'('");
                auto n = make(name.text == "gamma" ? Kind::Gamma : Kind::Tau);
                n->children.push_back(expr());
                expect(Tok::RParen, "')'");
                return n;
            }
            if (name.text == "torus") {
                expect(Tok::LParen, "'('");
                auto n = make(Kind::Torus);
                n->row_scalars = expr_list();
                expect(Tok::Semi, "';'");
                n->col_scalars = expr_list();
                expect(Tok::RParen, "')'");
                expect(Tok::LParen, "'('");
                n->children.push_back(expr());
                expect(Tok::RParen, "')'");
                return n;
            }
            throw ParseError(name.pos,
                             "a known name (q, Y, minor, det, b, gamma, tau, torus)");
        }
        throw ParseError(t.pos, "an expression");
    }

    Expr power() {
        Expr base = atom();
        if (peek().kind != Tok::Caret) return base;
        eat();
        int sign = 1;
        if (peek().kind == Tok::Minus) {
            eat();
            sign = -1;
        }
        int k = expect_int("an integer");
        auto n = make(Kind::Pow);
        n->arg = sign * k;
        n->children.push_back(std::move(base));
        return n;
    }

    Expr factor() {
        if (peek().kind == Tok::Minus) {
            eat();
            auto n = make(Kind::Neg);
            n->children.push_back(factor());
            return n;
        }
        return power();
    }

    Expr term() {
        Expr lhs = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            Tok op = eat().kind;
            lhs = binary(op == Tok::Star ? Kind::Mul : Kind::Div, std::move(lhs),
                         factor());
        }
        return lhs;
    }

    Expr expr() {
        Expr lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            Tok op = eat().kind;
            lhs = binary(op == Tok::Plus ? Kind::Add : Kind::Sub, std::move(lhs),
                         term());
        }
        return lhs;
    }
};

int precedence(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub:
            return 1;
        case Kind::Mul:
        case Kind::Div:
        case Kind::Neg:
            return 2;
        case Kind::Pow:
            return 3;
        default:
            return 4;
    }
}

std::string int_list(const std::vector<int>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(xs[i]);
    }
    return out + "]";
}

std::string text_of(const Expr& e);

std::string wrapped(const Expr& e, int min_prec) {
    std::string s = text_of(e);
    if (precedence(e->kind) < min_prec) return "(" + s + ")";
    return s;
}

std::string joined_list(const std::vector<Expr>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += text_of(xs[i]);
    }
    return out;
}

std::string text_of(const Expr& e) {
    switch (e->kind) {
        case Kind::Number: {
            std::string s = e->number.get_str();
            return e->number < 0 ? "(" + s + ")" : s;
        }
        case Kind::QVar:
            return "q";
        case Kind::Generator:
            return e->gen.str();
        case Kind::Minor:
            return "minor(" + int_list(e->rows) + "," + int_list(e->cols) + ")";
        case Kind::Det:
            return "det(" + std::to_string(e->arg) + ")";
        case Kind::BElem:
            return "b(" + std::to_string(e->arg) + ")";
        case Kind::Gamma:
            return "gamma(" + text_of(e->children.at(0)) + ")";
        case Kind::Tau:
            return "tau(" + text_of(e->children.at(0)) + ")";
        case Kind::Torus:
            return "torus(" + joined_list(e->row_scalars) + ";" +
                   joined_list(e->col_scalars) + ")(" +
                   text_of(e->children.at(0)) + ")";
        case Kind::Add:
            return wrapped(e->children.at(0), 1) + " + " +
                   wrapped(e->children.at(1), 2);
        case Kind::Sub:
            return wrapped(e->children.at(0), 1) + " - " +
                   wrapped(e->children.at(1), 2);
        case Kind::Mul:
            return wrapped(e->children.at(0), 2) + "*" + wrapped(e->children.at(1), 3);
        case Kind::Div:
            return wrapped(e->children.at(0), 2) + "/" + wrapped(e->children.at(1), 3);
        case Kind::Neg:
            return "-" + wrapped(e->children.at(0), 3);
        case Kind::Pow:
            return wrapped(e->children.at(0), 4) + "^" + std::to_string(e->arg);
    }
    throw EvalError("unhandled expression node");
}

}  // namespace

Expr parse_expression(const std::string& text) {
    Parser parser{tokenize(text)};
    Expr e = parser.expr();
    if (parser.peek().kind != Tok::End)
        throw ParseError(parser.peek().pos, "end of input");
    return e;
}

std::string expr_text(const Expr& e) {
    if (!e) throw EvalError("cannot print an empty expression");
    return text_of(e);
}

}  // namespace qmat
