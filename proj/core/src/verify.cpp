#include "qmat/verify.hpp"

#include <fstream>

#include <json.hpp>

namespace qmat {

namespace {

IdentityRecord rec(std::string name, int n, std::string lhs, std::string rhs,
                   std::string note) {
    return IdentityRecord{std::move(name), n,        n,
                          std::move(lhs),  std::move(rhs), std::move(note)};
}

// ---- transpose closure ----------------------------------------------------

using ast::Expr;
using ast::Kind;
using ast::Node;

// Returns the transposed tree, or nothing when a node has no structural
// transpose (gamma, tau, torus).
std::optional<Expr> transpose_expr(const Expr& e, int n) {
    switch (e->kind) {
        case Kind::Number:
        case Kind::QVar:
        case Kind::Det:
            return e;
        case Kind::Generator: {
            auto out = std::make_shared<Node>(*e);
            out->gen = Gen{e->gen.col, e->gen.row};
            return out;
        }
        case Kind::Minor: {
            auto out = std::make_shared<Node>(*e);
            out->rows = e->cols;
            out->cols = e->rows;
            return out;
        }
        case Kind::BElem: {
            if (e->arg == 2 * n) return e;  // the trivial chain entry is fixed
            auto out = std::make_shared<Node>(*e);
            out->arg = 2 * n - e->arg;
            return out;
        }
        case Kind::Gamma:
        case Kind::Tau:
        case Kind::Torus:
            return std::nullopt;
        default: {
            auto out = std::make_shared<Node>(*e);
            for (auto& child : out->children) {
                auto t = transpose_expr(child, n);
                if (!t.has_value()) return std::nullopt;
                child = *t;
            }
            return out;
        }
    }
}

// ---- replay internals -----------------------------------------------------

// Recognizes value == q^k for the generic coefficient field.
std::optional<long> power_exponent(const Algebra<RationalFunction>&,
                                   const RationalFunction& value) {
    if (!value.is_polynomial()) return std::nullopt;
    const LaurentPoly& num = value.num();
    if (num.term_count() != 1 || !is_one(num.leading_coeff())) return std::nullopt;
    return num.highest_exponent();
}

// Recognizes value == v^k at a numeric specialization by bounded search.
std::optional<long> power_exponent(const Algebra<Rational>& A,
                                   const Rational& value) {
    const Rational& v = A.q();
    if (is_zero(value)) return std::nullopt;
    Rational cur(1);
    for (long k = 0; k <= 400; ++k) {
        if (cur == value) return k;
        cur = cur * v;
    }
    cur = 1;
    for (long k = -1; k >= -400; --k) {
        cur = cur / v;
        if (cur == value) return k;
    }
    return std::nullopt;
}

template <typename K>
bool q_commutes_with_all(const Algebra<K>& A, const Element<K>& u,
                         std::string& detail) {
    for (int idx = 0; idx < A.shape().generator_count(); ++idx) {
        Gen g = gen_at(A.shape(), idx);
        Element<K> ge = A.generator(g);
        Element<K> ug = A.multiply(u, ge);
        Element<K> gu = A.multiply(ge, u);
        if (ug.is_zero() && gu.is_zero()) continue;
        if (ug.is_zero() || gu.is_zero()) {
            detail = "one-sided vanishing against " + g.str();
            return false;
        }
        const auto& [m, a] = ug.leading_term();
        K b = gu.coeff(m);
        if (is_zero(b)) {
            detail = "support mismatch against " + g.str();
            return false;
        }
        K ratio = a / b;
        std::optional<long> k = power_exponent(A, ratio);
        if (!k.has_value()) {
            detail = "coefficient ratio against " + g.str() + " is not a power of q";
            return false;
        }
        K scale = A.q_power(*k);
        if (!(ug == gu.scaled(scale))) {
            detail = "commutation with " + g.str() + " fails beyond the leading term";
            return false;
        }
        if (!detail.empty()) detail += " ";
        detail += g.str() + ":" + std::to_string(*k);
    }
    return true;
}

template <typename K>
void replay_into(ReplayReport& out, const Algebra<K>& A) {
    for (int i = 1; i <= 6; ++i) {
        ReplayStep step;
        step.name = "normal-b" + std::to_string(i);
        step.ok = q_commutes_with_all(A, b_element(A, i), step.detail);
        out.steps.push_back(std::move(step));
    }
    {
        ReplayStep step;
        step.name = "central-det";
        step.ok = true;
        Element<K> det = quantum_determinant(A);
        for (int idx = 0; idx < A.shape().generator_count(); ++idx) {
            Element<K> g = A.generator(gen_at(A.shape(), idx));
            if (!(A.multiply(det, g) == A.multiply(g, det))) {
                step.ok = false;
                step.detail = "fails against " + gen_at(A.shape(), idx).str();
                break;
            }
        }
        out.steps.push_back(std::move(step));
    }
    const std::pair<const char*, const char*> anchors[] = {
        {"b(1)", "Y[1,3]"},          {"b(2)", "minor([1,2],[2,3])"},
        {"b(3)", "det(3)"},          {"b(4)", "minor([2,3],[1,2])"},
        {"b(5)", "Y[3,1]"},          {"b(6)", "1"},
    };
    for (int i = 0; i < 6; ++i) {
        ReplayStep step;
        step.name = "anchor-b" + std::to_string(i + 1);
        step.detail = std::string(anchors[i].first) + " = " + anchors[i].second;
        step.ok = evaluate(A, parse_expression(anchors[i].first)) ==
                  evaluate(A, parse_expression(anchors[i].second));
        out.steps.push_back(std::move(step));
    }
    for (const auto& r : builtin_identities()) {
        if (r.rows != 3 || r.cols != 3) continue;
        ReplayStep step;
        step.name = r.name;
        step.detail = r.note;
        step.ok = evaluate(A, parse_expression(r.lhs)) ==
                  evaluate(A, parse_expression(r.rhs));
        out.steps.push_back(std::move(step));
    }
}

}  // namespace

std::vector<IdentityRecord> builtin_identities() {
    std::vector<IdentityRecord> out;
    out.push_back(rec("det2-expansion", 2, "det(2)",
                      "Y[1,1]*Y[2,2] - q*Y[1,2]*Y[2,1]",
                      "the 2x2 determinant written out in generators"));
    out.push_back(rec("det2-central-y11", 2, "det(2)*Y[1,1]", "Y[1,1]*det(2)",
                      "the determinant passes Y[1,1]"));
    out.push_back(rec("det2-central-y12", 2, "det(2)*Y[1,2]", "Y[1,2]*det(2)",
                      "the determinant passes Y[1,2]"));
    out.push_back(rec("det2-central-y21", 2, "det(2)*Y[2,1]", "Y[2,1]*det(2)",
                      "the determinant passes Y[2,1]"));
    out.push_back(rec("det2-central-y22", 2, "det(2)*Y[2,2]", "Y[2,2]*det(2)",
                      "the determinant passes Y[2,2]"));

    out.push_back(rec("b2-expansion", 3, "minor([1,2],[2,3])",
                      "Y[1,2]*Y[2,3] - q*Y[1,3]*Y[2,2]",
                      "second chain entry written out in generators"));
    out.push_back(rec("b4-expansion", 3, "minor([2,3],[1,2])",
                      "Y[2,1]*Y[3,2] - q*Y[2,2]*Y[3,1]",
                      "fourth chain entry written out in generators"));
    out.push_back(rec("y22-pin", 3, "minor([1,2],[2,3])",
                      "Y[1,2]*Y[2,3] - q*Y[2,2]*Y[1,3]",
                      "second chain entry with the distant pair swapped"));
    out.push_back(rec("minor-1313-expansion", 3, "minor([1,3],[1,3])",
                      "Y[1,1]*Y[3,3] - q*Y[1,3]*Y[3,1]",
                      "the corner 2x2 minor written out in generators"));
    out.push_back(rec("minor-1312-expansion", 3, "minor([1,3],[1,2])",
                      "Y[1,1]*Y[3,2] - q*Y[1,2]*Y[3,1]",
                      "an off-diagonal 2x2 minor written out in generators"));
    out.push_back(rec("gamma-1313", 3, "gamma(minor([1,3],[1,3]))",
                      "Y[2,2]*det(3)",
                      "gamma sends the corner minor to Y[2,2] times the determinant"));
    out.push_back(rec("gamma-b4", 3, "gamma(minor([2,3],[1,2]))",
                      "q^2*Y[3,1]*det(3)",
                      "gamma sends the fourth chain entry to a scaled corner column"));
    out.push_back(rec(
        "laplace-row1", 3, "det(3)",
        "Y[1,1]*minor([2,3],[2,3]) - q*Y[1,2]*minor([2,3],[1,3]) + "
        "q^2*Y[1,3]*minor([2,3],[1,2])",
        "first-row expansion of the determinant"));
    out.push_back(rec(
        "y22-delta-product", 3, "Y[2,2]*det(3)",
        "minor([1,2],[1,2])*minor([2,3],[2,3]) - "
        "q*minor([2,3],[1,2])*minor([1,2],[2,3])",
        "the middle generator times the determinant as a 2x2 minor product"));
    out.push_back(rec(
        "y22-delta-product-twin", 3, "Y[2,2]*det(3)",
        "minor([1,2],[1,2])*minor([2,3],[2,3]) - "
        "q*minor([1,2],[2,3])*minor([2,3],[1,2])",
        "same product identity with the commuting chain entries swapped"));
    out.push_back(rec(
        "minor-exchange-1213", 3, "minor([1,2],[1,3])*minor([1,3],[2,3])",
        "Y[1,3]*det(3) + q*minor([1,3],[1,3])*minor([1,2],[2,3])",
        "exchange rule for a pair of overlapping 2x2 minors"));
    out.push_back(rec(
        "minor-exchange-1312", 3, "minor([1,3],[1,2])*minor([2,3],[1,3])",
        "Y[3,1]*det(3) + q*minor([2,3],[1,2])*minor([1,3],[1,3])",
        "row-column mirror of the minor exchange rule"));
    out.push_back(rec(
        "laplace-exchange-y21", 3, "minor([1,3],[1,3])*Y[2,1]",
        "q*minor([2,3],[1,3])*Y[1,1] + q^-1*minor([1,2],[1,3])*Y[3,1]",
        "the corner minor slides past Y[2,1] through two column minors"));
    out.push_back(rec(
        "laplace-exchange-y12", 3, "minor([1,3],[1,3])*Y[1,2]",
        "q*minor([1,3],[2,3])*Y[1,1] + q^-1*minor([1,3],[1,2])*Y[1,3]",
        "the corner minor slides past Y[1,2] through two row minors"));
    out.push_back(rec(
        "y32-delta-product", 3, "Y[3,2]*det(3)",
        "minor([1,3],[1,2])*minor([2,3],[2,3]) - "
        "q*minor([2,3],[1,2])*minor([1,3],[2,3])",
        "a lower generator times the determinant as a 2x2 minor product"));
    out.push_back(rec(
        "y32-rearranged", 3, "(det(3) - Y[1,1]*minor([2,3],[2,3]))*Y[3,2]",
        "-q*(Y[1,2]*Y[3,1]*minor([2,3],[2,3]) + "
        "minor([2,3],[1,2])*minor([1,3],[2,3]))",
        "the previous product with the leading Laplace term removed"));
    out.push_back(rec("commutator-y11-y23", 3, "Y[1,1]*Y[2,3] - Y[2,3]*Y[1,1]",
                      "(q - q^-1)*Y[1,3]*Y[2,1]",
                      "crossing commutator surfacing the first chain entry"));
    out.push_back(rec("commutator-y11-y33", 3, "Y[1,1]*Y[3,3] - Y[3,3]*Y[1,1]",
                      "(q - q^-1)*Y[1,3]*Y[3,1]",
                      "crossing commutator surfacing both extreme chain entries"));
    return out;
}

std::vector<IdentityRecord> load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw Error("cannot open manifest: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("manifest " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("version", 0) != 1)
        throw Error("manifest " + path + " has an unsupported layout");
    std::vector<IdentityRecord> out;
    try {
        for (const auto& jr : doc.at("records")) {
            IdentityRecord r;
            r.name = jr.at("name").get<std::string>();
            r.rows = jr.at("rows").get<int>();
            r.cols = jr.at("cols").get<int>();
            r.lhs = jr.at("lhs").get<std::string>();
            r.rhs = jr.at("rhs").get<std::string>();
            r.note = jr.value("note", std::string());
            if (r.name.empty()) throw Error("manifest record without a name");
            if (r.rows < 1 || r.cols < 1)
                throw Error("record '" + r.name + "' has an invalid shape");
            try {
                parse_expression(r.lhs);
                parse_expression(r.rhs);
            } catch (const ParseError& e) {
                throw Error("record '" + r.name + "': " + e.what());
            }
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("manifest " + path + " has a malformed record: " + e.what());
    }
    return out;
}

void save_manifest(const std::string& path,
                   const std::vector<IdentityRecord>& records) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json jr;
        jr["name"] = r.name;
        jr["rows"] = r.rows;
        jr["cols"] = r.cols;
        jr["lhs"] = r.lhs;
        jr["rhs"] = r.rhs;
        jr["note"] = r.note;
        doc["records"].push_back(std::move(jr));
    }
    std::ofstream out(path);
    if (!out.good()) throw Error("cannot write manifest: " + path);
    out << doc.dump(2) << "\n";
}

IdentityRecord transpose_record(const IdentityRecord& r) {
    IdentityRecord out;
    out.name = r.name + "-tau";
    out.note = "row-column transpose of " + r.name;
    std::optional<Expr> lhs = transpose_expr(parse_expression(r.lhs), r.rows);
    std::optional<Expr> rhs = transpose_expr(parse_expression(r.rhs), r.rows);
    if (lhs.has_value() && rhs.has_value()) {
        out.rows = r.cols;
        out.cols = r.rows;
        out.lhs = expr_text(*lhs);
        out.rhs = expr_text(*rhs);
    } else {
        out.rows = r.rows;
        out.cols = r.cols;
        out.lhs = "tau(" + r.lhs + ")";
        out.rhs = "tau(" + r.rhs + ")";
    }
    return out;
}

std::vector<IdentityRecord> with_transposes(
    const std::vector<IdentityRecord>& records) {
    std::vector<IdentityRecord> out = records;
    for (const auto& r : records) out.push_back(transpose_record(r));
    return out;
}

ReplayReport run_replay(const ReplayOptions& opt) {
    if (opt.q_value.has_value() && opt.table.has_value())
        throw Error("replay with a modified table runs generically, not at a numeric q");
    ReplayReport out;
    if (opt.q_value.has_value()) {
        Algebra<Rational> A(square_shape(3), *opt.q_value);
        replay_into(out, A);
    } else if (opt.table.has_value()) {
        Algebra<RationalFunction> A(square_shape(3), RationalFunction::q_power(1),
                                    *opt.table);
        replay_into(out, A);
    } else {
        Algebra<RationalFunction> A(square_shape(3), RationalFunction::q_power(1));
        replay_into(out, A);
    }
    return out;
}

}  // namespace qmat
