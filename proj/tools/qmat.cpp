// Command line front end: normal forms, minors, identity suites, the
// 3x3 replay, and the linear-algebra studies, over the generic field or
// at a numeric q.  Exit codes: 0 success, 1 a verification answered
// "no", 2 usage or input errors.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmat/analysis.hpp"
#include "qmat/verify.hpp"

using namespace qmat;
using RF = RationalFunction;
using ordered_json = nlohmann::ordered_json;

namespace {

struct Common {
    int rows = 0;  // 0 means: use cols (square)
    int cols = 3;
    std::string q_text;
    bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--n", c.cols, "number of columns (and rows unless --m is given)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--m", c.rows, "number of rows")->check(CLI::PositiveNumber);
    cmd->add_option("--q", c.q_text,
                    "evaluate over plain rationals at this value of q (e.g. 3 or 5/7)");
    cmd->add_flag("--json", c.json, "emit JSON instead of plain text");
}

AlgebraShape shape_of(const Common& c) {
    return AlgebraShape(c.rows > 0 ? c.rows : c.cols, c.cols);
}

bool specialized(const Common& c) { return !c.q_text.empty(); }

template <typename K>
void print_element(const Element<K>& x, bool json, const std::string& input) {
    if (json) {
        ordered_json j;
        j["input"] = input;
        j["normal_form"] = to_text(x);
        j["terms"] = x.term_count();
        j["degree"] = x.degree();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << to_text(x) << "\n";
    }
}

// Runs fn with an algebra over the field selected by --q.
template <typename Fn>
int with_algebra(const Common& c, Fn&& fn) {
    if (specialized(c)) {
        Algebra<Rational> A(shape_of(c), rational_from_text(c.q_text));
        return fn(A);
    }
    Algebra<RF> A(shape_of(c), RF::q_power(1));
    return fn(A);
}

std::vector<int> split_indices(const std::string& text) {
    std::vector<int> out;
    std::size_t at = 0;
    while (at <= text.size()) {
        std::size_t comma = text.find(',', at);
        std::string piece = text.substr(at, comma == std::string::npos
                                                ? std::string::npos
                                                : comma - at);
        try {
            out.push_back(std::stoi(piece));
        } catch (const std::exception&) {
            throw Error("cannot read '" + piece + "' as an index");
        }
        if (comma == std::string::npos) break;
        at = comma + 1;
    }
    return out;
}

int run_verify(const Common& c, const std::string& manifest, bool tau) {
    std::vector<IdentityRecord> records =
        manifest.empty() ? builtin_identities() : load_manifest(manifest);
    if (tau) records = with_transposes(records);
    SuiteReport report = specialized(c)
                             ? run_identity_suite(records, rational_from_text(c.q_text))
                             : run_identity_suite(records, RF::q_power(1));
    if (c.json) {
        ordered_json j;
        j["total"] = report.total;
        j["failures"] = ordered_json::array();
        for (const auto& f : report.failures)
            j["failures"].push_back({{"name", f.name}, {"residual", f.residual}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "checked " << report.total << " identities\n";
        for (const auto& f : report.failures)
            std::cout << "FAIL " << f.name << ": residual " << f.residual << "\n";
    }
    return report.ok() ? 0 : 1;
}

int run_replay(const Common& c) {
    ReplayOptions opt;
    if (specialized(c)) opt.q_value = rational_from_text(c.q_text);
    ReplayReport report = ::qmat::run_replay(opt);
    if (c.json) {
        ordered_json j;
        j["steps"] = ordered_json::array();
        for (const auto& s : report.steps)
            j["steps"].push_back(
                {{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
        j["failed"] = report.failed();
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& s : report.steps) {
            std::cout << (s.ok ? "ok   " : "FAIL ") << s.name;
            if (!s.detail.empty()) std::cout << "  (" << s.detail << ")";
            std::cout << "\n";
        }
    }
    return report.ok() ? 0 : 1;
}

// For the solver commands --q picks the specialization probe; the
// computation itself stays over the generic field.
SolveOptions solve_options(const Common& c, bool exact) {
    SolveOptions opt;
    if (exact && specialized(c))
        throw Error("--q selects a specialization probe and cannot combine with --exact");
    if (exact) opt.mode = SolveMode::Exact;
    if (specialized(c)) opt.probe_values = {rational_from_text(c.q_text)};
    return opt;
}

int run_center(const Common& c, int maxdeg, bool exact) {
    QAlgebra A(shape_of(c), RF::q_power(1));
    SolveOptions opt = solve_options(c, exact);
    CenterBasis cb = center_basis(A, maxdeg, opt);
    if (c.json) {
        ordered_json j;
        j["maxdeg"] = maxdeg;
        j["dimension"] = cb.space.dimension();
        j["elements"] = ordered_json::array();
        for (const auto& x : cb.elements) j["elements"].push_back(to_text(x));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "dimension " << cb.space.dimension() << "\n";
        for (const auto& x : cb.elements) std::cout << to_text(x) << "\n";
    }
    return 0;
}

int run_derivations(const Common& c, int shift, bool exact) {
    QAlgebra A(shape_of(c), RF::q_power(1));
    SolveOptions opt = solve_options(c, exact);
    DerivationSpace solved = graded_derivation_space(A, shift, opt);
    std::vector<DerivationCandidate> inner;
    for (const auto& m : monomials_of_degree(A.shape(), shift))
        inner.push_back(inner_derivation(
            A, QElement::from_monomial(A.shape(), m, RF(1))));
    LinearSpace span = derivation_span(A, inner, shift);
    SpaceComparison cmp = compare_spaces(solved.space, span);
    bool equal = cmp.relation == SpaceRelation::Equal;
    if (c.json) {
        ordered_json j;
        j["shift"] = shift;
        j["dimension"] = solved.space.dimension();
        j["inner_dimension"] = span.dimension();
        j["inner"] = equal;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "dimension " << solved.space.dimension() << "\n";
        std::cout << "inner span dimension " << span.dimension() << "\n";
        std::cout << (equal ? "every solution is inner\n"
                            : "solutions beyond the inner span exist\n");
    }
    return 0;
}

int run_normal_check(const Common& c, const std::string& text) {
    QAlgebra A(shape_of(c), RF::q_power(1));
    QElement x = evaluate(A, parse_expression(text));
    NormalityReport rep = is_normal_qcentral(A, x);
    if (c.json) {
        ordered_json j;
        j["input"] = text;
        j["qcentral"] = rep.ok();
        if (rep.ok()) {
            // a q-commutation certificate proves normality
            j["normal"] = true;
            ordered_json tw = ordered_json::object();
            for (const auto& [g, k] : rep.certificate->twists) tw[g.str()] = k;
            j["twists"] = tw;
        } else {
            j["failed_at"] = rep.failed_at->str();
        }
        std::cout << j.dump(2) << "\n";
    } else if (rep.ok()) {
        std::cout << "normal (q-central)\n";
        for (const auto& [g, k] : rep.certificate->twists)
            std::cout << g.str() << ": " << k << "\n";
    } else {
        std::cout << "not q-central: fails against " << rep.failed_at->str() << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int run_twist(const Common& c, const std::string& text, int row, int col) {
    QAlgebra A(shape_of(c), RF::q_power(1));
    QElement x = evaluate(A, parse_expression(text));
    std::optional<long> k = q_commutation_twist(A, x, Gen{row, col});
    if (c.json) {
        ordered_json j;
        j["input"] = text;
        j["generator"] = Gen{row, col}.str();
        if (k.has_value())
            j["exponent"] = *k;
        else
            j["exponent"] = nullptr;
        std::cout << j.dump(2) << "\n";
    } else if (k.has_value()) {
        std::cout << *k << "\n";
    } else {
        std::cout << "none\n";
    }
    return k.has_value() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computations in quantum matrix algebras"};
    app.require_subcommand(1);

    Common c_nf;
    std::string nf_expr;
    CLI::App* nf = app.add_subcommand("nf", "normal form of an expression");
    add_common(nf, c_nf);
    nf->add_option("expr", nf_expr, "expression to normalize")->required();

    Common c_minor;
    std::string minor_rows, minor_cols;
    CLI::App* minor = app.add_subcommand("minor", "quantum minor of the algebra");
    add_common(minor, c_minor);
    minor->add_option("rows", minor_rows, "row indices, e.g. 1,2")->required();
    minor->add_option("cols", minor_cols, "column indices, e.g. 2,3")->required();

    Common c_det;
    CLI::App* det = app.add_subcommand("det", "quantum determinant");
    add_common(det, c_det);

    Common c_verify;
    std::string manifest;
    bool tau_closure = false;
    CLI::App* verify = app.add_subcommand("verify", "check an identity suite");
    add_common(verify, c_verify);
    verify->add_option("--manifest", manifest, "JSON manifest of identities");
    verify->add_flag("--tau", tau_closure, "also check the transpose of every record");

    Common c_replay;
    CLI::App* replay = app.add_subcommand("replay", "replay the 3x3 chain study");
    add_common(replay, c_replay);

    Common c_center;
    int maxdeg = 3;
    bool center_exact = false;
    CLI::App* center = app.add_subcommand("center", "basis of the center up to a degree");
    add_common(center, c_center);
    center->add_option("--maxdeg", maxdeg, "degree bound")->check(CLI::NonNegativeNumber);
    center->add_flag("--exact", center_exact, "skip the specialization shortcut");

    Common c_deriv;
    int shift = 1;
    bool deriv_exact = false;
    CLI::App* deriv =
        app.add_subcommand("derivations", "graded derivations raising degree");
    add_common(deriv, c_deriv);
    deriv->add_option("--shift", shift, "degree raised by each derivation")
        ->check(CLI::NonNegativeNumber);
    deriv->add_flag("--exact", deriv_exact, "skip the specialization shortcut");

    Common c_normal;
    std::string normal_expr;
    CLI::App* normal =
        app.add_subcommand("normal-check", "q-commutation certificate of an element");
    add_common(normal, c_normal);
    normal->add_option("expr", normal_expr, "element to certify")->required();

    Common c_twist;
    std::string twist_expr;
    int twist_row = 1, twist_col = 1;
    CLI::App* twist =
        app.add_subcommand("twist", "commutation exponent against one generator");
    add_common(twist, c_twist);
    twist->add_option("expr", twist_expr, "element to test")->required();
    twist->add_option("row", twist_row, "generator row")->required();
    twist->add_option("col", twist_col, "generator column")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (nf->parsed())
            return with_algebra(c_nf, [&](const auto& A) {
                print_element(evaluate(A, parse_expression(nf_expr)), c_nf.json,
                              nf_expr);
                return 0;
            });
        if (minor->parsed())
            return with_algebra(c_minor, [&](const auto& A) {
                MinorId id{split_indices(minor_rows), split_indices(minor_cols)};
                print_element(quantum_minor(A, id), c_minor.json, id.str());
                return 0;
            });
        if (det->parsed())
            return with_algebra(c_det, [&](const auto& A) {
                print_element(quantum_determinant(A), c_det.json, "det");
                return 0;
            });
        if (verify->parsed()) return run_verify(c_verify, manifest, tau_closure);
        if (replay->parsed()) return run_replay(c_replay);
        if (center->parsed()) return run_center(c_center, maxdeg, center_exact);
        if (deriv->parsed()) return run_derivations(c_deriv, shift, deriv_exact);
        if (normal->parsed()) {
            if (specialized(c_normal))
                throw Error("normality certificates run over the generic field");
            return run_normal_check(c_normal, normal_expr);
        }
        if (twist->parsed()) {
            if (specialized(c_twist))
                throw Error("twist computations run over the generic field");
            return run_twist(c_twist, twist_expr, twist_row, twist_col);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
