#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qmat/verify.hpp"

using namespace qmat;
using RF = RationalFunction;

namespace {

const IdentityRecord& find_record(const std::vector<IdentityRecord>& rs,
                                  const std::string& name) {
    for (const auto& r : rs)
        if (r.name == name) return r;
    REQUIRE_MESSAGE(false, "missing record " << name);
    throw Error("unreachable");
}

std::string temp_path(const char* stem) {
    return std::string("verify_test_") + stem + ".json";
}

}  // namespace

TEST_CASE("every shipped identity holds over the generic field") {
    std::vector<IdentityRecord> records = builtin_identities();
    REQUIRE(records.size() >= 23);
    SuiteReport report = run_identity_suite(records, RF::q_power(1));
    CHECK(report.total == static_cast<int>(records.size()));
    for (const auto& f : report.failures)
        MESSAGE("failed: " << f.name << " residual " << f.residual);
    CHECK(report.ok());
}

TEST_CASE("every shipped identity holds at numeric specializations") {
    std::vector<IdentityRecord> records = builtin_identities();
    for (Rational v : {Rational(2), Rational(-1), Rational(1, 2)}) {
        SuiteReport report = run_identity_suite(records, v);
        CHECK_MESSAGE(report.ok(), "q = " << v.get_str());
    }
}

TEST_CASE("the transpose closure doubles the suite and still holds") {
    std::vector<IdentityRecord> records = with_transposes(builtin_identities());
    CHECK(records.size() == 2 * builtin_identities().size());
    SuiteReport generic = run_identity_suite(records, RF::q_power(1));
    for (const auto& f : generic.failures)
        MESSAGE("failed: " << f.name << " residual " << f.residual);
    CHECK(generic.ok());
    CHECK(run_identity_suite(records, Rational(3)).ok());
}

TEST_CASE("structural transposes rewrite generators, minors and chain entries") {
    IdentityRecord base = find_record(builtin_identities(), "b4-expansion");
    // b(4) appears only through its minor here; add a chain reference
    IdentityRecord chain{"chain", 3, 3, "b(2)", "minor([1,2],[2,3])", ""};
    IdentityRecord flipped = transpose_record(chain);
    CHECK(flipped.name == "chain-tau");
    CHECK(flipped.lhs == "b(4)");
    CHECK(flipped.rhs == "minor([2,3],[1,2])");

    IdentityRecord f2 = transpose_record(base);
    CHECK(f2.lhs == "minor([1,2],[2,3])");
    CHECK(f2.rhs == "Y[1,2]*Y[2,3] - q*Y[2,2]*Y[1,3]");

    IdentityRecord fixed{"fixed", 3, 3, "b(6) + det(3)", "1 + det(3)", ""};
    IdentityRecord f3 = transpose_record(fixed);
    CHECK(f3.lhs == "b(6) + det(3)");
}

TEST_CASE("gamma-bearing records fall back to tau wrapping") {
    IdentityRecord g = find_record(builtin_identities(), "gamma-1313");
    IdentityRecord t = transpose_record(g);
    CHECK(t.lhs == "tau(gamma(minor([1,3],[1,3])))");
    CHECK(t.rhs == "tau(Y[2,2]*det(3))");
    SuiteReport report = run_identity_suite<RF>({t}, RF::q_power(1));
    CHECK(report.ok());
}

TEST_CASE("manifests round-trip through JSON") {
    std::vector<IdentityRecord> records = builtin_identities();
    std::string path = temp_path("roundtrip");
    save_manifest(path, records);
    std::vector<IdentityRecord> back = load_manifest(path);
    CHECK(back == records);
    std::remove(path.c_str());
}

TEST_CASE("the shipped manifest file matches the builtin list") {
    std::vector<IdentityRecord> shipped =
        load_manifest(std::string(QMAT_REPO_DATA_DIR) + "/identities.json");
    CHECK(shipped == builtin_identities());
}

TEST_CASE("bad manifests fail loudly") {
    CHECK_THROWS_AS(load_manifest("no_such_file.json"), Error);

    std::string bad_json = temp_path("badjson");
    {
        std::ofstream out(bad_json);
        out << "{]";
    }
    CHECK_THROWS_AS(load_manifest(bad_json), Error);
    std::remove(bad_json.c_str());

    std::string bad_version = temp_path("badversion");
    {
        std::ofstream out(bad_version);
        out << R"({"version": 7, "records": []})";
    }
    CHECK_THROWS_AS(load_manifest(bad_version), Error);
    std::remove(bad_version.c_str());

    std::string bad_expr = temp_path("badexpr");
    {
        std::ofstream out(bad_expr);
        out << R"({"version": 1, "records": [{"name": "broken", "rows": 3,)"
            << R"( "cols": 3, "lhs": "Y[1,", "rhs": "1"}]})";
    }
    try {
        load_manifest(bad_expr);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("broken") != std::string::npos);
    }
    std::remove(bad_expr.c_str());

    std::string bad_field = temp_path("badfield");
    {
        std::ofstream out(bad_field);
        out << R"({"version": 1, "records": [{"name": "x", "rows": 3}]})";
    }
    CHECK_THROWS_AS(load_manifest(bad_field), Error);
    std::remove(bad_field.c_str());
}

TEST_CASE("the generic replay certifies every step") {
    ReplayReport report = run_replay();
    CHECK(report.steps.size() == 31);
    for (const auto& s : report.steps)
        CHECK_MESSAGE(s.ok, s.name << ": " << s.detail);
    CHECK(report.ok());
    CHECK(report.failed() == 0);

    bool saw_normal = false, saw_anchor = false, saw_identity = false;
    for (const auto& s : report.steps) {
        if (s.name == "normal-b3") saw_normal = true;
        if (s.name == "anchor-b4") saw_anchor = true;
        if (s.name == "y22-delta-product") saw_identity = true;
    }
    CHECK(saw_normal);
    CHECK(saw_anchor);
    CHECK(saw_identity);
}

TEST_CASE("the replay passes at numeric specializations") {
    for (Rational v : {Rational(2), Rational(5, 7), Rational(-3)}) {
        ReplayOptions opt;
        opt.q_value = v;
        ReplayReport report = run_replay(opt);
        CHECK_MESSAGE(report.ok(), "q = " << v.get_str());
        CHECK(report.steps.size() == 31);
    }
}

TEST_CASE("a modified relation table breaks the replay visibly") {
    RF q = RF::q_power(1);
    RelationTable<RF> table = RelationTable<RF>::standard(q);
    table.cross_extra = q - RF::q_power(-1);  // flips the sign of the cross term
    ReplayOptions opt;
    opt.table = table;
    ReplayReport report = run_replay(opt);
    CHECK_FALSE(report.ok());
    CHECK(report.failed() > 0);
    bool identity_failed = false;
    for (const auto& s : report.steps)
        if (!s.ok && s.name == "commutator-y11-y33") identity_failed = true;
    CHECK(identity_failed);
}

TEST_CASE("replay options are mutually exclusive") {
    ReplayOptions opt;
    opt.q_value = Rational(2);
    opt.table = RelationTable<RF>::standard(RF::q_power(1));
    CHECK_THROWS_AS(run_replay(opt), Error);
}

TEST_CASE("suite failures carry the offending record and residual") {
    IdentityRecord broken{"bogus", 3, 3, "Y[1,1]", "Y[1,1] + 1", ""};
    SuiteReport report = run_identity_suite<RF>({broken}, RF::q_power(1));
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures[0].name == "bogus");
    CHECK(report.failures[0].residual == "-1");
}

TEST_CASE("perturbing any single relation coefficient breaks some identity") {
    RF q = RF::q_power(1);
    for (int which = 0; which < 4; ++which) {
        RelationTable<RF> table = RelationTable<RF>::standard(q);
        RF bump = RF::q_power(3);
        switch (which) {
            case 0: table.same_row = table.same_row * bump; break;
            case 1: table.same_col = table.same_col * bump; break;
            case 2: table.distant = table.distant * bump; break;
            case 3: table.cross_extra = table.cross_extra * bump; break;
        }
        SuiteReport report = run_identity_suite_with<RF>(
            builtin_identities(),
            [&](const AlgebraShape& s) { return Algebra<RF>(s, q, table); });
        CHECK_MESSAGE(!report.ok(), "coefficient " << which);
    }
}
