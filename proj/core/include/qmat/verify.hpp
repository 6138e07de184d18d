#pragma once

#include <map>
#include <optional>

#include "qmat/format.hpp"
#include "qmat/parser.hpp"

namespace qmat {

// One checkable equation: two expression strings that must evaluate to
// the same element over the stated shape.  The note says what role the
// equation plays; it carries no mathematical weight.
struct IdentityRecord {
    std::string name;
    int rows = 3;
    int cols = 3;
    std::string lhs;
    std::string rhs;
    std::string note;

    bool operator==(const IdentityRecord&) const = default;
};

// The equations shipped with the library, for shapes 2x2 and 3x3.
std::vector<IdentityRecord> builtin_identities();

// JSON manifest I/O.  Loading validates the schema and parses every
// expression up front so a bad manifest fails loudly, not mid-run.
std::vector<IdentityRecord> load_manifest(const std::string& path);
void save_manifest(const std::string& path,
                   const std::vector<IdentityRecord>& records);

// Row-column transpose of a record.  Structure-level when possible:
// generators and minor index sets are flipped, b(i) becomes b(2n-i),
// the determinant stays put.  Records whose trees contain gamma, tau or
// torus nodes are wrapped in tau(...) instead, which evaluates to the
// same check.
IdentityRecord transpose_record(const IdentityRecord& r);
std::vector<IdentityRecord> with_transposes(
    const std::vector<IdentityRecord>& records);

struct IdentityFailure {
    std::string name;
    std::string residual;  // printed lhs - rhs
};

struct SuiteReport {
    int total = 0;
    std::vector<IdentityFailure> failures;

    bool ok() const { return failures.empty(); }
};

// Runs every record through algebras built by the supplied factory; one
// algebra per shape, so relation tables can be swapped out wholesale.
template <typename K, typename MakeAlgebra>
SuiteReport run_identity_suite_with(const std::vector<IdentityRecord>& records,
                                    MakeAlgebra&& make) {
    SuiteReport report;
    std::map<std::pair<int, int>, Algebra<K>> cache;
    for (const auto& r : records) {
        ++report.total;
        auto key = std::pair{r.rows, r.cols};
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, make(AlgebraShape(r.rows, r.cols))).first;
        const Algebra<K>& A = it->second;
        Element<K> lhs = evaluate(A, parse_expression(r.lhs));
        Element<K> rhs = evaluate(A, parse_expression(r.rhs));
        if (!(lhs == rhs)) report.failures.push_back({r.name, to_text(lhs - rhs)});
    }
    return report;
}

template <typename K>
SuiteReport run_identity_suite(const std::vector<IdentityRecord>& records,
                               const K& q) {
    return run_identity_suite_with<K>(
        records, [&](const AlgebraShape& s) { return Algebra<K>(s, q); });
}

struct ReplayStep {
    std::string name;
    std::string detail;
    bool ok = false;
};

struct ReplayReport {
    std::vector<ReplayStep> steps;

    int failed() const {
        int n = 0;
        for (const auto& s : steps)
            if (!s.ok) ++n;
        return n;
    }
    bool ok() const { return failed() == 0; }
};

// Replay configuration.  Exactly one of the two optional fields may be
// set: a numeric q reruns everything over plain rationals, a custom
// relation table reruns generically under modified relations so the
// dependence of each step on the relations stays observable.
struct ReplayOptions {
    std::optional<Rational> q_value;
    std::optional<RelationTable<RationalFunction>> table;
};

// Replays the full 3x3 chain study step by step: normality certificates
// for b(1)..b(6), centrality of the determinant, the closed forms of the
// chain entries, then every shipped 3x3 identity in dependency order.
ReplayReport run_replay(const ReplayOptions& opt = {});

}  // namespace qmat
