#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wvg/cnf.hpp"
#include "wvg/errors.hpp"

using namespace wvg;

namespace {

CnfFormula or2() { return CnfFormula::create(2, {{1, 2}}); }
CnfFormula and2() { return CnfFormula::create(2, {{1}, {2}}); }

bool parse_fails_with(const std::string& text, ParseErrorKind kind) {
    try {
        parse_dimacs(text);
    } catch (const ParseError& e) {
        return e.kind == kind;
    }
    return false;
}

} // namespace

TEST_CASE("dimacs parsing") {
    const CnfFormula f = parse_dimacs("p cnf 2 1\n1 2 0");
    CHECK(f.num_vars() == 2);
    CHECK(f.num_clauses() == 1);
    CHECK(f == or2());

    const CnfFormula g = parse_dimacs("c comment\np cnf 2 2\nc another\n1 0 2 -1 0\n");
    CHECK(g.num_clauses() == 2);

    // Duplicate literals inside a clause collapse.
    CHECK(parse_dimacs("p cnf 2 1\n1 1 2 0") == or2());
}

TEST_CASE("dimacs rejections are typed") {
    CHECK(parse_fails_with("p dnf 2 1\n1 2 0", ParseErrorKind::MalformedHeader));
    CHECK(parse_fails_with("1 2 0", ParseErrorKind::MalformedHeader));
    CHECK(parse_fails_with("p cnf 2 2\n1 2 0", ParseErrorKind::MalformedHeader));
    CHECK(parse_fails_with("p cnf 1 1\n1 -1 0", ParseErrorKind::TautologicalClause));
    CHECK(parse_fails_with("p cnf 3 1\n1 2 0", ParseErrorKind::UnusedVariable));
    CHECK(parse_fails_with("p cnf 2 1\n1 3 0", ParseErrorKind::LiteralOutOfRange));
    CHECK(parse_fails_with("p cnf 2 2\n1 2 0\n0\n", ParseErrorKind::EmptyClause));
    CHECK(parse_fails_with("p cnf 2 1\n1 2 x 0", ParseErrorKind::BadNumber));
    CHECK(parse_fails_with("p cnf 2 1\n1 2", ParseErrorKind::TrailingGarbage));
}

TEST_CASE("dimacs round trip") {
    for (const auto& f : enumerate_formulas(2, 2))
        CHECK(parse_dimacs(f.to_dimacs()) == f);
}

TEST_CASE("count_models") {
    CHECK(count_models(or2()) == 3);
    CHECK(count_models(or2(), PartialAssignment{{true}}) == 2);
    CHECK(count_models(or2(), PartialAssignment{{false}}) == 1);
    CHECK(count_models(and2(), PartialAssignment{{false}}) == 0);
    CHECK(count_models(and2(), PartialAssignment{{true, true}}) == 1);
}

TEST_CASE("prefix counts sum to the total model count") {
    for (const auto& f : enumerate_formulas(3, 2))
        for (int k = 0; k <= f.num_vars(); ++k) {
            BigInt sum = 0;
            for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
                PartialAssignment p;
                for (int i = 0; i < k; ++i)
                    p.values.push_back((mask >> i) & 1);
                sum += count_models(f, p);
            }
            CHECK(sum == count_models(f));
        }
}

TEST_CASE("decider examples") {
    SUBCASE("emajsat") {
        const auto d = decide_emajsat(or2(), 1);
        CHECK(d.yes);
        REQUIRE(d.witness.has_value());
        CHECK(d.witness->values == std::vector<bool>{true});
        CHECK_FALSE(decide_emajsat(and2(), 1).yes);
        // k = n on a satisfiable formula is plain satisfiability.
        CHECK(decide_emajsat(or2(), 2).yes);
        CHECK(decide_emajsat(and2(), 2).yes);
    }
    SUBCASE("eminsat") {
        auto d = decide_eminsat(and2(), 1);
        CHECK(d.yes);
        CHECK(d.witness->values == std::vector<bool>{false});
        d = decide_eminsat(or2(), 1);
        CHECK(d.yes); // x1 = 0 leaves exactly half
        CHECK(d.witness->values == std::vector<bool>{false});
        const CnfFormula full = CnfFormula::create(2, {{1, 2}, {-1, 2}});
        CHECK(decide_eminsat(full, 1).yes); // x1 = 0 leaves 1 of 2
    }
    SUBCASE("eexasat") {
        CHECK(decide_eexasat(or2(), 1, BigInt(2)).yes);
        CHECK(decide_eexasat(or2(), 1, BigInt(1)).yes);
        CHECK_FALSE(decide_eexasat(or2(), 1, BigInt(4)).yes);
        CHECK_FALSE(decide_eexasat(or2(), 1, BigInt(0)).yes);
        CHECK_THROWS_AS(decide_eexasat(or2(), 1, BigInt(-1)), InvalidArgumentError);
    }
    SUBCASE("k range") {
        CHECK_THROWS_AS(decide_emajsat(or2(), -1), InvalidArgumentError);
        CHECK_THROWS_AS(decide_emajsat(or2(), 3), InvalidArgumentError);
    }
}

TEST_CASE("k = 0 is the plain majority question") {
    for (const auto& f : enumerate_formulas(3, 3)) {
        const bool maj = decide_emajsat(f, 0).yes;
        CHECK(maj == (count_models(f) * 2 > pow2(f.num_vars())));
    }
}

TEST_CASE("deciders agree with the double-loop oracle over the small suite") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& f : enumerate_formulas(n, 3))
            for (int k = 0; k <= n; ++k) {
                const auto expect = oracles::quantified(f, k);
                CHECK(decide_emajsat(f, k).yes == expect.emajsat);
                CHECK(decide_eminsat(f, k).yes == expect.eminsat);
                for (long long ell = 0; ell <= (1LL << (n - k)) + 1; ++ell)
                    CHECK(decide_eexasat(f, k, BigInt(ell)).yes ==
                          oracles::exact_count_exists(f, k, ell));
            }
}

TEST_CASE("suite generation") {
    CHECK(enumerate_formulas(1, 3).size() == 3);
    const auto suite2 = enumerate_formulas(2, 3);
    for (const auto& f : suite2) {
        CHECK(f.num_vars() == 2);
        CHECK(f.num_clauses() <= 3);
    }
    // No duplicates up to clause order (clauses are stored sorted).
    std::set<std::string> seen;
    for (const auto& f : suite2)
        CHECK(seen.insert(f.to_dimacs()).second);

    const auto sampled = sample_formulas(6, 4, 25, 1);
    CHECK(sampled.size() == 25);
    for (const auto& f : sampled) {
        CHECK(f.num_vars() == 6);
        CHECK(f.num_clauses() == 4);
    }
    CHECK(sample_formulas(6, 4, 25, 1)[0] == sampled[0]); // deterministic
}

TEST_CASE("brute force cap") {
    std::vector<std::vector<int>> clauses;
    for (int v = 1; v <= 31; ++v)
        clauses.push_back({v});
    const CnfFormula big = CnfFormula::create(31, clauses);
    CHECK_THROWS_AS(count_models(big), CapabilityError);
}
