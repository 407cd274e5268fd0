#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wvg/errors.hpp"
#include "wvg/gadgets.hpp"

using namespace wvg;

namespace {

CnfFormula or2() { return CnfFormula::create(2, {{1, 2}}); }
CnfFormula and2() { return CnfFormula::create(2, {{1}, {2}}); }
// Unsatisfiable without tautological clauses.
CnfFormula contradiction2() {
    return CnfFormula::create(2, {{1, 2}, {-1, -2}, {1, -2}, {-1, 2}});
}

} // namespace

TEST_CASE("set 1 on (x1 v x2), k = 1") {
    const GadgetWeights g = build_weight_set(or2(), 1, 1);
    CHECK(g.t == 1);
    CHECK(g.r == 0);
    CHECK(g.t_prime == 0);
    CHECK_FALSE(g.has_c_prime());
    REQUIRE(g.w_m.size() == 2);
    REQUIRE(g.w_a.size() == 2);
    REQUIRE(g.w_c.size() == 1);
    CHECK(g.w_m[0].value() == 1010); // a_1
    CHECK(g.w_m[1].value() == 1000); // b_1
    CHECK(g.w_a[0].value() == 10010); // a_2
    CHECK(g.w_a[1].value() == 10000); // b_2
    CHECK(g.w_c[0].value() == 10);    // c_{1,0}
    CHECK(g.q_target == 11020);
    CHECK(g.universe_label(1) == "a_1");
    CHECK(g.universe_label(2) == "b_1");
    CHECK(g.universe_label(3) == "a_2");
    CHECK(g.universe_label(5) == "c_1_0");
}

TEST_CASE("set 3 on (x1 v x2), k = 1") {
    const GadgetWeights g = build_weight_set(or2(), 1, 3);
    CHECK(g.w_m[0].value() == 10011);   // a_1
    CHECK(g.w_m[1].value() == 10001);   // b_1
    CHECK(g.w_a[0].value() == 1000011); // a_2
    CHECK(g.w_a[1].value() == 1000001); // b_2
    CHECK(g.q_target == 1010022);
}

TEST_CASE("set 2 on (x1 v x2), k = 1") {
    const GadgetWeights g = build_weight_set(or2(), 1, 2);
    // t' = 1 (10 > 4), then 10^t > 10 + 4*10 = 50 forces t = 2.
    CHECK(g.t_prime == 1);
    CHECK(g.t == 2);
    CHECK(g.has_c_prime());
    CHECK(g.w_m[0].value() == 100100);  // a_1 = 10^5 + 10^2
    CHECK(g.w_m[1].value() == 100000);  // b_1
    CHECK(g.w_a[0].value() == 1000100); // a_2
    CHECK(g.w_a[1].value() == 1000000); // b_2
    CHECK(g.w_c[0].value() == 110);     // c_{1,0} = 10^2 + 10
    CHECK(g.w_c_prime[0].value() == 10);
    CHECK(g.q_target == 1100210);
    CHECK(g.universe_label(6) == "cp_1_0");
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_weight_set(or2(), 2, 1), InvalidArgumentError);
    CHECK_THROWS_AS(build_weight_set(or2(), 0, 1), InvalidArgumentError);
    CHECK_THROWS_AS(build_weight_set(or2(), 1, 5), InvalidArgumentError);
    CHECK_NOTHROW(build_weight_set(or2(), 2, 1, std::nullopt, std::nullopt,
                                   /*allow_full_prefix=*/true));
    // Single-variable formulas have no counter rows (r would be -1).
    const CnfFormula unit = CnfFormula::create(1, {{1}});
    CHECK_THROWS_AS(build_weight_set(unit, 1, 1, std::nullopt, std::nullopt, true),
                    InvalidArgumentError);
}

TEST_CASE("caller-supplied exponent bounds are honored minimally") {
    const GadgetWeights g = build_weight_set(or2(), 1, 1, BigInt(99));
    CHECK(g.t == 2); // smallest t with 10^t > 99
    const GadgetWeights h = build_weight_set(or2(), 1, 1, BigInt(100));
    CHECK(h.t == 3);
    const GadgetWeights s2 = build_weight_set(or2(), 1, 2, std::nullopt, BigInt(50));
    CHECK(s2.t_prime == 2);
}

TEST_CASE("assignment to coalition on set 1") {
    const GadgetWeights g = build_weight_set(or2(), 1, 1);
    // (1,0): a_1 + b_2 + c_{1,0} = 1010 + 10000 + 10 = 11020.
    auto c10 = assignment_to_coalition(g, {true, false});
    REQUIRE(c10.has_value());
    CHECK(*c10 == std::vector<int>{g.pos_a(1), g.pos_b(2), g.pos_c(1, 0)});
    // (1,1): both markers already carry the full clause count; no counters.
    auto c11 = assignment_to_coalition(g, {true, true});
    REQUIRE(c11.has_value());
    CHECK(*c11 == std::vector<int>{g.pos_a(1), g.pos_a(2)});
    // (0,0) falsifies the clause.
    CHECK_FALSE(assignment_to_coalition(g, {false, false}).has_value());
}

TEST_CASE("coalition to assignment on set 1") {
    const GadgetWeights g = build_weight_set(or2(), 1, 1);
    CHECK(coalition_to_assignment(g, {g.pos_a(1), g.pos_b(2), g.pos_c(1, 0)}) ==
          std::vector<bool>{true, false});
    CHECK(coalition_to_assignment(g, {g.pos_a(1), g.pos_a(2)}) ==
          std::vector<bool>{true, true});
    // {b_1, b_2} has weight 11000 != q.
    CHECK_THROWS_AS(coalition_to_assignment(g, {g.pos_b(1), g.pos_b(2)}),
                    InvalidArgumentError);
}

TEST_CASE("bijection reports on the worked examples") {
    auto rep = verify_bijection(or2(), 1, 1);
    CHECK(rep.coalition_count == 3);
    CHECK(rep.model_count == 3);
    CHECK(rep.ok());

    rep = verify_bijection(and2(), 1, 1);
    CHECK(rep.coalition_count == 1);
    CHECK(rep.ok());

    rep = verify_bijection(contradiction2(), 1, 1);
    CHECK(rep.coalition_count == 0);
    CHECK(rep.model_count == 0);
    CHECK(rep.ok());
}

TEST_CASE("bijection holds for every set on a three-variable formula") {
    const CnfFormula f = CnfFormula::create(3, {{1, -2}, {2, 3}, {-1, 3}});
    for (int set_id = 1; set_id <= 4; ++set_id)
        for (int k = 1; k <= 2; ++k) {
            const auto rep = verify_bijection(f, k, set_id);
            CHECK_MESSAGE(rep.ok(), "set ", set_id, " k ", k);
            CHECK(rep.model_count == count_models(f));
        }
}

TEST_CASE("secondary counters reconstruct uniquely (sets 2 and 4 round trips)") {
    const CnfFormula f = CnfFormula::create(3, {{1, 2, 3}, {-1, -2, -3}});
    for (int set_id : {2, 4}) {
        const GadgetWeights g = build_weight_set(f, 1, set_id);
        std::set<std::vector<int>> coalitions;
        for (std::uint32_t mask = 0; mask < 8; ++mask) {
            std::vector<bool> assignment{bool(mask & 1), bool(mask & 2), bool(mask & 4)};
            const auto coalition = assignment_to_coalition(g, assignment);
            if (!coalition)
                continue;
            CHECK(coalitions.insert(*coalition).second); // distinct per assignment
            CHECK(coalition_to_assignment(g, *coalition) == assignment);
        }
        CHECK(BigInt(coalitions.size()) == count_models(f));
    }
}

TEST_CASE("bijection size cap") {
    const CnfFormula f = CnfFormula::create(4, {{1, 2, 3, 4}});
    CHECK_THROWS_AS(verify_bijection(f, 1, 2, /*player_cap=*/10), CapabilityError);
}
