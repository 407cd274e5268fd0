#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wvg/errors.hpp"
#include "wvg/game.hpp"
#include "wvg/reductions.hpp"

#include <map>

using namespace wvg;

namespace {

CnfFormula or2() { return CnfFormula::create(2, {{1, 2}}); }
CnfFormula or3() { return CnfFormula::create(3, {{1, 2, 3}}); }
CnfFormula or4() { return CnfFormula::create(4, {{1, 2, 3, 4}}); }

std::map<std::string, int> group_sizes(const ControlInstance& inst) {
    std::map<std::string, int> sizes;
    for (const auto& [label, members] : inst.groups)
        sizes[label] = static_cast<int>(members.size());
    return sizes;
}

BigInt weight_of_first(const ControlInstance& inst, const std::string& label) {
    const auto* members = inst.group(label);
    REQUIRE(members != nullptr);
    REQUIRE_FALSE(members->empty());
    return inst.game.weight(members->front()).value();
}

// A copy of `inst` with one player's weight bumped by one.
ControlInstance corrupt_weight(const ControlInstance& inst, int player) {
    std::vector<Weight> ws = inst.game.weights();
    ws[static_cast<std::size_t>(player - 1)] =
        Weight(ws[static_cast<std::size_t>(player - 1)].value() + 1);
    ControlInstance bad{Game(std::move(ws), inst.game.quota()),
                        inst.addable,
                        inst.distinguished,
                        inst.budget,
                        inst.goal,
                        inst.index_kind,
                        inst.groups,
                        inst.constants};
    return bad;
}

} // namespace

TEST_CASE("thm1 on (x1 v x2), k = 1") {
    const ControlInstance inst = reduce_increase_banzhaf(or2(), 1);
    CHECK(inst.game.player_count() == 7);
    CHECK(inst.game.quota() == 44065);
    CHECK(inst.constants.get_int("q1") == 11020);
    CHECK(weight_of_first(inst, "W") == 33043);
    CHECK(weight_of_first(inst, "Y") == 44064);
    CHECK(group_sizes(inst) ==
          std::map<std::string, int>{{"p", 1}, {"A", 2}, {"C", 1}, {"W", 1},
                                     {"X", 1}, {"Y", 1}, {"Z", 0}});
    CHECK(inst.goal == ControlGoal::Increase);
    CHECK(inst.index_kind == IndexKind::Banzhaf);
    CHECK(inst.budget == 1);
    CHECK(inst.addable.size() == 2);
    CHECK(inst.distinguished == 1);

    // Closed-form baseline: 2^(n-k-1) / 2^(|N|-1).
    CHECK(banzhaf(inst.game, 1).str() == "1/64");

    CHECK(validate_instance(inst).all_passed());
    CHECK_THROWS_AS(reduce_increase_banzhaf(or2(), 2), InvalidArgumentError);
}

TEST_CASE("thm3a adds one more weight-(q-1) player") {
    const ControlInstance inst = reduce_nondecrease_banzhaf(or2(), 1);
    CHECK(inst.game.player_count() == 8);
    const auto* y = inst.group("Y");
    REQUIRE(y != nullptr);
    CHECK(y->size() == 2);
    CHECK(inst.game.weight((*y)[0]).value() == inst.game.quota() - 1);
    CHECK(inst.game.weight((*y)[1]).value() == inst.game.quota() - 1);
    CHECK(inst.goal == ControlGoal::Nondecrease);

    // Baseline (2^(n-k-1) + 1) / 2^(|N'|-1) = 2/128.
    CHECK(banzhaf(inst.game, 1).str() == "1/64");

    CHECK(validate_instance(inst).all_passed());
    CHECK_THROWS_AS(reduce_nondecrease_banzhaf(or2(), 0), InvalidArgumentError);
}

TEST_CASE("thm2 on (x1 v x2), k = 1") {
    const ControlInstance inst =
        reduce_increase_nondecrease_ss(or2(), 1, ControlGoal::Increase);
    const auto& c = inst.constants;
    CHECK(c.get_int("P") == 187);
    CHECK(c.get_int("delta") == 81);
    CHECK(c.get_int("x") == 93);
    CHECK(c.get_rat("k_prime") == BigRat(2));
    CHECK(c.get_int("z") == 3);
    CHECK(c.get_seq("y_exponents") == std::vector<BigInt>{1, 0});
    CHECK(inst.game.player_count() == 187);
    CHECK(inst.index_kind == IndexKind::ShapleyShubik);

    // Coalition-size identity: 1 + delta + n + m(r+1) + beta_j + j = x.
    const auto& beta = c.get_seq("beta");
    for (std::size_t j = 0; j < beta.size(); ++j)
        CHECK(1 + c.get_int("delta") + 2 + 1 + beta[j] + BigInt(j) == c.get_int("x"));

    // Ladder values, hand-derived for this shape.
    CHECK(c.get_seq("v") == std::vector<BigInt>{82, 738});
    CHECK(c.get_seq("v_prime") == std::vector<BigInt>{5904, 11808});
    CHECK(c.get_seq("w_star") == std::vector<BigInt>{11808, 141696, 1558656});
    CHECK(c.get_int("w_prime") == 15586560);
    CHECK(c.get_int("t_prime") == 8); // 10^8 > 3 * w_prime
    // Every ladder player below one t'-digit, as the construction needs.
    CHECK(BigInt(3) * c.get_int("w_prime") < pow10(8));

    CHECK(validate_instance(inst).all_passed());

    const ControlInstance nd =
        reduce_increase_nondecrease_ss(or2(), 1, ControlGoal::Nondecrease);
    CHECK(nd.goal == ControlGoal::Nondecrease);
    CHECK_THROWS_AS(reduce_increase_nondecrease_ss(or2(), 1, ControlGoal::Maintain),
                    InvalidArgumentError);
}

TEST_CASE("thm2 k_prime stays within [2, 2^k] across shapes") {
    for (int n = 2; n <= 8; ++n)
        for (int k = 1; k < n; ++k) {
            // Only the constants matter here; use a single-clause formula.
            std::vector<int> clause;
            for (int v = 1; v <= n; ++v)
                clause.push_back(v);
            const ControlInstance inst = reduce_increase_nondecrease_ss(
                CnfFormula::create(n, {clause}), k, ControlGoal::Increase);
            const BigRat kp = inst.constants.get_rat("k_prime");
            CHECK(kp >= 2);
            CHECK(kp <= BigRat(pow2(k)));
            CHECK(inst.constants.get_int("P") % 2 == 1);
            CHECK(2 * inst.constants.get_int("x") + 1 == inst.constants.get_int("P"));
        }
}

TEST_CASE("thm3bc banzhaf constants and cardinality") {
    const ControlInstance inst =
        reduce_decrease_nonincrease_banzhaf(or3(), 2, ControlGoal::Decrease);
    const auto& c = inst.constants;
    CHECK(c.get_int("h_prime") == 8);
    CHECK(c.get_int("h") == 24);
    CHECK(c.get_int("z") == 48);
    CHECK(c.get_int("e") == 240);
    CHECK(c.get_int("t") == 3);
    CHECK(inst.game.player_count() == 51); // 42 + 24 - 12 - 6 + 2 + 1
    CHECK(validate_instance(inst).all_passed());

    CHECK_THROWS_AS(reduce_decrease_nonincrease_banzhaf(or3(), 1, ControlGoal::Decrease),
                    InvalidArgumentError);
    CHECK_THROWS_AS(reduce_decrease_nonincrease_banzhaf(or3(), 2, ControlGoal::Increase),
                    InvalidArgumentError);
}

TEST_CASE("thm3bc shapley constants on n=4, k=3") {
    const ControlInstance inst =
        reduce_decrease_nonincrease_ss(or4(), 3, ControlGoal::Decrease);
    const auto& c = inst.constants;
    CHECK(c.get_int("P_prime") == 1960);
    CHECK(c.get_int("delta") == 2410);
    CHECK(c.get_int("P") == 4370);
    CHECK(c.get_int("s") == 2428);
    const BigRat kp = c.get_rat("k_prime");
    CHECK(kp > BigRat(9));
    CHECK(kp < BigRat(64));
    CHECK(BigRat(c.get_int("s")) >= BigRat(5 * c.get_int("P"), 9));
    CHECK(BigRat(c.get_int("s")) <= BigRat(2 * c.get_int("P"), 3) - 1);
    CHECK(inst.game.player_count() == 4370);
    CHECK(validate_instance(inst).all_passed());

    CHECK_THROWS_AS(reduce_decrease_nonincrease_ss(or4(), 2, ControlGoal::Decrease),
                    InvalidArgumentError);
}

TEST_CASE("thm3d banzhaf on (x1 v x2)") {
    const ControlInstance inst = reduce_maintain_banzhaf(or2(), 1, BigInt(2));
    const auto& c = inst.constants;
    CHECK(c.get_seq("ell_exponents") == std::vector<BigInt>{1});
    CHECK(c.get_seq("z_ladder") == std::vector<BigInt>{2});
    CHECK(c.get_int("t") == 1);
    CHECK(c.get_int("q") == 44069);
    CHECK(inst.game.player_count() == 9);
    CHECK(inst.goal == ControlGoal::Maintain);
    // Baseline ell / 2^(|N|-1) = 2/256.
    CHECK(banzhaf(inst.game, 1).str() == "1/128");
    CHECK(validate_instance(inst).all_passed());

    const ControlInstance one = reduce_maintain_banzhaf(or2(), 1, BigInt(1));
    const auto sizes = group_sizes(one);
    CHECK(sizes.at("Y_1") == 1);
    CHECK(sizes.at("Z_1") == 0);

    CHECK_THROWS_AS(reduce_maintain_banzhaf(or2(), 1, BigInt(0)), InvalidArgumentError);
    CHECK_THROWS_AS(reduce_maintain_banzhaf(or2(), 1, BigInt(3)), InvalidArgumentError);
    // k = n is admitted for the maintain construction.
    CHECK_NOTHROW(reduce_maintain_banzhaf(or2(), 2, BigInt(1)));
}

TEST_CASE("closed-form baselines match enumeration across the small suite") {
    for (int n = 2; n <= 3; ++n)
        for (const auto& f : enumerate_formulas(n, 2)) {
            for (int k = 1; k <= n - 1; ++k) {
                const ControlInstance a = reduce_increase_banzhaf(f, k);
                CHECK(banzhaf(a.game, 1).value() ==
                      BigRat(pow2(n - k - 1), pow2(a.game.player_count() - 1)));
                const ControlInstance b = reduce_nondecrease_banzhaf(f, k);
                CHECK(banzhaf(b.game, 1).value() ==
                      BigRat(pow2(n - k - 1) + 1, pow2(b.game.player_count() - 1)));
            }
            for (int k = 1; k <= n; ++k)
                for (BigInt ell = 1; ell <= pow2(n - k); ++ell) {
                    const ControlInstance m = reduce_maintain_banzhaf(f, k, ell);
                    CHECK(banzhaf(m.game, 1).value() ==
                          BigRat(ell, pow2(m.game.player_count() - 1)));
                }
        }
}

TEST_CASE("thm3bc shapley bounds hold for every shape up to n = 8") {
    for (int n = 4; n <= 8; ++n)
        for (int k = 3; k < n; ++k)
            for (int m = 1; m <= 4; ++m) {
                std::vector<std::vector<int>> clauses;
                std::vector<int> full;
                for (int v = 1; v <= n; ++v)
                    full.push_back(v);
                clauses.push_back(full);
                for (int j = 1; j < m; ++j) {
                    std::vector<int> cl;
                    for (int v = 1; v <= n; ++v)
                        cl.push_back((v + j) % 3 == 0 ? -v : v);
                    clauses.push_back(cl);
                }
                const ControlInstance inst = reduce_decrease_nonincrease_ss(
                    CnfFormula::create(n, clauses), k, ControlGoal::Nonincrease);
                const auto& c = inst.constants;
                const BigInt &P = c.get_int("P"), &s = c.get_int("s");
                CHECK(BigRat(s) >= BigRat(5 * P, 9));
                CHECK(BigRat(s) <= BigRat(2 * P, 3) - 1);
                const BigRat kp = c.get_rat("k_prime");
                CHECK(kp > BigRat(9 * pow2(k - 3)));
                CHECK(kp < BigRat(pow2(2 * k)));
                CHECK(c.get_rat("epsilon_1") > 0);
                CHECK(c.get_rat("epsilon_2") > 0);
                CHECK(c.get_rat("epsilon_4") > 0);
            }
}

TEST_CASE("thm3d shapley on n=3, m=1, k=1, ell=1") {
    const ControlInstance inst = reduce_maintain_ss(or3(), 1, BigInt(1));
    const auto& c = inst.constants;
    CHECK(c.get_int("alpha") == 302);
    CHECK(c.get_int("P") == 91203);
    CHECK(c.get_int("z_star") == 16);
    CHECK(c.get_int("s") == 22);
    CHECK(c.get_int("z") == 23);
    CHECK(c.get_seq("z_exponents") == std::vector<BigInt>{4, 2, 1, 0});
    CHECK(c.get_seq("u") == std::vector<BigInt>{1, 5, 15, 30});
    CHECK(c.get_int("q") == 2 * c.get_int("q_star") + 1);
    CHECK(inst.game.player_count() == 91203);
    // Digit widths of y and z stay below 2k*log2(alpha): 2^(y_1) < alpha^(2k).
    const BigInt alpha_pow = c.get_int("alpha") * c.get_int("alpha"); // k = 1
    CHECK(c.get_seq("y_exponents").front() == 16);
    CHECK(pow2(16) < alpha_pow);
    CHECK(validate_instance(inst).all_passed());

    CHECK_THROWS_AS(reduce_maintain_ss(or2(), 1, BigInt(1)), InvalidArgumentError);
}

TEST_CASE("baseline pivotal coalitions of the Shapley constructions, counted exactly") {
    // The sparse DP walks heavy rows first, so even the full-size games are
    // countable at the exact target q-1. Every baseline coalition must sit at
    // the construction's common size.
    CountingStrategy dp;
    dp.method = CountingMethod::SparseDp;
    auto pivotal_by_size = [&](const ControlInstance& inst) {
        std::vector<Weight> others;
        for (int i = 2; i <= inst.game.player_count(); ++i)
            others.push_back(inst.game.weight(i));
        const BigInt target = inst.game.quota() - 1;
        return count_subsets_in_band_by_size(others, target, target, dp);
    };

    SUBCASE("thm2: 2^(2n-2k) coalitions, all of size x") {
        const auto inst = reduce_increase_nondecrease_ss(or2(), 1, ControlGoal::Increase);
        const auto counts = pivotal_by_size(inst);
        REQUIRE(counts.by_size.size() == 1);
        const auto& [size, count] = *counts.by_size.begin();
        CHECK(BigInt(size) == inst.constants.get_int("x"));
        CHECK(count == pow2(2 * 2 - 2 * 1)); // 187-player game, 4 coalitions
    }
    SUBCASE("thm3bc_ss: 2^(2n-k-1) coalitions, all of size s") {
        const auto inst = reduce_decrease_nonincrease_ss(or4(), 3, ControlGoal::Decrease);
        const auto counts = pivotal_by_size(inst);
        REQUIRE(counts.by_size.size() == 1);
        const auto& [size, count] = *counts.by_size.begin();
        CHECK(BigInt(size) == inst.constants.get_int("s"));
        CHECK(count == pow2(2 * 4 - 3 - 1)); // 4370-player game, 16 coalitions
    }
    SUBCASE("thm3d_ss: y * ell coalitions, all of size s") {
        const auto inst = reduce_maintain_ss(or3(), 1, BigInt(2));
        const auto counts = pivotal_by_size(inst);
        REQUIRE(counts.by_size.size() == 1);
        const auto& [size, count] = *counts.by_size.begin();
        CHECK(BigInt(size) == inst.constants.get_int("s"));
        CHECK(count == inst.constants.get_int("y") * 2); // 91k-player game
    }
}

TEST_CASE("validate flags corrupted instances") {
    const ControlInstance good = reduce_increase_banzhaf(or2(), 1);
    REQUIRE(validate_instance(good).all_passed());

    // Perturb the W-group weight.
    const auto* w_group = good.group("W");
    REQUIRE(w_group != nullptr);
    const ControlInstance bad = corrupt_weight(good, w_group->front());
    const InstanceValidation v = validate_instance(bad);
    CHECK_FALSE(v.all_passed());

    // Tamper with a recorded constant: rebuild with one entry changed.
    ControlInstance bad2 = good;
    ReductionConstants tampered("thm1");
    for (const auto& [name, value] : good.constants.entries()) {
        if (name == "t")
            tampered.put(name, BigInt(good.constants.get_int("t") + 1));
        else if (const BigInt* i = std::get_if<BigInt>(&value))
            tampered.put(name, *i);
        else if (const BigRat* r = std::get_if<BigRat>(&value))
            tampered.put(name, *r);
        else
            tampered.put(name, std::get<std::vector<BigInt>>(value));
    }
    bad2.constants = tampered;
    CHECK_FALSE(validate_instance(bad2).all_passed());
}

TEST_CASE("build_reduction dispatch") {
    CHECK(build_reduction("thm1", or2(), 1).constants.theorem() == "thm1");
    CHECK(build_reduction("thm3a", or2(), 1).constants.theorem() == "thm3a");
    CHECK(build_reduction("thm2", or2(), 1).constants.theorem() == "thm2");
    CHECK(build_reduction("thm3d_banzhaf", or2(), 1, BigInt(1)).constants.theorem() ==
          "thm3d_banzhaf");
    CHECK_THROWS_AS(build_reduction("thm3d_banzhaf", or2(), 1), InvalidArgumentError);
    CHECK_THROWS_AS(build_reduction("nope", or2(), 1), InvalidArgumentError);
}
