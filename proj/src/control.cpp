#include "wvg/control.hpp"

#include "wvg/errors.hpp"

#include <algorithm>
#include <future>

namespace wvg {

namespace {

// Nonempty subsets of {1..pool} of size <= budget, in lexicographic order of
// their sorted position lists (prefixes come before their extensions).
std::vector<std::vector<int>> candidate_additions(int pool, int budget) {
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    auto rec = [&](auto&& self, int start) -> void {
        for (int pos = start; pos <= pool; ++pos) {
            prefix.push_back(pos);
            out.push_back(prefix);
            if (static_cast<int>(prefix.size()) < budget)
                self(self, pos + 1);
            prefix.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

RationalIndex index_of(const Game& game, int player, IndexKind kind,
                       const CountingStrategy& strategy) {
    return kind == IndexKind::Banzhaf ? banzhaf(game, player, strategy)
                                      : shapley_shubik(game, player, strategy);
}

bool goal_satisfied(ControlGoal goal, const RationalIndex& after, const RationalIndex& before) {
    switch (goal) {
    case ControlGoal::Increase: return after > before;
    case ControlGoal::Decrease: return after < before;
    case ControlGoal::Nonincrease: return after <= before;
    case ControlGoal::Nondecrease: return after >= before;
    case ControlGoal::Maintain: return after == before;
    }
    throw InvalidArgumentError("unknown goal");
}

// Preference for reporting the "best try" candidate when the answer is no.
bool closer_to_goal(ControlGoal goal, const RationalIndex& a, const RationalIndex& b,
                    const RationalIndex& before) {
    switch (goal) {
    case ControlGoal::Increase:
    case ControlGoal::Nondecrease:
        return a > b;
    case ControlGoal::Decrease:
    case ControlGoal::Nonincrease:
        return a < b;
    case ControlGoal::Maintain: {
        const BigRat da = boost::multiprecision::abs(a.value() - before.value());
        const BigRat db = boost::multiprecision::abs(b.value() - before.value());
        return da < db;
    }
    }
    return false;
}

} // namespace

ControlDecision decide_control(const ControlInstance& instance,
                               const CountingStrategy& strategy) {
    const Game& base = instance.game;
    const int pool = static_cast<int>(instance.addable.size());
    if (instance.budget < 1 || instance.budget > pool)
        throw InvalidArgumentError("budget must be within 1..|addable|");
    const int worst_case_players = base.player_count() + instance.budget;
    if (strategy.method == CountingMethod::Enumerate &&
        worst_case_players > strategy.enumerate_player_cap)
        throw CapabilityError("control search needs up to " +
                              std::to_string(worst_case_players) +
                              " players, beyond the enumeration cap");

    ControlDecision decision;
    decision.before = index_of(base, instance.distinguished, instance.index_kind, strategy);

    const auto candidates = candidate_additions(pool, instance.budget);
    auto evaluate = [&](const std::vector<int>& positions) {
        std::vector<Weight> extra;
        extra.reserve(positions.size());
        for (int pos : positions)
            extra.push_back(instance.addable[static_cast<std::size_t>(pos - 1)]);
        const Game enlarged = base.with_added_players(extra);
        return index_of(enlarged, instance.distinguished, instance.index_kind, strategy);
    };

    std::vector<RationalIndex> results(candidates.size());
    if (strategy.threads > 1) {
        // Evaluate everything, then scan in order; the outcome matches the
        // sequential walk exactly.
        std::vector<std::future<RationalIndex>> futures;
        futures.reserve(candidates.size());
        for (const auto& cand : candidates)
            futures.push_back(std::async(std::launch::async, evaluate, std::cref(cand)));
        for (std::size_t i = 0; i < futures.size(); ++i)
            results[i] = futures[i].get();
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (goal_satisfied(instance.goal, results[i], decision.before)) {
                decision.yes = true;
                decision.witness = candidates[i];
                decision.after = results[i];
                return decision;
            }
    } else {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            results[i] = evaluate(candidates[i]);
            if (goal_satisfied(instance.goal, results[i], decision.before)) {
                decision.yes = true;
                decision.witness = candidates[i];
                decision.after = results[i];
                return decision;
            }
        }
    }

    // No candidate works; report the closest try.
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (closer_to_goal(instance.goal, results[i], results[best], decision.before))
            best = i;
    decision.yes = false;
    decision.after = results[best];
    decision.extremal = candidates[best];
    return decision;
}

bool ReductionVerification::ok() const {
    if (!structural.all_passed())
        return false;
    return structural_only ? true : agree.value_or(false);
}

ReductionVerification verify_reduction(std::string_view theorem, const CnfFormula& formula,
                                       int k, const std::optional<BigInt>& ell,
                                       const CountingStrategy& strategy) {
    ReductionVerification report;
    report.theorem = std::string(theorem);

    if (theorem == "thm1" || theorem == "thm3a" || theorem == "thm2") {
        report.sat_problem = "emajsat";
        report.sat = decide_emajsat(formula, k);
    } else if (theorem == "thm3bc_banzhaf" || theorem == "thm3bc_ss") {
        report.sat_problem = "eminsat";
        report.sat = decide_eminsat(formula, k);
    } else if (theorem == "thm3d_banzhaf" || theorem == "thm3d_ss") {
        if (!ell)
            throw InvalidArgumentError("maintain constructions require ell");
        report.sat_problem = "eexasat";
        report.sat = decide_eexasat(formula, k, *ell);
    } else {
        throw InvalidArgumentError("unknown theorem tag \"" + std::string(theorem) + "\"");
    }

    const ControlInstance instance = build_reduction(theorem, formula, k, ell);
    report.structural = validate_instance(instance);

    // Exhaustive control search is always possible at enumeration scale; an
    // explicitly requested sparse-DP engine is honored at any size (the
    // constructed games keep its state space on the band's feasibility
    // ridge, so even million-player instances finish).
    const int worst_case_players = instance.game.player_count() + instance.budget;
    if (worst_case_players <= strategy.auto_enumerate_max ||
        strategy.method == CountingMethod::SparseDp) {
        report.control = decide_control(instance, strategy);
        report.agree = (report.sat.yes == report.control->yes);
    } else {
        report.structural_only = true;
    }
    return report;
}

} // namespace wvg
