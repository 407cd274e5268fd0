#pragma once

#include "wvg/cnf.hpp"
#include "wvg/game.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wvg {

enum class ControlGoal { Increase, Decrease, Nonincrease, Nondecrease, Maintain };
enum class IndexKind { Banzhaf, ShapleyShubik };

std::string to_string(ControlGoal goal);
std::string to_string(IndexKind kind);
ControlGoal goal_from_string(std::string_view s);
IndexKind index_kind_from_string(std::string_view s);

/// Whether the goal requires at least one player to actually be added.
/// Increase/Decrease cannot succeed with an empty addition anyway; the
/// remaining three forbid it by definition.
bool requires_nonempty_addition(ControlGoal goal);

using ConstantValue = std::variant<BigInt, BigRat, std::vector<BigInt>>;

/// Named exact scalars and integer sequences recorded by an instance
/// builder: every derived constant of the construction, in insertion order.
class ReductionConstants {
public:
    ReductionConstants() = default;
    explicit ReductionConstants(std::string theorem) : theorem_(std::move(theorem)) {}

    const std::string& theorem() const { return theorem_; }

    void put(const std::string& name, BigInt v);
    void put(const std::string& name, int v) { put(name, BigInt(v)); }
    void put(const std::string& name, BigRat v);
    void put(const std::string& name, std::vector<BigInt> v);

    bool has(std::string_view name) const;
    const BigInt& get_int(std::string_view name) const;
    BigRat get_rat(std::string_view name) const; // integers coerce
    const std::vector<BigInt>& get_seq(std::string_view name) const;

    const std::vector<std::pair<std::string, ConstantValue>>& entries() const {
        return entries_;
    }

private:
    const ConstantValue& require(std::string_view name) const;
    std::string theorem_;
    std::vector<std::pair<std::string, ConstantValue>> entries_;
};

/// A control-by-adding-players instance: the game, the pool of addable
/// players, the distinguished player, the addition budget, and the goal,
/// plus the builder's bookkeeping (groups and constants).
struct ControlInstance {
    Game game;
    std::vector<Weight> addable;
    int distinguished = 1; // 1-based player index
    int budget = 0;        // at most this many players may be added
    ControlGoal goal = ControlGoal::Increase;
    IndexKind index_kind = IndexKind::Banzhaf;
    // Partition of 1..player_count into named groups, in construction order.
    std::vector<std::pair<std::string, std::vector<int>>> groups;
    ReductionConstants constants;

    const std::vector<int>* group(std::string_view label) const;
};

// The seven instance constructions. Tags recorded in constants.theorem():
//   thm1            increase Penrose-Banzhaf        (E-MajSAT, 1 <= k < n)
//   thm3a           nondecrease Penrose-Banzhaf     (E-MajSAT, 1 <= k < n)
//   thm2            increase/nondecrease Shapley    (E-MajSAT, 1 <= k < n)
//   thm3bc_banzhaf  decrease/nonincrease Banzhaf    (E-MinSAT, 2 <= k < n)
//   thm3bc_ss       decrease/nonincrease Shapley    (E-MinSAT, 3 <= k < n)
//   thm3d_banzhaf   maintain Banzhaf                (E-ExaSAT, 1 <= k <= n)
//   thm3d_ss        maintain Shapley                (E-ExaSAT, 1 <= k <= n, n >= 3)

ControlInstance reduce_increase_banzhaf(const CnfFormula& formula, int k);
ControlInstance reduce_nondecrease_banzhaf(const CnfFormula& formula, int k);
ControlInstance reduce_increase_nondecrease_ss(const CnfFormula& formula, int k,
                                               ControlGoal goal);
ControlInstance reduce_decrease_nonincrease_banzhaf(const CnfFormula& formula, int k,
                                                    ControlGoal goal);
ControlInstance reduce_decrease_nonincrease_ss(const CnfFormula& formula, int k,
                                               ControlGoal goal);
ControlInstance reduce_maintain_banzhaf(const CnfFormula& formula, int k, const BigInt& ell);
ControlInstance reduce_maintain_ss(const CnfFormula& formula, int k, const BigInt& ell);

/// Builds the instance for `theorem` (see the tag table above) with its
/// default goal. ell is consumed by the maintain constructions only.
ControlInstance build_reduction(std::string_view theorem, const CnfFormula& formula, int k,
                                const std::optional<BigInt>& ell = std::nullopt,
                                const std::optional<ControlGoal>& goal = std::nullopt);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct InstanceValidation {
    std::vector<CheckResult> checks;

    bool all_passed() const;
    int failure_count() const;
    std::vector<std::string> failures() const;
};

/// Audits an instance against its own recorded constants: group cardinality
/// and weight formulas, total player count, quota parity, weight positivity,
/// coalition-size identities, k' bounds, residual signs, and decomposition
/// round-trips. Failures are reported, never thrown.
InstanceValidation validate_instance(const ControlInstance& instance);

} // namespace wvg
