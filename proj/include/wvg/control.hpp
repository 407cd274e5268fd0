#pragma once

#include "wvg/cnf.hpp"
#include "wvg/counting.hpp"
#include "wvg/game.hpp"
#include "wvg/reductions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wvg {

struct ControlDecision {
    bool yes = false;
    /// 1-based positions into the addable list; present iff yes.
    std::optional<std::vector<int>> witness;
    RationalIndex before; // index of the distinguished player in the base game
    /// Index after adding the witness, or after the extremal candidate when
    /// the answer is no (largest / smallest / closest, by goal).
    RationalIndex after;
    std::optional<std::vector<int>> extremal; // candidate reported on "no"
};

/// Exhaustive decision of the control question: tries every nonempty
/// M' with |M'| <= budget in lexicographic position order and compares
/// exact indices per the goal relation. The witness, if any, is the
/// lexicographically first success.
ControlDecision decide_control(const ControlInstance& instance,
                               const CountingStrategy& strategy = {});

/// End-to-end check of one construction on one input: the quantified-SAT
/// side versus the control side of the built instance, plus the structural
/// audit. When the instance is too large for exhaustive control search the
/// control side is skipped and `structural_only` is set.
struct ReductionVerification {
    std::string theorem;
    std::string sat_problem; // emajsat | eminsat | eexasat
    SatDecision sat;
    std::optional<ControlDecision> control;
    InstanceValidation structural;
    bool structural_only = false;
    std::optional<bool> agree; // sat.yes == control->yes; absent if downgraded

    bool ok() const;
};

ReductionVerification verify_reduction(std::string_view theorem, const CnfFormula& formula,
                                       int k, const std::optional<BigInt>& ell = std::nullopt,
                                       const CountingStrategy& strategy = {});

} // namespace wvg
