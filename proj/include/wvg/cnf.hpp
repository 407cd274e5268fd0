#pragma once

#include "wvg/bigint.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wvg {

/// CNF formula over variables 1..n. Structural requirements enforced at
/// construction: no empty clause, no clause with a variable in both
/// polarities, and every variable occurs in at least one clause.
class CnfFormula {
public:
    /// Clauses are lists of nonzero DIMACS literals; duplicates inside a
    /// clause are collapsed. Throws ParseError on invariant violations.
    static CnfFormula create(int num_vars, std::vector<std::vector<int>> clauses);

    int num_vars() const { return num_vars_; }
    int num_clauses() const { return static_cast<int>(clauses_.size()); }
    const std::vector<std::vector<int>>& clauses() const { return clauses_; }

    /// 1-based indices of clauses containing the literal (var if positive,
    /// else its negation).
    std::vector<int> clauses_with_literal(int var, bool positive) const;

    bool evaluate(const std::vector<bool>& assignment) const;

    std::string to_dimacs() const;

    bool operator==(const CnfFormula&) const = default;

private:
    CnfFormula() = default;
    int num_vars_ = 0;
    std::vector<std::vector<int>> clauses_; // literals sorted by (var, polarity)
};

CnfFormula parse_dimacs(std::string_view text);

/// Values for the variable prefix x_1..x_k; values[i] belongs to x_{i+1}.
struct PartialAssignment {
    std::vector<bool> values;

    int length() const { return static_cast<int>(values.size()); }
    bool operator==(const PartialAssignment&) const = default;
};

/// Number of total assignments extending `prefix` that satisfy the formula.
/// Brute force; capped at kMaxBruteForceVars variables.
BigInt count_models(const CnfFormula& formula, const PartialAssignment& prefix = {});

inline constexpr int kMaxBruteForceVars = 30;

struct SatDecision {
    bool yes = false;
    std::optional<PartialAssignment> witness; // present iff yes

    bool operator==(const SatDecision&) const = default;
};

/// Is there an assignment to x_1..x_k with strictly more than 2^(n-k-1)
/// satisfying extensions?
SatDecision decide_emajsat(const CnfFormula& formula, int k);

/// ... with at most 2^(n-k-1) satisfying extensions?
SatDecision decide_eminsat(const CnfFormula& formula, int k);

/// ... with exactly `ell` satisfying extensions?
SatDecision decide_eexasat(const CnfFormula& formula, int k, const BigInt& ell);

/// Every formula with exactly `n` variables and 1..max_m clauses that passes
/// the structural invariants, deduplicated up to clause order, in a fixed
/// canonical order.
std::vector<CnfFormula> enumerate_formulas(int n, int max_m);

/// Deterministic sample of invariant-respecting formulas with exactly `n`
/// variables and `m` clauses (for parameter ranges too large to enumerate).
std::vector<CnfFormula> sample_formulas(int n, int m, int count, unsigned seed);

} // namespace wvg
