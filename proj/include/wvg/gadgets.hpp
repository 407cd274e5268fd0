#pragma once

#include "wvg/bigint.hpp"
#include "wvg/cnf.hpp"
#include "wvg/weight.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wvg {

/// One of the four digit-separated weight systems derived from a CNF formula.
/// Players come in four blocks: M (a_1..a_k, b_1..b_k), A (a_{k+1}..a_n,
/// b_{k+1}..b_n), C (clause counters c_{j,s}), and, for sets 2 and 4, C'
/// (secondary counters c'_{j,s}). Subsets of M+A+C(+C') whose weights sum to
/// q_target correspond one-to-one to satisfying assignments of the formula.
struct GadgetWeights {
    int set_id = 0; // 1..4
    int n = 0;      // variables
    int m = 0;      // clauses
    int k = 0;      // prefix split: a_i/b_i with i <= k land in M
    int r = 0;      // ceil(log2 n) - 1; counters use powers 2^0..2^r
    int t = 0;      // base-10 digit stride of the primary counters
    int t_prime = 0; // secondary stride (sets 2, 4; otherwise 0)

    std::vector<Weight> w_m, w_a, w_c, w_c_prime;
    BigInt q_target;

    bool has_c_prime() const { return set_id == 2 || set_id == 4; }
    int universe_size() const;

    // Universe positions are 1-based in block order M, A, C, C'.
    const Weight& universe_weight(int pos) const;
    std::string universe_label(int pos) const; // "a_1", "b_1", "c_1_0", "cp_1_0"
    int pos_a(int var) const;
    int pos_b(int var) const;
    int pos_c(int clause, int s) const;
    int pos_c_prime(int clause, int s) const;
};

/// Builds the weight system for `set_id`, picking the smallest exponents t
/// (and t' for sets 2 and 4) that satisfy the digit-separation bounds and any
/// caller-supplied extra bounds (10^t > min_pow_t, 10^t' > min_pow_t_prime).
///
/// Requires n >= 2 and 1 <= k < n; `allow_full_prefix` additionally admits
/// k == n (the A block is then empty), which the maintain constructions need.
GadgetWeights build_weight_set(const CnfFormula& formula, int k, int set_id,
                               const std::optional<BigInt>& min_pow_t = std::nullopt,
                               const std::optional<BigInt>& min_pow_t_prime = std::nullopt,
                               bool allow_full_prefix = false);

/// Minimal exponents (t, t') for the given weight-set shape and extra lower
/// bounds; t' is 0 for sets 1 and 3. Pure in (set_id, n, m, bounds).
std::pair<int, int> gadget_exponents(int set_id, int n, int m,
                                     const std::optional<BigInt>& min_pow_t = std::nullopt,
                                     const std::optional<BigInt>& min_pow_t_prime = std::nullopt);

/// The subset-sum target q of the weight set, from shape and exponents alone.
BigInt gadget_q_target(int set_id, int n, int m, int t, int t_prime);

/// The unique q_target-weight coalition encoding `assignment` (1-based
/// universe positions, sorted), or nullopt if the assignment does not satisfy
/// the formula.
std::optional<std::vector<int>> assignment_to_coalition(const GadgetWeights& gadget,
                                                        const std::vector<bool>& assignment);

/// Inverse direction: reads the assignment off a coalition of total weight
/// q_target (x_i is true iff the a_i player is present). Throws
/// InvalidArgumentError if the total weight differs from q_target.
std::vector<bool> coalition_to_assignment(const GadgetWeights& gadget,
                                          const std::vector<int>& coalition);

struct BijectionReport {
    int set_id = 0;
    int k = 0;
    BigInt coalition_count; // subsets of the universe with weight q_target
    BigInt model_count;     // satisfying assignments of the formula
    bool counts_equal = false;
    bool round_trips_ok = false;
    std::vector<std::string> failures;

    bool ok() const { return counts_equal && round_trips_ok; }
};

/// Exhaustively checks the assignment/coalition correspondence for one
/// formula, prefix split, and weight set. Universe capped at `player_cap`.
BijectionReport verify_bijection(const CnfFormula& formula, int k, int set_id,
                                 int player_cap = 26);

} // namespace wvg
