#pragma once

#include "wvg/bigint.hpp"
#include "wvg/weight.hpp"

#include <map>
#include <span>

namespace wvg {

enum class CountingMethod {
    Auto,           ///< pick by player count (see CountingStrategy thresholds)
    Enumerate,      ///< exhaustive subset walk with sum bounds pruning
    MeetInTheMiddle,///< split halves, sorted half-sum join
    SparseDp,       ///< sum-keyed dynamic programming over grouped duplicate weights
};

struct CountingStrategy {
    CountingMethod method = CountingMethod::Auto;

    // Auto selection thresholds (player counts).
    int auto_enumerate_max = 26;
    int auto_mitm_max = 54;

    // Hard caps for explicitly requested engines; exceeding one raises
    // CapabilityError. 32 players keeps the subset space within 2^32.
    int enumerate_player_cap = 32;
    int mitm_player_cap = 64;

    // Worker hint for callers that evaluate independent candidates; the
    // counting kernels themselves are single-threaded and deterministic.
    int threads = 1;
};

/// Exact subset counts keyed by subset size; absent keys mean zero.
struct PivotalCountBySize {
    std::map<int, BigInt> by_size;

    BigInt total() const;
    bool operator==(const PivotalCountBySize&) const = default;
};

/// Number of index-subsets of `weights` whose values sum to exactly `target`.
BigInt count_subsets_with_sum(std::span<const Weight> weights, const BigInt& target,
                              const CountingStrategy& strategy = {});

/// Number of index-subsets with lower <= sum <= upper. Throws
/// InvalidArgumentError if lower > upper.
BigInt count_subsets_in_band(std::span<const Weight> weights, const BigInt& lower,
                             const BigInt& upper, const CountingStrategy& strategy = {});

/// Per-size counts of index-subsets with lower <= sum <= upper.
PivotalCountBySize count_subsets_in_band_by_size(std::span<const Weight> weights,
                                                 const BigInt& lower, const BigInt& upper,
                                                 const CountingStrategy& strategy = {});

} // namespace wvg
