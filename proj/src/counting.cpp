#include "wvg/counting.hpp"

#include "wvg/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace wvg {

namespace {

CountingMethod resolve_method(const CountingStrategy& s, std::size_t players) {
    const int n = static_cast<int>(players);
    switch (s.method) {
    case CountingMethod::Enumerate:
        if (n > s.enumerate_player_cap)
            throw CapabilityError("Enumerate: " + std::to_string(n) + " players exceeds cap of " +
                                  std::to_string(s.enumerate_player_cap));
        return CountingMethod::Enumerate;
    case CountingMethod::MeetInTheMiddle:
        if (n > s.mitm_player_cap)
            throw CapabilityError("MeetInTheMiddle: " + std::to_string(n) +
                                  " players exceeds cap of " + std::to_string(s.mitm_player_cap));
        return CountingMethod::MeetInTheMiddle;
    case CountingMethod::SparseDp:
        return CountingMethod::SparseDp;
    case CountingMethod::Auto:
        if (n <= s.auto_enumerate_max)
            return CountingMethod::Enumerate;
        if (n <= s.auto_mitm_max)
            return CountingMethod::MeetInTheMiddle;
        return CountingMethod::SparseDp;
    }
    throw InvalidArgumentError("unknown counting method");
}

// ---------------------------------------------------------------------------
// Enumerate: depth-first subset walk. Subtrees whose reachable sum range
// falls entirely inside (or outside) the band are closed in one step, so the
// walk only descends along band boundaries. Exact by construction.

struct EnumU64 {
    const std::vector<std::uint64_t>& w;
    const std::vector<std::uint64_t>& suffix; // suffix[i] = w[i] + ... + w[n-1]
    std::uint64_t lo, hi;
    std::uint64_t count = 0;

    void walk(std::size_t i, std::uint64_t sum) {
        if (sum > hi)
            return;
        if (sum + suffix[i] < lo)
            return;
        if (sum >= lo && sum + suffix[i] <= hi) {
            count += std::uint64_t(1) << (w.size() - i);
            return;
        }
        // i < n here: otherwise one of the closures above fired.
        walk(i + 1, sum);
        walk(i + 1, sum + w[i]);
    }
};

struct EnumU64BySize {
    const std::vector<std::uint64_t>& w;
    const std::vector<std::uint64_t>& suffix;
    std::uint64_t lo, hi;
    std::vector<std::vector<std::uint64_t>>& choose; // choose[n][k]
    std::vector<std::uint64_t> counts;               // by picked-so-far size

    void walk(std::size_t i, std::uint64_t sum, int picked) {
        if (sum > hi)
            return;
        if (sum + suffix[i] < lo)
            return;
        const std::size_t rest = w.size() - i;
        if (sum >= lo && sum + suffix[i] <= hi) {
            for (std::size_t j = 0; j <= rest; ++j)
                counts[picked + j] += choose[rest][j];
            return;
        }
        walk(i + 1, sum, picked);
        walk(i + 1, sum + w[i], picked + 1);
    }
};

struct EnumBig {
    const std::vector<const BigInt*>& w;
    const std::vector<BigInt>& suffix;
    const BigInt& lo;
    const BigInt& hi;
    std::uint64_t count = 0;

    void walk(std::size_t i, const BigInt& sum) {
        if (sum > hi)
            return;
        if (sum + suffix[i] < lo)
            return;
        if (sum >= lo && sum + suffix[i] <= hi) {
            count += std::uint64_t(1) << (w.size() - i);
            return;
        }
        walk(i + 1, sum);
        walk(i + 1, sum + *w[i]);
    }
};

struct EnumBigBySize {
    const std::vector<const BigInt*>& w;
    const std::vector<BigInt>& suffix;
    const BigInt& lo;
    const BigInt& hi;
    std::vector<std::vector<std::uint64_t>>& choose;
    std::vector<std::uint64_t> counts;

    void walk(std::size_t i, const BigInt& sum, int picked) {
        if (sum > hi)
            return;
        if (sum + suffix[i] < lo)
            return;
        const std::size_t rest = w.size() - i;
        if (sum >= lo && sum + suffix[i] <= hi) {
            for (std::size_t j = 0; j <= rest; ++j)
                counts[picked + j] += choose[rest][j];
            return;
        }
        walk(i + 1, sum, picked);
        walk(i + 1, sum + *w[i], picked + 1);
    }
};

std::vector<std::vector<std::uint64_t>> pascal_table(std::size_t n) {
    std::vector<std::vector<std::uint64_t>> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1);
        for (std::size_t j = 1; j < i; ++j)
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

// ---------------------------------------------------------------------------
// Meet in the middle.

void half_sums_u64(const std::vector<std::uint64_t>& w, std::size_t b, std::size_t e,
                   std::vector<std::uint64_t>& out) {
    out.clear();
    out.reserve(std::size_t(1) << (e - b));
    out.push_back(0);
    for (std::size_t i = b; i < e; ++i) {
        const std::size_t sz = out.size();
        for (std::size_t j = 0; j < sz; ++j)
            out.push_back(out[j] + w[i]);
    }
    std::sort(out.begin(), out.end());
}

void half_sums_big(const std::vector<const BigInt*>& w, std::size_t b, std::size_t e,
                   std::vector<BigInt>& out) {
    out.clear();
    out.reserve(std::size_t(1) << (e - b));
    out.push_back(0);
    for (std::size_t i = b; i < e; ++i) {
        const std::size_t sz = out.size();
        for (std::size_t j = 0; j < sz; ++j)
            out.push_back(out[j] + *w[i]);
    }
    std::sort(out.begin(), out.end());
}

BigInt u128_to_bigint(unsigned __int128 v) {
    BigInt hi64(static_cast<std::uint64_t>(v >> 64));
    return (hi64 << 64) | BigInt(static_cast<std::uint64_t>(v));
}

BigInt join_band_big(const std::vector<BigInt>& left, const std::vector<BigInt>& right,
                     const BigInt& lo, const BigInt& hi) {
    unsigned __int128 count = 0;
    for (const BigInt& a : left) {
        if (a > hi)
            break; // both halves sorted ascending
        auto first = std::lower_bound(right.begin(), right.end(), lo - a);
        auto last = std::upper_bound(right.begin(), right.end(), hi - a);
        count += static_cast<std::uint64_t>(last - first);
    }
    return u128_to_bigint(count);
}

// Unsigned arithmetic needs saturation instead of `lo - a` going negative.
BigInt join_band_u64(const std::vector<std::uint64_t>& left,
                     const std::vector<std::uint64_t>& right, std::uint64_t lo,
                     std::uint64_t hi) {
    unsigned __int128 count = 0;
    for (std::uint64_t a : left) {
        if (a > hi)
            break; // sorted ascending
        const std::uint64_t l = (lo > a) ? lo - a : 0;
        const std::uint64_t h = hi - a;
        auto first = std::lower_bound(right.begin(), right.end(), l);
        auto last = std::upper_bound(right.begin(), right.end(), h);
        count += static_cast<std::uint64_t>(last - first);
    }
    return u128_to_bigint(count);
}

// (sum, size) half expansion for the stratified variant.
template <typename Sum>
void half_sums_sized(const std::vector<Sum>& values, std::size_t b, std::size_t e,
                     std::vector<std::pair<Sum, int>>& out) {
    out.clear();
    out.reserve(std::size_t(1) << (e - b));
    out.emplace_back(Sum(0), 0);
    for (std::size_t i = b; i < e; ++i) {
        const std::size_t sz = out.size();
        for (std::size_t j = 0; j < sz; ++j)
            out.emplace_back(out[j].first + values[i], out[j].second + 1);
    }
    std::sort(out.begin(), out.end());
}

// ---------------------------------------------------------------------------
// Sparse DP over (value, multiplicity) groups, sums pruned above the band.

struct WeightGroup {
    BigInt value;
    int multiplicity;
};

// Groups sorted by descending value: heavy rows go first, so the band prunes
// confine the state space to sums that can still complete into the band.
// Weights that share storage compare in O(1), which matters for games with
// millions of equal-weight filler players.
std::vector<WeightGroup> group_weights(std::span<const Weight> weights) {
    std::vector<const Weight*> ptrs;
    ptrs.reserve(weights.size());
    for (const Weight& w : weights)
        ptrs.push_back(&w);
    std::sort(ptrs.begin(), ptrs.end(), [](const Weight* a, const Weight* b) {
        if (shares_value(*a, *b))
            return false;
        return *a > *b;
    });
    std::vector<WeightGroup> groups;
    for (std::size_t i = 0; i < ptrs.size();) {
        std::size_t j = i;
        while (j < ptrs.size() && *ptrs[j] == *ptrs[i])
            ++j;
        groups.push_back({ptrs[i]->value(), static_cast<int>(j - i)});
        i = j;
    }
    return groups;
}

BigInt sparse_dp_band(std::span<const Weight> weights, const BigInt& lo, const BigInt& hi) {
    const std::vector<WeightGroup> groups = group_weights(weights);
    // remaining[i] = total weight of groups i..end; lets us drop states that
    // can no longer climb back into the band.
    std::vector<BigInt> remaining(groups.size() + 1, BigInt(0));
    for (std::size_t i = groups.size(); i-- > 0;)
        remaining[i] = remaining[i + 1] + groups[i].value * groups[i].multiplicity;

    std::map<BigInt, BigInt> dp;
    dp[0] = 1;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const WeightGroup& g = groups[gi];
        if (g.value == 0) {
            // Zero weights never move a sum; fold their subsets in directly.
            const BigInt mult = pow2(g.multiplicity);
            for (auto& [_, c] : dp)
                c *= mult;
            continue;
        }
        std::map<BigInt, BigInt> next;
        for (const auto& [sum, cnt] : dp) {
            BigInt shifted = sum;
            for (int j = 0; j <= g.multiplicity; ++j) {
                if (shifted > hi)
                    break;
                if (shifted + remaining[gi + 1] >= lo)
                    next[shifted] += cnt * binomial(g.multiplicity, j);
                shifted += g.value;
            }
        }
        dp.swap(next);
    }
    BigInt count = 0;
    for (auto it = dp.lower_bound(lo); it != dp.end() && it->first <= hi; ++it)
        count += it->second;
    return count;
}

PivotalCountBySize sparse_dp_band_by_size(std::span<const Weight> weights, const BigInt& lo,
                                          const BigInt& hi) {
    const std::vector<WeightGroup> groups = group_weights(weights);
    std::vector<BigInt> remaining(groups.size() + 1, BigInt(0));
    for (std::size_t i = groups.size(); i-- > 0;)
        remaining[i] = remaining[i + 1] + groups[i].value * groups[i].multiplicity;

    // dp[sum] = counts by subset size.
    std::map<BigInt, std::map<int, BigInt>> dp;
    dp[0][0] = 1;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const WeightGroup& g = groups[gi];
        std::map<BigInt, std::map<int, BigInt>> next;
        for (const auto& [sum, sizes] : dp) {
            BigInt shifted = sum;
            for (int j = 0; j <= g.multiplicity; ++j) {
                if (shifted > hi)
                    break;
                if (shifted + remaining[gi + 1] >= lo) {
                    const BigInt ways = binomial(g.multiplicity, j);
                    auto& slot = next[shifted];
                    for (const auto& [sz, cnt] : sizes)
                        slot[sz + j] += cnt * ways;
                }
                shifted += g.value;
            }
        }
        dp.swap(next);
    }
    PivotalCountBySize out;
    for (auto it = dp.lower_bound(lo); it != dp.end() && it->first <= hi; ++it)
        for (const auto& [sz, cnt] : it->second)
            if (cnt != 0)
                out.by_size[sz] += cnt;
    return out;
}

// ---------------------------------------------------------------------------

struct Prepared {
    std::vector<const BigInt*> values;
    BigInt total;
    bool fits_u64 = false;
    std::vector<std::uint64_t> values_u64;
};

Prepared prepare(std::span<const Weight> weights) {
    Prepared p;
    p.values.reserve(weights.size());
    p.total = 0;
    for (const Weight& w : weights) {
        p.values.push_back(&w.value());
        p.total += w.value();
    }
    p.fits_u64 = p.total <= BigInt(std::numeric_limits<std::uint64_t>::max());
    if (p.fits_u64) {
        p.values_u64.reserve(weights.size());
        for (const BigInt* v : p.values)
            p.values_u64.push_back(v->convert_to<std::uint64_t>());
    }
    return p;
}

} // namespace

BigInt PivotalCountBySize::total() const {
    BigInt t = 0;
    for (const auto& [_, c] : by_size)
        t += c;
    return t;
}

BigInt count_subsets_in_band(std::span<const Weight> weights, const BigInt& lower,
                             const BigInt& upper, const CountingStrategy& strategy) {
    if (lower > upper)
        throw InvalidArgumentError("count_subsets_in_band: lower > upper");
    const CountingMethod method = resolve_method(strategy, weights.size());

    Prepared p = prepare(weights);
    const BigInt lo = lower < 0 ? BigInt(0) : lower;
    const BigInt hi = upper > p.total ? p.total : upper;
    if (lo > hi)
        return 0;

    switch (method) {
    case CountingMethod::Enumerate: {
        if (p.fits_u64) {
            const auto n = p.values_u64.size();
            std::vector<std::uint64_t> suffix(n + 1, 0);
            for (std::size_t i = n; i-- > 0;)
                suffix[i] = suffix[i + 1] + p.values_u64[i];
            EnumU64 e{p.values_u64, suffix, lo.convert_to<std::uint64_t>(),
                      hi.convert_to<std::uint64_t>()};
            e.walk(0, 0);
            return BigInt(e.count);
        }
        const auto n = p.values.size();
        std::vector<BigInt> suffix(n + 1, BigInt(0));
        for (std::size_t i = n; i-- > 0;)
            suffix[i] = suffix[i + 1] + *p.values[i];
        EnumBig e{p.values, suffix, lo, hi};
        e.walk(0, BigInt(0));
        return BigInt(e.count);
    }
    case CountingMethod::MeetInTheMiddle: {
        const std::size_t n = weights.size();
        const std::size_t mid = n / 2;
        if (p.fits_u64) {
            std::vector<std::uint64_t> left, right;
            half_sums_u64(p.values_u64, 0, mid, left);
            half_sums_u64(p.values_u64, mid, n, right);
            return join_band_u64(left, right, lo.convert_to<std::uint64_t>(),
                                 hi.convert_to<std::uint64_t>());
        }
        std::vector<BigInt> left, right;
        half_sums_big(p.values, 0, mid, left);
        half_sums_big(p.values, mid, n, right);
        return join_band_big(left, right, lo, hi);
    }
    case CountingMethod::SparseDp:
        return sparse_dp_band(weights, lo, hi);
    default:
        throw InvalidArgumentError("unreachable counting method");
    }
}

BigInt count_subsets_with_sum(std::span<const Weight> weights, const BigInt& target,
                              const CountingStrategy& strategy) {
    return count_subsets_in_band(weights, target, target, strategy);
}

PivotalCountBySize count_subsets_in_band_by_size(std::span<const Weight> weights,
                                                 const BigInt& lower, const BigInt& upper,
                                                 const CountingStrategy& strategy) {
    if (lower > upper)
        throw InvalidArgumentError("count_subsets_in_band_by_size: lower > upper");
    const CountingMethod method = resolve_method(strategy, weights.size());

    Prepared p = prepare(weights);
    const BigInt lo = lower < 0 ? BigInt(0) : lower;
    const BigInt hi = upper > p.total ? p.total : upper;
    PivotalCountBySize out;
    if (lo > hi)
        return out;

    switch (method) {
    case CountingMethod::Enumerate: {
        const std::size_t n = weights.size();
        auto choose = pascal_table(n);
        std::vector<std::uint64_t> counts;
        if (p.fits_u64) {
            std::vector<std::uint64_t> suffix(n + 1, 0);
            for (std::size_t i = n; i-- > 0;)
                suffix[i] = suffix[i + 1] + p.values_u64[i];
            EnumU64BySize e{p.values_u64, suffix, lo.convert_to<std::uint64_t>(),
                            hi.convert_to<std::uint64_t>(), choose,
                            std::vector<std::uint64_t>(n + 1, 0)};
            e.walk(0, 0, 0);
            counts = std::move(e.counts);
        } else {
            std::vector<BigInt> suffix(n + 1, BigInt(0));
            for (std::size_t i = n; i-- > 0;)
                suffix[i] = suffix[i + 1] + *p.values[i];
            EnumBigBySize e{p.values, suffix, lo, hi, choose,
                            std::vector<std::uint64_t>(n + 1, 0)};
            e.walk(0, BigInt(0), 0);
            counts = std::move(e.counts);
        }
        for (std::size_t s = 0; s < counts.size(); ++s)
            if (counts[s] != 0)
                out.by_size[static_cast<int>(s)] = BigInt(counts[s]);
        return out;
    }
    case CountingMethod::MeetInTheMiddle: {
        const std::size_t n = weights.size();
        const std::size_t mid = n / 2;
        if (p.fits_u64) {
            std::vector<std::pair<std::uint64_t, int>> left, right;
            half_sums_sized(p.values_u64, 0, mid, left);
            half_sums_sized(p.values_u64, mid, n, right);
            // Per-size sorted sum lists on the right.
            std::vector<std::vector<std::uint64_t>> by_sz(n - mid + 1);
            for (const auto& [s, sz] : right)
                by_sz[sz].push_back(s);
            for (auto& v : by_sz)
                std::sort(v.begin(), v.end());
            const std::uint64_t l64 = lo.convert_to<std::uint64_t>();
            const std::uint64_t h64 = hi.convert_to<std::uint64_t>();
            std::vector<std::uint64_t> counts(n + 1, 0);
            for (const auto& [a, sa] : left) {
                if (a > h64)
                    continue;
                const std::uint64_t l = (l64 > a) ? l64 - a : 0;
                const std::uint64_t h = h64 - a;
                for (std::size_t sb = 0; sb < by_sz.size(); ++sb) {
                    const auto& v = by_sz[sb];
                    auto first = std::lower_bound(v.begin(), v.end(), l);
                    auto last = std::upper_bound(v.begin(), v.end(), h);
                    counts[sa + sb] += static_cast<std::uint64_t>(last - first);
                }
            }
            for (std::size_t s = 0; s < counts.size(); ++s)
                if (counts[s] != 0)
                    out.by_size[static_cast<int>(s)] = BigInt(counts[s]);
            return out;
        }
        std::vector<BigInt> vals;
        vals.reserve(n);
        for (const BigInt* v : p.values)
            vals.push_back(*v);
        std::vector<std::pair<BigInt, int>> left, right;
        half_sums_sized(vals, 0, mid, left);
        half_sums_sized(vals, mid, n, right);
        std::vector<std::vector<BigInt>> by_sz(n - mid + 1);
        for (const auto& [s, sz] : right)
            by_sz[sz].push_back(s);
        for (auto& v : by_sz)
            std::sort(v.begin(), v.end());
        std::vector<std::uint64_t> counts(n + 1, 0);
        for (const auto& [a, sa] : left) {
            if (a > hi)
                continue;
            for (std::size_t sb = 0; sb < by_sz.size(); ++sb) {
                const auto& v = by_sz[sb];
                auto first = std::lower_bound(v.begin(), v.end(), lo - a);
                auto last = std::upper_bound(v.begin(), v.end(), hi - a);
                counts[sa + sb] += static_cast<std::uint64_t>(last - first);
            }
        }
        for (std::size_t s = 0; s < counts.size(); ++s)
            if (counts[s] != 0)
                out.by_size[static_cast<int>(s)] = BigInt(counts[s]);
        return out;
    }
    case CountingMethod::SparseDp:
        return sparse_dp_band_by_size(weights, lo, hi);
    default:
        throw InvalidArgumentError("unreachable counting method");
    }
}

} // namespace wvg
