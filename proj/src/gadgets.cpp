#include "wvg/gadgets.hpp"

#include "wvg/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

namespace wvg {

namespace {

// Smallest exponent e >= 1 with 10^e > bound: the decimal digit count of
// bound (10^(digits-1) <= bound < 10^digits).
int min_exponent_exceeding(const BigInt& bound) {
    if (bound < 1)
        return 1;
    return static_cast<int>(bound.str().size());
}

BigInt sum_of(const std::vector<Weight>& ws) {
    BigInt t = 0;
    for (const Weight& w : ws)
        t += w.value();
    return t;
}

} // namespace

int GadgetWeights::universe_size() const {
    return static_cast<int>(w_m.size() + w_a.size() + w_c.size() + w_c_prime.size());
}

const Weight& GadgetWeights::universe_weight(int pos) const {
    if (pos < 1 || pos > universe_size())
        throw InvalidArgumentError("gadget universe position out of range");
    std::size_t i = static_cast<std::size_t>(pos - 1);
    if (i < w_m.size())
        return w_m[i];
    i -= w_m.size();
    if (i < w_a.size())
        return w_a[i];
    i -= w_a.size();
    if (i < w_c.size())
        return w_c[i];
    return w_c_prime[i - w_c.size()];
}

std::string GadgetWeights::universe_label(int pos) const {
    if (pos < 1 || pos > universe_size())
        throw InvalidArgumentError("gadget universe position out of range");
    int i = pos - 1;
    if (i < k)
        return "a_" + std::to_string(i + 1);
    i -= k;
    if (i < k)
        return "b_" + std::to_string(i + 1);
    i -= k;
    if (i < n - k)
        return "a_" + std::to_string(k + i + 1);
    i -= (n - k);
    if (i < n - k)
        return "b_" + std::to_string(k + i + 1);
    i -= (n - k);
    if (i < m * (r + 1))
        return "c_" + std::to_string(i / (r + 1) + 1) + "_" + std::to_string(i % (r + 1));
    i -= m * (r + 1);
    return "cp_" + std::to_string(i / (r + 1) + 1) + "_" + std::to_string(i % (r + 1));
}

int GadgetWeights::pos_a(int var) const {
    if (var < 1 || var > n)
        throw InvalidArgumentError("variable index out of range");
    return var <= k ? var : 2 * k + (var - k);
}

int GadgetWeights::pos_b(int var) const {
    if (var < 1 || var > n)
        throw InvalidArgumentError("variable index out of range");
    return var <= k ? k + var : 2 * k + (n - k) + (var - k);
}

int GadgetWeights::pos_c(int clause, int s) const {
    if (clause < 1 || clause > m || s < 0 || s > r)
        throw InvalidArgumentError("counter index out of range");
    return 2 * n + (clause - 1) * (r + 1) + s + 1;
}

int GadgetWeights::pos_c_prime(int clause, int s) const {
    if (!has_c_prime())
        throw InvalidArgumentError("weight set has no C' block");
    if (clause < 1 || clause > m || s < 0 || s > r)
        throw InvalidArgumentError("counter index out of range");
    return 2 * n + m * (r + 1) + (clause - 1) * (r + 1) + s + 1;
}

std::pair<int, int> gadget_exponents(int set_id, int n, int m,
                                     const std::optional<BigInt>& min_pow_t,
                                     const std::optional<BigInt>& min_pow_t_prime) {
    if (set_id < 1 || set_id > 4)
        throw InvalidArgumentError("set_id must be 1..4");
    if (n < 2 || m < 1)
        throw InvalidArgumentError("weight sets need n >= 2 and m >= 1");
    const int c = ceil_log2(BigInt(n));
    const BigInt sep = pow2(c + 1);
    const bool prime = (set_id == 2 || set_id == 4);
    if (!prime) {
        BigInt bound_t = sep;
        if (min_pow_t && *min_pow_t > bound_t)
            bound_t = *min_pow_t;
        return {min_exponent_exceeding(bound_t), 0};
    }
    BigInt bound_tp = sep;
    if (min_pow_t_prime && *min_pow_t_prime > bound_tp)
        bound_tp = *min_pow_t_prime;
    const int tp = min_exponent_exceeding(bound_tp);
    BigInt tail = 0;
    for (int l = 1; l <= m; ++l)
        tail += pow10(l * tp);
    BigInt bound_t = pow10(tp) + sep * tail;
    if (min_pow_t && *min_pow_t > bound_t)
        bound_t = *min_pow_t;
    return {min_exponent_exceeding(bound_t), tp};
}

BigInt gadget_q_target(int set_id, int n, int m, int t, int t_prime) {
    const int c = ceil_log2(BigInt(n));
    const bool prime = (set_id == 2 || set_id == 4);
    const bool shifted = (set_id == 3 || set_id == 4);
    BigInt q = 0;
    for (int i = 1; i <= n; ++i)
        q += pow10(t * (m + 1) + (shifted ? 2 * i : i));
    if (shifted)
        q += n;
    for (int j = 1; j <= m; ++j)
        q += pow2(c) * pow10(t * j);
    if (prime)
        for (int j = 1; j <= m; ++j)
            q += (pow2(c) - 1) * pow10(t_prime * j);
    return q;
}

GadgetWeights build_weight_set(const CnfFormula& formula, int k, int set_id,
                               const std::optional<BigInt>& min_pow_t,
                               const std::optional<BigInt>& min_pow_t_prime,
                               bool allow_full_prefix) {
    if (set_id < 1 || set_id > 4)
        throw InvalidArgumentError("set_id must be 1..4");
    const int n = formula.num_vars();
    const int m = formula.num_clauses();
    if (n < 2)
        throw InvalidArgumentError("weight sets need n >= 2");
    const int k_max = allow_full_prefix ? n : n - 1;
    if (k < 1 || k > k_max)
        throw InvalidArgumentError("k = " + std::to_string(k) + " violates 1 <= k " +
                                   (allow_full_prefix ? "<= n" : "< n") +
                                   " for n = " + std::to_string(n));

    GadgetWeights g;
    g.set_id = set_id;
    g.n = n;
    g.m = m;
    g.k = k;
    const int c = ceil_log2(BigInt(n));
    g.r = c - 1;
    const bool prime = (set_id == 2 || set_id == 4);
    const bool shifted = (set_id == 3 || set_id == 4); // 1 + 10^(t(m+1)+2i) variants

    std::tie(g.t, g.t_prime) = gadget_exponents(set_id, n, m, min_pow_t, min_pow_t_prime);

    auto level = [&](int i) { // exponent of the per-variable marker digit
        return g.t * (m + 1) + (shifted ? 2 * i : i);
    };
    auto variable_weight = [&](int i, bool positive) {
        BigInt w = pow10(level(i));
        if (shifted)
            w += 1;
        for (int j : formula.clauses_with_literal(i, positive))
            w += pow10(g.t * j);
        return Weight(std::move(w));
    };

    for (int i = 1; i <= k; ++i)
        g.w_m.push_back(variable_weight(i, true));
    for (int i = 1; i <= k; ++i)
        g.w_m.push_back(variable_weight(i, false));
    for (int i = k + 1; i <= n; ++i)
        g.w_a.push_back(variable_weight(i, true));
    for (int i = k + 1; i <= n; ++i)
        g.w_a.push_back(variable_weight(i, false));

    for (int j = 1; j <= m; ++j)
        for (int s = 0; s <= g.r; ++s) {
            BigInt w = pow2(s) * pow10(g.t * j);
            if (prime)
                w += pow2(s) * pow10(g.t_prime * j);
            g.w_c.push_back(Weight(std::move(w)));
        }
    if (prime)
        for (int j = 1; j <= m; ++j)
            for (int s = 0; s <= g.r; ++s)
                g.w_c_prime.push_back(Weight(pow2(s) * pow10(g.t_prime * j)));

    g.q_target = gadget_q_target(set_id, n, m, g.t, g.t_prime);

    // Re-check the separation chains the construction relies on instead of
    // trusting the derivation.
    const BigInt w_c_total = sum_of(g.w_c);
    if (!(w_c_total + pow10(g.t) < pow10(g.t * (m + 1) + 1)))
        throw InfeasibleError("weight set: counter block overflows the variable marker digits");
    if (prime) {
        const BigInt w_cp_total = sum_of(g.w_c_prime);
        if (!(w_cp_total + pow10(g.t_prime) < pow10(g.t)))
            throw InfeasibleError("weight set: secondary counters overflow the primary stride");
    }
    for (int j = 2; j <= n; ++j) {
        BigInt lower = pow10(g.t * (m + 1) + 1);
        for (int l = 1; l < j; ++l) {
            lower += g.universe_weight(g.pos_a(l)).value();
            lower += g.universe_weight(g.pos_b(l)).value();
            if (shifted)
                lower += 9 * pow10(level(l));
        }
        if (!(lower < pow10(level(j))))
            throw InfeasibleError("weight set: variable marker digits not separated at level " +
                                  std::to_string(j));
    }

    return g;
}

namespace {

// Decimal digit block of v: (v / 10^low) mod 10^width.
BigInt digit_block(const BigInt& v, int low, int width) {
    return (v / pow10(low)) % pow10(width);
}

// Per-clause hit counts p_j of the chosen variable players, read off the
// digit blocks of their weight sum. p_j >= 1 for all j iff the underlying
// assignment satisfies the formula.
std::vector<int> clause_hits(const GadgetWeights& g, const BigInt& chosen_variable_total) {
    std::vector<int> p(static_cast<std::size_t>(g.m) + 1, 0);
    for (int j = 1; j <= g.m; ++j)
        p[static_cast<std::size_t>(j)] =
            digit_block(chosen_variable_total, g.t * j, g.t).convert_to<int>();
    return p;
}

} // namespace

std::optional<std::vector<int>> assignment_to_coalition(const GadgetWeights& gadget,
                                                        const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != gadget.n)
        throw InvalidArgumentError("assignment must cover all variables");
    std::vector<int> coalition;
    BigInt variable_total = 0;
    for (int i = 1; i <= gadget.n; ++i) {
        const bool value = assignment[static_cast<std::size_t>(i - 1)];
        const int pos = value ? gadget.pos_a(i) : gadget.pos_b(i);
        coalition.push_back(pos);
        variable_total += gadget.universe_weight(pos).value();
    }

    const std::vector<int> hits = clause_hits(gadget, variable_total);
    const BigInt full = pow2(gadget.r + 1); // 2^ceil(log2 n)
    for (int j = 1; j <= gadget.m; ++j) {
        const int p_j = hits[static_cast<std::size_t>(j)];
        if (p_j == 0)
            return std::nullopt; // clause j unsatisfied
        const BigInt c_need = full - p_j;
        for (int s = 0; s <= gadget.r; ++s)
            if (boost::multiprecision::bit_test(c_need, static_cast<unsigned>(s)))
                coalition.push_back(gadget.pos_c(j, s));
        if (gadget.has_c_prime()) {
            const BigInt cp_need = BigInt(p_j - 1);
            for (int s = 0; s <= gadget.r; ++s)
                if (boost::multiprecision::bit_test(cp_need, static_cast<unsigned>(s)))
                    coalition.push_back(gadget.pos_c_prime(j, s));
        }
    }

    std::sort(coalition.begin(), coalition.end());
    BigInt total = 0;
    for (int pos : coalition)
        total += gadget.universe_weight(pos).value();
    if (total != gadget.q_target)
        throw Error("gadget internal error: encoded coalition misses q_target");
    return coalition;
}

std::vector<bool> coalition_to_assignment(const GadgetWeights& gadget,
                                          const std::vector<int>& coalition) {
    BigInt total = 0;
    for (int pos : coalition)
        total += gadget.universe_weight(pos).value();
    if (total != gadget.q_target)
        throw InvalidArgumentError("not a gadget coalition: total weight " + total.str() +
                                   " != q_target " + gadget.q_target.str());

    std::vector<bool> in_set(static_cast<std::size_t>(gadget.universe_size()) + 1, false);
    for (int pos : coalition)
        in_set[static_cast<std::size_t>(pos)] = true;

    std::vector<bool> assignment(static_cast<std::size_t>(gadget.n), false);
    BigInt variable_total = 0;
    for (int i = 1; i <= gadget.n; ++i) {
        const bool has_a = in_set[static_cast<std::size_t>(gadget.pos_a(i))];
        const bool has_b = in_set[static_cast<std::size_t>(gadget.pos_b(i))];
        if (has_a == has_b)
            throw Error("gadget internal error: coalition of weight q_target does not pick "
                        "exactly one of a_" +
                        std::to_string(i) + ", b_" + std::to_string(i));
        assignment[static_cast<std::size_t>(i - 1)] = has_a;
        variable_total += gadget.universe_weight(has_a ? gadget.pos_a(i) : gadget.pos_b(i)).value();
    }

    const std::vector<int> hits = clause_hits(gadget, variable_total);
    for (int j = 1; j <= gadget.m; ++j)
        if (hits[static_cast<std::size_t>(j)] == 0)
            throw Error("gadget internal error: decoded assignment falsifies clause " +
                        std::to_string(j));
    return assignment;
}

namespace {

struct QSubsetCollector {
    const std::vector<int>& positions;     // sorted by descending weight
    const std::vector<BigInt>& values;     // values[i] = weight of positions[i]
    const std::vector<BigInt>& suffix;     // suffix sums of values
    const BigInt& target;
    std::vector<int> chosen;
    std::vector<std::vector<int>> found;

    void walk(std::size_t i, const BigInt& sum) {
        if (sum > target)
            return;
        if (sum + suffix[i] < target)
            return;
        if (i == values.size()) {
            if (sum == target) {
                std::vector<int> subset;
                subset.reserve(chosen.size());
                for (int idx : chosen)
                    subset.push_back(positions[static_cast<std::size_t>(idx)]);
                std::sort(subset.begin(), subset.end());
                found.push_back(std::move(subset));
            }
            return;
        }
        chosen.push_back(static_cast<int>(i));
        walk(i + 1, sum + values[i]);
        chosen.pop_back();
        walk(i + 1, sum);
    }
};

} // namespace

BijectionReport verify_bijection(const CnfFormula& formula, int k, int set_id, int player_cap) {
    const GadgetWeights gadget = build_weight_set(formula, k, set_id);
    BijectionReport report;
    report.set_id = set_id;
    report.k = k;

    const int universe = gadget.universe_size();
    if (universe > player_cap)
        throw CapabilityError("bijection check: universe of " + std::to_string(universe) +
                              " players exceeds cap of " + std::to_string(player_cap));

    std::vector<int> positions(static_cast<std::size_t>(universe));
    std::iota(positions.begin(), positions.end(), 1);
    std::sort(positions.begin(), positions.end(), [&](int a, int b) {
        return gadget.universe_weight(a).value() > gadget.universe_weight(b).value();
    });
    std::vector<BigInt> values;
    values.reserve(positions.size());
    for (int pos : positions)
        values.push_back(gadget.universe_weight(pos).value());
    std::vector<BigInt> suffix(values.size() + 1, BigInt(0));
    for (std::size_t i = values.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + values[i];

    QSubsetCollector collector{positions, values, suffix, gadget.q_target, {}, {}};
    collector.walk(0, BigInt(0));

    report.coalition_count = BigInt(collector.found.size());
    report.model_count = count_models(formula);
    report.counts_equal = (report.coalition_count == report.model_count);
    if (!report.counts_equal)
        report.failures.push_back("coalition count " + report.coalition_count.str() +
                                  " != model count " + report.model_count.str());

    report.round_trips_ok = true;
    std::set<std::vector<int>> seen_from_assignments;
    for (const std::vector<int>& coalition : collector.found) {
        try {
            const std::vector<bool> assignment = coalition_to_assignment(gadget, coalition);
            if (!formula.evaluate(assignment)) {
                report.round_trips_ok = false;
                report.failures.push_back("decoded assignment does not satisfy the formula");
                continue;
            }
            const auto back = assignment_to_coalition(gadget, assignment);
            if (!back || *back != coalition) {
                report.round_trips_ok = false;
                report.failures.push_back("coalition -> assignment -> coalition round trip drifted");
            }
        } catch (const Error& e) {
            report.round_trips_ok = false;
            report.failures.push_back(e.what());
        }
    }

    // Forward direction: every satisfying assignment lands on a distinct
    // q_target coalition found by the exhaustive walk.
    std::set<std::vector<int>> found_set(collector.found.begin(), collector.found.end());
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << formula.num_vars()); ++mask) {
        std::vector<bool> assignment(static_cast<std::size_t>(formula.num_vars()));
        for (int i = 0; i < formula.num_vars(); ++i)
            assignment[static_cast<std::size_t>(i)] = (mask >> i) & 1;
        const bool satisfies = formula.evaluate(assignment);
        const auto coalition = assignment_to_coalition(gadget, assignment);
        if (satisfies != coalition.has_value()) {
            report.round_trips_ok = false;
            report.failures.push_back("assignment encoding disagrees with satisfaction");
            continue;
        }
        if (coalition) {
            if (!found_set.count(*coalition)) {
                report.round_trips_ok = false;
                report.failures.push_back("encoded coalition missing from exhaustive walk");
            } else if (!seen_from_assignments.insert(*coalition).second) {
                report.round_trips_ok = false;
                report.failures.push_back("two assignments mapped to one coalition");
            }
        }
    }

    return report;
}

} // namespace wvg
