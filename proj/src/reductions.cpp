#include "wvg/reductions.hpp"

#include "wvg/errors.hpp"
#include "wvg/gadgets.hpp"

#include "reductions_internal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wvg {

std::string to_string(ControlGoal goal) {
    switch (goal) {
    case ControlGoal::Increase: return "increase";
    case ControlGoal::Decrease: return "decrease";
    case ControlGoal::Nonincrease: return "nonincrease";
    case ControlGoal::Nondecrease: return "nondecrease";
    case ControlGoal::Maintain: return "maintain";
    }
    throw InvalidArgumentError("unknown goal");
}

std::string to_string(IndexKind kind) {
    return kind == IndexKind::Banzhaf ? "banzhaf" : "shapley_shubik";
}

ControlGoal goal_from_string(std::string_view s) {
    if (s == "increase") return ControlGoal::Increase;
    if (s == "decrease") return ControlGoal::Decrease;
    if (s == "nonincrease") return ControlGoal::Nonincrease;
    if (s == "nondecrease") return ControlGoal::Nondecrease;
    if (s == "maintain") return ControlGoal::Maintain;
    throw InvalidArgumentError("unknown goal \"" + std::string(s) + "\"");
}

IndexKind index_kind_from_string(std::string_view s) {
    if (s == "banzhaf") return IndexKind::Banzhaf;
    if (s == "shapley_shubik" || s == "shapley") return IndexKind::ShapleyShubik;
    throw InvalidArgumentError("unknown index kind \"" + std::string(s) + "\"");
}

bool requires_nonempty_addition(ControlGoal goal) {
    return goal == ControlGoal::Nondecrease || goal == ControlGoal::Nonincrease ||
           goal == ControlGoal::Maintain;
}

void ReductionConstants::put(const std::string& name, BigInt v) {
    entries_.emplace_back(name, ConstantValue(std::move(v)));
}

void ReductionConstants::put(const std::string& name, BigRat v) {
    entries_.emplace_back(name, ConstantValue(std::move(v)));
}

void ReductionConstants::put(const std::string& name, std::vector<BigInt> v) {
    entries_.emplace_back(name, ConstantValue(std::move(v)));
}

bool ReductionConstants::has(std::string_view name) const {
    for (const auto& [n, _] : entries_)
        if (n == name)
            return true;
    return false;
}

const ConstantValue& ReductionConstants::require(std::string_view name) const {
    for (const auto& [n, v] : entries_)
        if (n == name)
            return v;
    throw InvalidArgumentError("constant \"" + std::string(name) + "\" not recorded");
}

const BigInt& ReductionConstants::get_int(std::string_view name) const {
    const ConstantValue& v = require(name);
    if (const BigInt* i = std::get_if<BigInt>(&v))
        return *i;
    throw InvalidArgumentError("constant \"" + std::string(name) + "\" is not an integer");
}

BigRat ReductionConstants::get_rat(std::string_view name) const {
    const ConstantValue& v = require(name);
    if (const BigInt* i = std::get_if<BigInt>(&v))
        return BigRat(*i);
    if (const BigRat* r = std::get_if<BigRat>(&v))
        return *r;
    throw InvalidArgumentError("constant \"" + std::string(name) + "\" is not a scalar");
}

const std::vector<BigInt>& ReductionConstants::get_seq(std::string_view name) const {
    const ConstantValue& v = require(name);
    if (const auto* s = std::get_if<std::vector<BigInt>>(&v))
        return *s;
    throw InvalidArgumentError("constant \"" + std::string(name) + "\" is not a sequence");
}

const std::vector<int>* ControlInstance::group(std::string_view label) const {
    for (const auto& [name, members] : groups)
        if (name == label)
            return &members;
    return nullptr;
}

bool InstanceValidation::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

int InstanceValidation::failure_count() const {
    return static_cast<int>(
        std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

std::vector<std::string> InstanceValidation::failures() const {
    std::vector<std::string> out;
    for (const CheckResult& c : checks)
        if (!c.passed)
            out.push_back(c.name + ": " + c.detail);
    return out;
}

namespace detail {

GroupSpec GroupSpec::repeated(std::string label, const Weight& w, long long count) {
    if (count < 0)
        throw InfeasibleError("group " + label + " would need " + std::to_string(count) +
                              " players");
    GroupSpec g{std::move(label), {}};
    g.weights.assign(static_cast<std::size_t>(count), w);
    return g;
}

namespace {

void require_feasible(bool ok, const std::string& what) {
    if (!ok)
        throw InfeasibleError(what);
}

Weight positive_weight(BigInt v, const std::string& what) {
    if (v < 1)
        throw InfeasibleError(what + " produced a nonpositive weight " + v.str());
    return Weight(std::move(v));
}

// Two smallest elements of a nonempty list of weights.
std::pair<BigInt, BigInt> two_smallest(const std::vector<const std::vector<Weight>*>& groups) {
    BigInt s1 = -1, s2 = -1;
    for (const auto* g : groups)
        for (const Weight& w : *g) {
            const BigInt& v = w.value();
            if (s1 < 0 || v < s1) {
                s2 = s1;
                s1 = v;
            } else if (s2 < 0 || v < s2) {
                s2 = v;
            }
        }
    return {s1, s2};
}

long long tail_player_count(const std::vector<GroupSpec>& tail) {
    long long count = 0;
    for (const GroupSpec& g : tail)
        count += static_cast<long long>(g.weights.size());
    return count;
}

} // namespace

BigInt c_block_total(int set_id, int n, int m, int t, int t_prime) {
    const BigInt factor = pow2(ceil_log2(BigInt(n))) - 1;
    BigInt total = 0;
    for (int j = 1; j <= m; ++j)
        total += factor * pow10(t * j);
    if (set_id == 2 || set_id == 4)
        for (int j = 1; j <= m; ++j)
            total += factor * pow10(t_prime * j);
    return total;
}

BigInt cp_block_total(int set_id, int n, int m, int t_prime) {
    if (set_id != 2 && set_id != 4)
        return 0;
    const BigInt factor = pow2(ceil_log2(BigInt(n))) - 1;
    BigInt total = 0;
    for (int j = 1; j <= m; ++j)
        total += factor * pow10(t_prime * j);
    return total;
}

void put_shape_constants(ReductionConstants& c, int n, int m, int k, int r, const BigInt& w_m,
                         const BigInt& w_a, const BigInt& w_c, const BigInt& w_cp) {
    c.put("n", n);
    c.put("m", m);
    c.put("k", k);
    c.put("r", r);
    c.put("w_m_total", w_m);
    c.put("w_a_total", w_a);
    c.put("w_c_total", w_c);
    if (w_cp != 0)
        c.put("w_cp_total", w_cp);
}

// ---------------------------------------------------------------------------
// Increase / nondecrease of the Banzhaf index. One weight-q-1 row in Y, or
// two for the nondecrease variant.

Derivation derive_thm1(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                       bool nondecrease_variant, bool bounds_only) {
    if (n < 2 || k < 1 || k >= n)
        throw InvalidArgumentError("construction requires 1 <= k < n and n >= 2");

    Derivation d;
    d.set_id = 1;
    const int r = ceil_log2(BigInt(n)) - 1;
    d.min_pow_t = BigInt(k) + BigInt(n - k - 1) * (k + 1);
    std::tie(d.t, d.t_prime) = gadget_exponents(1, n, m, d.min_pow_t, std::nullopt);
    if (bounds_only)
        return d;
    d.q_target = gadget_q_target(1, n, m, d.t, 0);
    d.w_c_total = c_block_total(1, n, m, d.t, 0);
    d.w_cp_total = 0;
    d.m_count = 2 * k;
    d.a_count = 2 * (n - k);
    d.c_count = m * (r + 1);
    d.cp_count = 0;

    const BigInt q = 2 * (w_a + w_m + d.w_c_total + BigInt(n - k) * (k + 1)) + 1;
    d.quota = q;

    GroupSpec w_group{"W", {}};
    for (int j = 1; j <= k; ++j)
        w_group.weights.push_back(positive_weight(q - d.q_target - (j + 1), "group W"));
    GroupSpec x_group = GroupSpec::repeated("X", Weight(1), k);
    GroupSpec y_group{"Y", {}};
    if (nondecrease_variant)
        y_group.weights.push_back(positive_weight(q - 1, "group Y"));
    for (int l = 0; l <= n - k - 1; ++l)
        y_group.weights.push_back(positive_weight(q - 1 - BigInt(l) * (k + 1), "group Y"));
    GroupSpec z_group = GroupSpec::repeated("Z", Weight(static_cast<unsigned long long>(k + 1)),
                                            n - k - 1);

    // The heavy rows must pairwise exceed the quota, and everything else
    // (including the full addable pool) must stay below q-1.
    const auto [s1, s2] = two_smallest({&w_group.weights, &y_group.weights});
    require_feasible(s1 + s2 > q, "two heavy-row players do not exceed the quota");
    const BigInt light_total =
        w_a + w_m + d.w_c_total + BigInt(k) + BigInt(n - k - 1) * (k + 1);
    require_feasible(light_total < q - 1, "light players reach q-1");

    d.tail.push_back(std::move(w_group));
    d.tail.push_back(std::move(x_group));
    d.tail.push_back(std::move(y_group));
    d.tail.push_back(std::move(z_group));

    d.expected_players = 1 + d.a_count + d.c_count + tail_player_count(d.tail);
    const long long formula_count = 4LL * n - 2 * k + static_cast<long long>(m) * (r + 1) +
                                    (nondecrease_variant ? 1 : 0);
    require_feasible(d.expected_players == formula_count, "player count formula mismatch");

    ReductionConstants c(nondecrease_variant ? "thm3a" : "thm1");
    put_shape_constants(c, n, m, k, r, w_m, w_a, d.w_c_total, 0);
    c.put("t", d.t);
    c.put("q1", d.q_target);
    c.put("q", q);
    d.constants = std::move(c);
    return d;
}

// ---------------------------------------------------------------------------
// Decrease / nonincrease of the Banzhaf index (14-group construction).

Derivation derive_thm3bc_banzhaf(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                                 bool bounds_only) {
    if (k < 2 || k >= n)
        throw InvalidArgumentError("construction requires 2 <= k < n");

    Derivation d;
    d.set_id = 3;
    const int r = ceil_log2(BigInt(n)) - 1;
    const BigInt h_prime = BigInt(2) * k * k;
    const BigInt h = BigInt(k + 1) * h_prime;
    const BigInt z = BigInt(2 * n - 2 * k) * h;
    const BigInt e = BigInt(2 * n - k + 1) * z;

    d.min_pow_t = BigInt(n + 1) * e;
    std::tie(d.t, d.t_prime) = gadget_exponents(3, n, m, d.min_pow_t, std::nullopt);
    if (bounds_only)
        return d;
    d.q_target = gadget_q_target(3, n, m, d.t, 0);
    d.w_c_total = c_block_total(3, n, m, d.t, 0);
    d.w_cp_total = 0;
    d.m_count = 2 * k;
    d.a_count = 2 * (n - k);
    d.c_count = m * (r + 1);
    d.cp_count = 0;

    auto marker = [&](int i) { return pow10(d.t * (m + 1) + 2 * i); }; // 10^(t(m+1)+2i)
    BigInt marker_sum = 0;                                             // sum over i = 1..k
    for (int i = 1; i <= k; ++i)
        marker_sum += marker(i);

    const BigInt q = 2 * (w_a + w_m + d.w_c_total + 9 * marker_sum + pow10(d.t)) + 1;
    d.quota = q;

    GroupSpec d_group{"D", {}};
    for (int i = 1; i <= k; ++i)
        d_group.weights.push_back(
            positive_weight(q - marker(i) - d.w_c_total - 2, "group D"));
    GroupSpec e_group = GroupSpec::repeated("E", Weight(BigInt(e)), n);
    GroupSpec f_group{"F", {}};
    for (int i = 0; i <= n; ++i)
        f_group.weights.push_back(positive_weight(q - d.q_target - i * e - 1, "group F"));
    GroupSpec g_group{"G", {}};
    for (int i1 = 0; i1 <= k; ++i1)
        for (int i2 = 1; i2 <= 2 * n - 2 * k - 1; ++i2)
            g_group.weights.push_back(positive_weight(
                q - marker_sum - d.w_c_total - i1 * h_prime - k - i2 * h - 1, "group G"));
    GroupSpec h_group = GroupSpec::repeated("H", Weight(BigInt(h)), 2 * n - 2 * k - 1);
    GroupSpec hp_group = GroupSpec::repeated("Hp", Weight(BigInt(h_prime)), k);
    GroupSpec u_group{"U", {}};
    for (int i = 0; i <= 2 * n - k; ++i)
        u_group.weights.push_back(positive_weight(
            q - 4 * marker_sum - d.w_c_total - (2 * k + 1) - i * z - 1, "group U"));
    GroupSpec v_group{"V", {}};
    for (int i = k + 2; i <= 2 * k; ++i)
        v_group.weights.push_back(Weight(static_cast<unsigned long long>(i)));
    for (int factor = 4; factor >= 2; --factor)
        for (int i = 1; i <= k; ++i)
            v_group.weights.push_back(Weight(BigInt(factor * marker(i))));
    GroupSpec x_group{"X", {}};
    for (int i1 = 1; i1 <= k; ++i1)
        for (int i2 = 0; i2 <= 2 * n - k; ++i2)
            x_group.weights.push_back(positive_weight(
                q - 5 * marker(i1) - d.w_c_total - 2 - i2 * z - 1, "group X"));
    GroupSpec y_group{"Y", {}};
    for (int i = 0; i <= 2 * n - k; ++i)
        y_group.weights.push_back(positive_weight(q - i * z - 1, "group Y"));
    GroupSpec z_group = GroupSpec::repeated("Z", Weight(BigInt(z)), 2 * n - k);

    const auto [s1, s2] = two_smallest({&d_group.weights, &f_group.weights, &g_group.weights,
                                        &u_group.weights, &x_group.weights, &y_group.weights});
    require_feasible(s1 + s2 > q, "two heavy-row players do not exceed the quota");
    BigInt light_total = 1 + w_a + w_m + d.w_c_total + BigInt(n) * e +
                         BigInt(2 * n - 2 * k - 1) * h + BigInt(k) * h_prime +
                         BigInt(2 * n - k) * z;
    for (const Weight& w : v_group.weights)
        light_total += w.value();
    require_feasible(light_total < q - 1, "light players reach q-1");

    d.tail.push_back(std::move(d_group));
    d.tail.push_back(std::move(e_group));
    d.tail.push_back(std::move(f_group));
    d.tail.push_back(std::move(g_group));
    d.tail.push_back(std::move(h_group));
    d.tail.push_back(std::move(hp_group));
    d.tail.push_back(std::move(u_group));
    d.tail.push_back(std::move(v_group));
    d.tail.push_back(std::move(x_group));
    d.tail.push_back(std::move(y_group));
    d.tail.push_back(std::move(z_group));

    d.expected_players = 1 + d.a_count + d.c_count + tail_player_count(d.tail);
    const long long formula_count = 14LL * n + 4LL * n * k - 3LL * k * k - 3LL * k +
                                    static_cast<long long>(m) * (r + 1) + 1;
    require_feasible(d.expected_players == formula_count, "player count formula mismatch");

    ReductionConstants c("thm3bc_banzhaf");
    put_shape_constants(c, n, m, k, r, w_m, w_a, d.w_c_total, 0);
    c.put("h_prime", h_prime);
    c.put("h", h);
    c.put("z", z);
    c.put("e", e);
    c.put("t", d.t);
    c.put("q3", d.q_target);
    c.put("q", q);
    d.constants = std::move(c);
    return d;
}

// ---------------------------------------------------------------------------
// Maintain the Banzhaf index: one ladder Y_i / Z_i pair per binary digit of
// ell.

Derivation derive_thm3d_banzhaf(int n, int m, int k, const BigInt& ell, const BigInt& w_m,
                                const BigInt& w_a, bool bounds_only) {
    if (n < 2 || k < 1 || k > n)
        throw InvalidArgumentError("construction requires 1 <= k <= n and n >= 2");
    if (ell < 1 || ell > pow2(n - k))
        throw InvalidArgumentError("construction requires 1 <= ell <= 2^(n-k)");

    Derivation d;
    d.set_id = 1;
    const int r = ceil_log2(BigInt(n)) - 1;
    const std::vector<int> ell_exps = binary_exponents(ell); // descending
    const int h = static_cast<int>(ell_exps.size());

    std::vector<BigInt> z_ladder; // z_1..z_h
    BigInt weighted_sum = 0;      // sum of ell_i * z_i
    for (int i = 0; i < h; ++i) {
        BigInt z_i = BigInt(k + 1) + weighted_sum;
        weighted_sum += BigInt(ell_exps[static_cast<std::size_t>(i)]) * z_i;
        z_ladder.push_back(std::move(z_i));
    }

    d.min_pow_t = BigInt(k) + weighted_sum;
    std::tie(d.t, d.t_prime) = gadget_exponents(1, n, m, d.min_pow_t, std::nullopt);
    if (bounds_only)
        return d;
    d.q_target = gadget_q_target(1, n, m, d.t, 0);
    d.w_c_total = c_block_total(1, n, m, d.t, 0);
    d.w_cp_total = 0;
    d.m_count = 2 * k;
    d.a_count = 2 * (n - k);
    d.c_count = m * (r + 1);
    d.cp_count = 0;

    const BigInt q = 2 * (w_a + w_m + d.w_c_total + weighted_sum + k + 1) + 1;
    d.quota = q;

    GroupSpec w_group{"W", {}};
    for (int j = 1; j <= k; ++j)
        w_group.weights.push_back(positive_weight(q - d.q_target - j - 1, "group W"));
    d.tail.push_back(std::move(w_group));
    d.tail.push_back(GroupSpec::repeated("X", Weight(1), k));

    std::vector<const std::vector<Weight>*> heavy{&d.tail[0].weights};
    long long ladder_players = 0;
    for (int i = 0; i < h; ++i) {
        const int ell_i = ell_exps[static_cast<std::size_t>(i)];
        const BigInt& z_i = z_ladder[static_cast<std::size_t>(i)];
        GroupSpec y_i{"Y_" + std::to_string(i + 1), {}};
        for (int j = 0; j <= ell_i; ++j)
            y_i.weights.push_back(positive_weight(q - j * z_i - 1, y_i.label));
        ladder_players += ell_i + 1;
        d.tail.push_back(std::move(y_i));
        d.tail.push_back(
            GroupSpec::repeated("Z_" + std::to_string(i + 1), Weight(BigInt(z_i)), ell_i));
        ladder_players += ell_i;
    }
    for (std::size_t g = 2; g < d.tail.size(); g += 2)
        heavy.push_back(&d.tail[g].weights); // the Y_i groups

    const auto [s1, s2] = two_smallest(heavy);
    require_feasible(s1 + s2 > q, "two heavy-row players do not exceed the quota");
    const BigInt light_total = w_a + w_m + d.w_c_total + BigInt(k) + weighted_sum;
    require_feasible(light_total < q - 1, "light players reach q-1");

    d.expected_players = 1 + d.a_count + d.c_count + tail_player_count(d.tail);
    BigInt exp_sum = 0;
    for (int e : ell_exps)
        exp_sum += e;
    const BigInt formula_count =
        BigInt(2 * n) + BigInt(m) * (r + 1) + 2 * exp_sum + h + 1;
    require_feasible(BigInt(d.expected_players) == formula_count,
                     "player count formula mismatch");

    ReductionConstants c("thm3d_banzhaf");
    put_shape_constants(c, n, m, k, r, w_m, w_a, d.w_c_total, 0);
    c.put("ell", ell);
    std::vector<BigInt> exps_big(ell_exps.begin(), ell_exps.end());
    c.put("ell_exponents", exps_big);
    c.put("z_ladder", z_ladder);
    c.put("t", d.t);
    c.put("q1", d.q_target);
    c.put("q", q);
    d.constants = std::move(c);
    return d;
}

// ---------------------------------------------------------------------------

ControlInstance assemble_instance(const GadgetWeights& gadget, int k, Derivation derivation,
                                  ControlGoal goal, IndexKind kind) {
    if (gadget.t != derivation.t || gadget.t_prime != derivation.t_prime ||
        gadget.q_target != derivation.q_target)
        throw Error("internal: gadget exponents disagree with the derivation");

    std::vector<Weight> weights;
    weights.reserve(static_cast<std::size_t>(derivation.expected_players));
    std::vector<std::pair<std::string, std::vector<int>>> groups;
    auto add_group = [&](const std::string& label, const std::vector<Weight>& ws) {
        std::vector<int> indices;
        indices.reserve(ws.size());
        for (const Weight& w : ws) {
            weights.push_back(w);
            indices.push_back(static_cast<int>(weights.size()));
        }
        groups.emplace_back(label, std::move(indices));
    };

    add_group("p", {Weight(1)});
    add_group("A", gadget.w_a);
    add_group("C", gadget.w_c);
    if (gadget.has_c_prime())
        add_group("Cp", gadget.w_c_prime);
    for (const GroupSpec& g : derivation.tail)
        add_group(g.label, g.weights);

    if (static_cast<long long>(weights.size()) != derivation.expected_players)
        throw Error("internal: assembled player count disagrees with the derivation");

    ControlInstance instance{Game(std::move(weights), derivation.quota),
                             gadget.w_m,
                             /*distinguished=*/1,
                             /*budget=*/k,
                             goal,
                             kind,
                             std::move(groups),
                             std::move(derivation.constants)};
    return instance;
}

Derivation derive_from_constants(const ReductionConstants& stored) {
    const std::string& tag = stored.theorem();
    const int n = stored.get_int("n").convert_to<int>();
    const int m = stored.get_int("m").convert_to<int>();
    const int k = stored.get_int("k").convert_to<int>();
    const BigInt& w_m = stored.get_int("w_m_total");
    const BigInt& w_a = stored.get_int("w_a_total");
    if (tag == "thm1")
        return derive_thm1(n, m, k, w_m, w_a, false);
    if (tag == "thm3a")
        return derive_thm1(n, m, k, w_m, w_a, true);
    if (tag == "thm2")
        return derive_thm2(n, m, k, w_m, w_a);
    if (tag == "thm3bc_banzhaf")
        return derive_thm3bc_banzhaf(n, m, k, w_m, w_a);
    if (tag == "thm3bc_ss")
        return derive_thm3bc_ss(n, m, k, w_m, w_a);
    if (tag == "thm3d_banzhaf")
        return derive_thm3d_banzhaf(n, m, k, stored.get_int("ell"), w_m, w_a);
    if (tag == "thm3d_ss")
        return derive_thm3d_ss(n, m, k, stored.get_int("ell"), w_m, w_a);
    throw InvalidArgumentError("unknown theorem tag \"" + tag + "\"");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public builders.

ControlInstance reduce_increase_banzhaf(const CnfFormula& formula, int k) {
    const int n = formula.num_vars(), m = formula.num_clauses();
    return detail::build_via(formula, k, false, ControlGoal::Increase, IndexKind::Banzhaf,
                             [&](const BigInt& w_m, const BigInt& w_a, bool bounds_only) {
                                 return detail::derive_thm1(n, m, k, w_m, w_a, false,
                                                            bounds_only);
                             });
}

ControlInstance reduce_nondecrease_banzhaf(const CnfFormula& formula, int k) {
    const int n = formula.num_vars(), m = formula.num_clauses();
    return detail::build_via(formula, k, false, ControlGoal::Nondecrease, IndexKind::Banzhaf,
                             [&](const BigInt& w_m, const BigInt& w_a, bool bounds_only) {
                                 return detail::derive_thm1(n, m, k, w_m, w_a, true,
                                                            bounds_only);
                             });
}

ControlInstance reduce_increase_nondecrease_ss(const CnfFormula& formula, int k,
                                               ControlGoal goal) {
    if (goal != ControlGoal::Increase && goal != ControlGoal::Nondecrease)
        throw InvalidArgumentError("goal must be increase or nondecrease");
    const int n = formula.num_vars(), m = formula.num_clauses();
    return detail::build_via(formula, k, false, goal, IndexKind::ShapleyShubik,
                             [&](const BigInt& w_m, const BigInt& w_a, bool bounds_only) {
                                 return detail::derive_thm2(n, m, k, w_m, w_a, bounds_only);
                             });
}

ControlInstance reduce_decrease_nonincrease_banzhaf(const CnfFormula& formula, int k,
                                                    ControlGoal goal) {
    if (goal != ControlGoal::Decrease && goal != ControlGoal::Nonincrease)
        throw InvalidArgumentError("goal must be decrease or nonincrease");
    const int n = formula.num_vars(), m = formula.num_clauses();
    return detail::build_via(formula, k, false, goal, IndexKind::Banzhaf,
                             [&](const BigInt& w_m, const BigInt& w_a, bool bounds_only) {
                                 return detail::derive_thm3bc_banzhaf(n, m, k, w_m, w_a,
                                                                      bounds_only);
                             });
}

ControlInstance reduce_decrease_nonincrease_ss(const CnfFormula& formula, int k,
                                               ControlGoal goal) {
    if (goal != ControlGoal::Decrease && goal != ControlGoal::Nonincrease)
        throw InvalidArgumentError("goal must be decrease or nonincrease");
    const int n = formula.num_vars(), m = formula.num_clauses();
    return detail::build_via(formula, k, false, goal, IndexKind::ShapleyShubik,
                             [&](const BigInt& w_m, const BigInt& w_a, bool bounds_only) {
                                 return detail::derive_thm3bc_ss(n, m, k, w_m, w_a, bounds_only);
                             });
}

ControlInstance reduce_maintain_banzhaf(const CnfFormula& formula, int k, const BigInt& ell) {
    const int n = formula.num_vars(), m = formula.num_clauses();
    return detail::build_via(formula, k, true, ControlGoal::Maintain, IndexKind::Banzhaf,
                             [&](const BigInt& w_m, const BigInt& w_a, bool bounds_only) {
                                 return detail::derive_thm3d_banzhaf(n, m, k, ell, w_m, w_a,
                                                                     bounds_only);
                             });
}

ControlInstance reduce_maintain_ss(const CnfFormula& formula, int k, const BigInt& ell) {
    const int n = formula.num_vars(), m = formula.num_clauses();
    return detail::build_via(formula, k, true, ControlGoal::Maintain, IndexKind::ShapleyShubik,
                             [&](const BigInt& w_m, const BigInt& w_a, bool bounds_only) {
                                 return detail::derive_thm3d_ss(n, m, k, ell, w_m, w_a,
                                                                bounds_only);
                             });
}

ControlInstance build_reduction(std::string_view theorem, const CnfFormula& formula, int k,
                                const std::optional<BigInt>& ell,
                                const std::optional<ControlGoal>& goal) {
    auto need_ell = [&]() -> const BigInt& {
        if (!ell)
            throw InvalidArgumentError("theorem \"" + std::string(theorem) + "\" requires ell");
        return *ell;
    };
    if (theorem == "thm1")
        return reduce_increase_banzhaf(formula, k);
    if (theorem == "thm3a")
        return reduce_nondecrease_banzhaf(formula, k);
    if (theorem == "thm2")
        return reduce_increase_nondecrease_ss(formula, k, goal.value_or(ControlGoal::Increase));
    if (theorem == "thm3bc_banzhaf")
        return reduce_decrease_nonincrease_banzhaf(formula, k,
                                                   goal.value_or(ControlGoal::Decrease));
    if (theorem == "thm3bc_ss")
        return reduce_decrease_nonincrease_ss(formula, k, goal.value_or(ControlGoal::Decrease));
    if (theorem == "thm3d_banzhaf")
        return reduce_maintain_banzhaf(formula, k, need_ell());
    if (theorem == "thm3d_ss")
        return reduce_maintain_ss(formula, k, need_ell());
    throw InvalidArgumentError("unknown theorem tag \"" + std::string(theorem) + "\"");
}

// ---------------------------------------------------------------------------
// Instance audit.

namespace {

std::string value_str(const ConstantValue& v) {
    if (const BigInt* i = std::get_if<BigInt>(&v))
        return i->str();
    if (const BigRat* r = std::get_if<BigRat>(&v))
        return to_fraction(*r);
    const auto& seq = std::get<std::vector<BigInt>>(v);
    std::string s = "[";
    for (std::size_t i = 0; i < seq.size(); ++i)
        s += (i ? "," : "") + seq[i].str();
    return s + "]";
}

bool values_equal(const ConstantValue& a, const ConstantValue& b) {
    if (a.index() != b.index())
        return false;
    return a == b;
}

class Audit {
public:
    explicit Audit(const ControlInstance& instance) : inst_(instance) {}

    InstanceValidation run() {
        structural_checks();
        try {
            derived_ = detail::derive_from_constants(inst_.constants);
            add("rederivation", true, "constants rederived from (n, m, k) inputs");
        } catch (const std::exception& e) {
            add("rederivation", false, e.what());
        }
        if (derived_) {
            compare_constants();
            compare_layout();
        }
        theorem_checks();
        return std::move(result_);
    }

private:
    void add(std::string name, bool ok, std::string detail = "") {
        result_.checks.push_back({std::move(name), ok, std::move(detail)});
    }

    void structural_checks() {
        const Game& game = inst_.game;
        const int players = game.player_count();

        std::vector<int> seen(static_cast<std::size_t>(players) + 1, 0);
        bool in_range = true;
        long long grouped = 0;
        for (const auto& [label, members] : inst_.groups)
            for (int idx : members) {
                ++grouped;
                if (idx < 1 || idx > players)
                    in_range = false;
                else
                    ++seen[static_cast<std::size_t>(idx)];
            }
        bool partition = in_range && grouped == players;
        if (partition)
            for (int i = 1; i <= players; ++i)
                if (seen[static_cast<std::size_t>(i)] != 1)
                    partition = false;
        add("groups partition the player set", partition,
            partition ? "" : "group index lists do not cover each player exactly once");

        bool positive = true;
        for (const Weight& w : game.weights())
            if (w.value() < 1) {
                positive = false;
                break;
            }
        add("weights positive", positive, positive ? "" : "found a player with weight < 1");

        const bool dist_ok = inst_.distinguished >= 1 && inst_.distinguished <= players &&
                             game.weight(inst_.distinguished).value() == 1;
        add("distinguished player has weight 1", dist_ok);

        const auto* p_group = inst_.group("p");
        add("group p is the distinguished singleton",
            p_group && p_group->size() == 1 && (*p_group)[0] == inst_.distinguished);

        bool budget_ok = inst_.budget >= 1 &&
                         inst_.budget <= static_cast<int>(inst_.addable.size());
        if (inst_.constants.has("k"))
            budget_ok = budget_ok && BigInt(inst_.budget) == inst_.constants.get_int("k");
        add("budget", budget_ok);

        bool addable_ok = static_cast<int>(inst_.addable.size()) == 2 * inst_.budget;
        if (inst_.constants.has("w_m_total")) {
            BigInt total = 0;
            for (const Weight& w : inst_.addable)
                total += w.value();
            addable_ok = addable_ok && total == inst_.constants.get_int("w_m_total");
        }
        add("addable pool is the M block", addable_ok);

        const std::string& tag = inst_.constants.theorem();
        const bool odd_quota = tag == "thm1" || tag == "thm3a" || tag == "thm3bc_banzhaf" ||
                               tag == "thm3d_banzhaf" || tag == "thm3d_ss";
        const bool parity_ok = (inst_.game.quota() % 2 == (odd_quota ? 1 : 0));
        add("quota parity", parity_ok,
            odd_quota ? "quota must be odd" : "quota must be even");
    }

    void compare_constants() {
        const auto& stored = inst_.constants.entries();
        const auto& fresh = derived_->constants.entries();
        std::string mismatch;
        for (const auto& [name, value] : fresh) {
            bool found = false;
            for (const auto& [sname, svalue] : stored)
                if (sname == name) {
                    found = true;
                    if (!values_equal(svalue, value))
                        mismatch = name + ": stored " + value_str(svalue) + ", rederived " +
                                   value_str(value);
                    break;
                }
            if (!found)
                mismatch = name + ": missing from instance";
            if (!mismatch.empty())
                break;
        }
        if (mismatch.empty() && stored.size() != fresh.size())
            mismatch = "instance records extra constants";
        add("constants match rederivation", mismatch.empty(), mismatch);
    }

    void compare_layout() {
        const detail::Derivation& d = *derived_;
        const Game& game = inst_.game;

        add("player count", game.player_count() == d.expected_players,
            "expected " + std::to_string(d.expected_players) + ", found " +
                std::to_string(game.player_count()));
        add("quota formula", game.quota() == d.quota);

        std::vector<std::pair<std::string, long long>> expected_counts;
        expected_counts.emplace_back("p", 1);
        expected_counts.emplace_back("A", d.a_count);
        expected_counts.emplace_back("C", d.c_count);
        if (d.cp_count > 0)
            expected_counts.emplace_back("Cp", d.cp_count);
        for (const auto& g : d.tail)
            expected_counts.emplace_back(g.label, static_cast<long long>(g.weights.size()));

        bool labels_ok = inst_.groups.size() == expected_counts.size();
        bool counts_ok = labels_ok;
        if (labels_ok)
            for (std::size_t i = 0; i < expected_counts.size(); ++i) {
                if (inst_.groups[i].first != expected_counts[i].first)
                    labels_ok = false;
                else if (static_cast<long long>(inst_.groups[i].second.size()) !=
                         expected_counts[i].second)
                    counts_ok = false;
            }
        add("group labels in construction order", labels_ok);
        add("group cardinalities", labels_ok && counts_ok);
        if (!labels_ok || !counts_ok)
            return;

        // Gadget blocks: totals; everything after: exact weights.
        auto group_total = [&](std::size_t gi) {
            BigInt total = 0;
            for (int idx : inst_.groups[gi].second)
                total += game.weight(idx).value();
            return total;
        };
        add("A block total", group_total(1) == inst_.constants.get_int("w_a_total"));
        add("C block total", group_total(2) == d.w_c_total);
        std::size_t gi = 3;
        if (d.cp_count > 0) {
            add("C' block total", group_total(3) == d.w_cp_total);
            gi = 4;
        }
        std::string weight_mismatch;
        for (std::size_t ti = 0; ti < d.tail.size(); ++ti, ++gi) {
            const auto& members = inst_.groups[gi].second;
            const auto& expected = d.tail[ti].weights;
            for (std::size_t j = 0; j < expected.size(); ++j)
                if (game.weight(members[j]) != expected[j]) {
                    weight_mismatch = "group " + d.tail[ti].label + ", player " +
                                      std::to_string(members[j]);
                    break;
                }
            if (!weight_mismatch.empty())
                break;
        }
        add("group weights match construction", weight_mismatch.empty(), weight_mismatch);
    }

    // Named identities recomputed from the stored constants themselves.
    void theorem_checks() {
        const std::string& tag = inst_.constants.theorem();
        try {
            if (tag == "thm2")
                thm2_checks();
            else if (tag == "thm3bc_ss")
                thm3bc_ss_checks();
            else if (tag == "thm3d_banzhaf")
                thm3d_banzhaf_checks();
            else if (tag == "thm3d_ss")
                thm3d_ss_checks();
        } catch (const std::exception& e) {
            add("theorem identities", false, e.what());
        }
    }

    void resum_check(const std::string& name, const BigInt& value,
                     const std::vector<BigInt>& exponents) {
        BigInt sum = 0;
        bool descending = true;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            sum += pow2(exponents[i].convert_to<int>());
            if (i + 1 < exponents.size() && exponents[i + 1] >= exponents[i])
                descending = false;
        }
        add(name + " decomposition re-sums", sum == value && descending,
            "sum " + sum.str() + " vs " + value.str());
    }

    void thm2_checks() {
        const auto& c = inst_.constants;
        const BigInt &P = c.get_int("P"), &delta = c.get_int("delta"), &x = c.get_int("x");
        const int n = c.get_int("n").convert_to<int>();
        const int m = c.get_int("m").convert_to<int>();
        const int k = c.get_int("k").convert_to<int>();
        const int r = c.get_int("r").convert_to<int>();
        add("P odd", P % 2 == 1);
        add("x = (P-1)/2", 2 * x + 1 == P);
        const BigRat kp = c.get_rat("k_prime");
        add("k' bounds (2 <= k' <= 2^k)", kp >= 2 && kp <= BigRat(pow2(k)));
        resum_check("z", c.get_int("z"), c.get_seq("y_exponents"));
        const auto& alpha = c.get_seq("alpha");
        const auto& beta = c.get_seq("beta");
        bool sizes_ok = true;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            if (1 + delta + alpha[i] + BigInt(i) != x)
                sizes_ok = false;
        for (std::size_t j = 0; j < beta.size(); ++j)
            if (1 + delta + BigInt(n) + BigInt(m) * (r + 1) + beta[j] + BigInt(j) != x)
                sizes_ok = false;
        add("coalition sizes all equal x", sizes_ok);
    }

    void thm3bc_ss_checks() {
        const auto& c = inst_.constants;
        const int k = c.get_int("k").convert_to<int>();
        const int n = c.get_int("n").convert_to<int>();
        const int m = c.get_int("m").convert_to<int>();
        const int r = c.get_int("r").convert_to<int>();
        const BigInt &P = c.get_int("P"), &s = c.get_int("s"), &delta = c.get_int("delta");
        const BigRat kp = c.get_rat("k_prime");
        add("k' bounds (9*2^(k-3) < k' < 2^(2k))",
            kp > BigRat(9 * pow2(k - 3)) && kp < BigRat(pow2(2 * k)));
        add("s >= (5/9)P", BigRat(s) >= BigRat(5 * P, 9));
        add("s <= (2/3)P - 1", BigRat(s) <= BigRat(2 * P, 3) - 1);
        add("coalition sizes all equal s", s == BigInt(4 * n) + BigInt(m) * (r + 1) + delta);
        const bool eps_ok = c.get_rat("epsilon_1") > 0 && c.get_rat("epsilon_2") > 0 &&
                            c.get_rat("epsilon_3") >= 0 && c.get_rat("epsilon_3") < 1 &&
                            c.get_rat("epsilon_4") > 0;
        add("epsilon residual signs", eps_ok);
        for (int i = 1; i <= 5; ++i)
            resum_check("gamma_" + std::to_string(i), c.get_int("gamma_" + std::to_string(i)),
                        c.get_seq("alpha_" + std::to_string(i)));
    }

    void thm3d_banzhaf_checks() {
        const auto& c = inst_.constants;
        resum_check("ell", c.get_int("ell"), c.get_seq("ell_exponents"));
        const auto& exps = c.get_seq("ell_exponents");
        const auto& ladder = c.get_seq("z_ladder");
        const BigInt k = c.get_int("k");
        bool ladder_ok = ladder.size() == exps.size();
        BigInt acc = 0;
        for (std::size_t i = 0; ladder_ok && i < ladder.size(); ++i) {
            if (ladder[i] != k + 1 + acc)
                ladder_ok = false;
            acc += exps[i] * ladder[i];
        }
        add("z ladder recursion", ladder_ok);
    }

    void thm3d_ss_checks() {
        const auto& c = inst_.constants;
        const int n = c.get_int("n").convert_to<int>();
        const int m = c.get_int("m").convert_to<int>();
        const int k = c.get_int("k").convert_to<int>();
        const int r = c.get_int("r").convert_to<int>();
        resum_check("ell", c.get_int("ell"), c.get_seq("ell_exponents"));
        resum_check("y", c.get_int("y"), c.get_seq("y_exponents"));
        resum_check("z", c.get_int("z"), c.get_seq("z_exponents"));
        const BigInt &P = c.get_int("P"), &y = c.get_int("y"), &z = c.get_int("z");
        BigInt rising = 1;
        for (int i = 1; i <= k; ++i)
            rising *= (P + i);
        add("y + z = (P+1)...(P+k)", y + z == rising);
        add("coalition sizes all equal s",
            c.get_int("s") == BigInt(n) + BigInt(m) * (r + 1) + c.get_int("z_star") + 1);
        add("alpha >= 256", c.get_int("alpha") >= 256);
    }

    const ControlInstance& inst_;
    std::optional<detail::Derivation> derived_;
    InstanceValidation result_;
};

} // namespace

InstanceValidation validate_instance(const ControlInstance& instance) {
    return Audit(instance).run();
}

} // namespace wvg
