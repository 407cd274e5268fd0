#include "wvg/errors.hpp"
#include "wvg/gadgets.hpp"
#include "wvg/reductions.hpp"

#include "reductions_internal.hpp"

#include <string>

namespace wvg::detail {

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

BigInt require_integral(const BigRat& v, const std::string& what) {
    if (boost::multiprecision::denominator(v) != 1)
        throw InfeasibleError(what + " is not an integer: " + to_fraction(v));
    return boost::multiprecision::numerator(v);
}

std::pair<BigInt, BigInt> two_smallest_of(const std::vector<const GroupSpec*>& groups) {
    BigInt s1 = -1, s2 = -1;
    for (const GroupSpec* g : groups)
        for (const Weight& w : g->weights) {
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

BigInt group_total(const GroupSpec& g) {
    BigInt t = 0;
    for (const Weight& w : g.weights)
        t += w.value();
    return t;
}

std::vector<BigInt> to_bigint_seq(const std::vector<int>& v) {
    return std::vector<BigInt>(v.begin(), v.end());
}

// Each ladder value must strictly exceed the combined weight of all lighter
// ladder players; otherwise an equal-weight coalition of a different size
// could stand in for the intended one. (value, player count) pairs.
void check_ladder_dominance(std::vector<std::pair<BigInt, BigInt>> families,
                            const std::string& what) {
    std::sort(families.begin(), families.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    BigInt lighter = 0;
    for (const auto& [value, count] : families) {
        if (count == 0)
            continue;
        require_feasible(value > lighter,
                         what + ": ladder value " + value.str() +
                             " does not dominate the lighter players (total " +
                             lighter.str() + ")");
        lighter += value * count;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Increase / nondecrease of the Shapley-Shubik index. All pivotal coalitions
// are forced to the common size x = (P-1)/2 by the ladder groups.

Derivation derive_thm2(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                       bool bounds_only) {
    if (n < 2 || k < 1 || k >= n)
        throw InvalidArgumentError("construction requires 1 <= k < n and n >= 2");

    Derivation d;
    d.set_id = 2;
    const int r = ceil_log2(BigInt(n)) - 1;
    const long long nn = n, kk = k, mm = m;

    const BigInt P = 6 * nn * nn * mm + 26 * nn * nn + 8 * kk * kk + 8 * nn * mm + 18 * nn +
                     4 * kk - 2 * mm - 3;
    const BigInt delta = 3 * nn * nn * mm + 13 * nn * nn + 4 * kk * kk + 3 * nn * mm + 5 * nn +
                         4 * kk - 2 * mm - 5;
    const BigInt x = delta + nn * mm + 4 * nn - 2 * kk + mm + 3;
    require_feasible(P % 2 == 1, "P must be odd");
    require_feasible(2 * x + 1 == P, "x != (P-1)/2");

    BigRat k_prime = 1;
    for (int i = 0; i < k; ++i)
        k_prime *= BigRat(P - x + i + (x + 1), P - x + i);
    require_feasible(k_prime >= 2 && k_prime <= BigRat(pow2(k)), "k' outside [2, 2^k]");

    const BigInt z =
        require_integral(ceil_rational(BigRat(pow2(n - k + 1)) * (k_prime - 1)), "ceil") - 1;
    require_feasible(z >= 1 && z < pow2(n + 1), "z outside [1, 2^(n+1))");
    const std::vector<int> y_exps = binary_exponents(z); // y_1 > ... > y_u
    const int u = static_cast<int>(y_exps.size());
    const int y1 = y_exps.front();
    require_feasible(y1 <= n && u <= n, "digit decomposition of z too wide");

    std::vector<BigInt> alpha; // alpha_0 .. alpha_{2n-2k}
    for (int i = 0; i <= 2 * n - 2 * k; ++i)
        alpha.push_back(BigInt(nn * mm + 4 * nn - 2 * kk + mm + 2 - i));
    std::vector<BigInt> beta; // beta_0 .. beta_{y1}
    for (int i = 0; i <= y1; ++i)
        beta.push_back(BigInt((nn - r) * mm + 3 * nn - 2 * kk + 2 - i));
    require_feasible(alpha.back() >= 1 && beta.back() >= 1, "ladder cardinality went nonpositive");

    // Size ladders: each value exceeds the total of everything below it.
    std::vector<BigInt> v_ladder; // v_0 .. v_{y1}
    {
        BigInt acc = 0;
        for (int i = 0; i <= y1; ++i) {
            BigInt v_i = 1 + delta + acc;
            acc += beta[static_cast<std::size_t>(i)] * v_i;
            v_ladder.push_back(std::move(v_i));
        }
    }
    std::vector<BigInt> vp_ladder; // v'_1 .. v'_u
    {
        const BigInt base = (beta[static_cast<std::size_t>(y1)] + 1) * v_ladder.back();
        BigInt acc = 0;
        for (int i = 1; i <= u; ++i) {
            BigInt vp_i = base + acc;
            acc += BigInt(y_exps[static_cast<std::size_t>(i - 1)]) * vp_i;
            vp_ladder.push_back(std::move(vp_i));
        }
    }
    std::vector<BigInt> ws_ladder; // w*_0 .. w*_{2n-2k}
    {
        const BigInt base = BigInt(y_exps.back() + 1) * vp_ladder.back();
        BigInt acc = 0;
        for (int i = 0; i <= 2 * n - 2 * k; ++i) {
            BigInt ws_i = base + acc;
            acc += alpha[static_cast<std::size_t>(i)] * ws_i;
            ws_ladder.push_back(std::move(ws_i));
        }
    }
    const BigInt w_prime = (alpha.back() + 1) * ws_ladder.back();

    {
        std::vector<std::pair<BigInt, BigInt>> ladder{{BigInt(1), delta}};
        for (int i = 0; i <= y1; ++i)
            ladder.emplace_back(v_ladder[static_cast<std::size_t>(i)],
                                beta[static_cast<std::size_t>(i)]);
        for (int i = 1; i <= u; ++i)
            ladder.emplace_back(vp_ladder[static_cast<std::size_t>(i - 1)],
                                BigInt(y_exps[static_cast<std::size_t>(i - 1)]));
        for (int i = 0; i <= 2 * n - 2 * k; ++i)
            ladder.emplace_back(ws_ladder[static_cast<std::size_t>(i)],
                                alpha[static_cast<std::size_t>(i)]);
        ladder.emplace_back(w_prime, BigInt(2 * n - 2 * k));
        check_ladder_dominance(std::move(ladder), "increase/nondecrease ladder");
    }

    d.min_pow_t_prime = BigInt(2 * n - 2 * k + 1) * w_prime;
    std::tie(d.t, d.t_prime) = gadget_exponents(2, n, m, std::nullopt, d.min_pow_t_prime);
    if (bounds_only)
        return d;

    d.q_target = gadget_q_target(2, n, m, d.t, d.t_prime);
    d.w_c_total = c_block_total(2, n, m, d.t, d.t_prime);
    d.w_cp_total = cp_block_total(2, n, m, d.t_prime);
    d.m_count = 2 * k;
    d.a_count = 2 * (n - k);
    d.c_count = m * (r + 1);
    d.cp_count = m * (r + 1);

    const BigInt q =
        2 * (w_a + w_m + d.w_c_total + d.w_cp_total + pow10(d.t_prime) + 1);
    d.quota = q;

    // Coalition-size identities behind the construction.
    for (int j = 0; j <= y1; ++j)
        require_feasible(1 + delta + nn + BigInt(mm) * (r + 1) +
                                 beta[static_cast<std::size_t>(j)] + j ==
                             x,
                         "counter-route coalition size != x");
    for (int i = 0; i <= 2 * n - 2 * k; ++i)
        require_feasible(1 + delta + alpha[static_cast<std::size_t>(i)] + i == x,
                         "ladder-route coalition size != x");

    GroupSpec d_group = GroupSpec::repeated("D", Weight(1), delta.convert_to<long long>());
    GroupSpec s_group{"S", {}};
    for (int i = 1; i <= u; ++i)
        for (int j = 0; j <= y_exps[static_cast<std::size_t>(i - 1)]; ++j)
            s_group.weights.push_back(positive_weight(
                q - d.q_target - beta[static_cast<std::size_t>(j)] * v_ladder[static_cast<std::size_t>(j)] -
                    j * vp_ladder[static_cast<std::size_t>(i - 1)] - delta - 1,
                "group S"));
    std::vector<GroupSpec> v_groups;
    for (int i = 0; i <= y1; ++i)
        v_groups.push_back(GroupSpec::repeated(
            "V_" + std::to_string(i), Weight(BigInt(v_ladder[static_cast<std::size_t>(i)])),
            beta[static_cast<std::size_t>(i)].convert_to<long long>()));
    std::vector<GroupSpec> vp_groups;
    for (int i = 1; i <= u; ++i)
        vp_groups.push_back(GroupSpec::repeated(
            "Vp_" + std::to_string(i), Weight(BigInt(vp_ladder[static_cast<std::size_t>(i - 1)])),
            y_exps[static_cast<std::size_t>(i - 1)]));
    GroupSpec t_group{"T", {}};
    for (int i = 0; i <= 2 * n - 2 * k; ++i)
        t_group.weights.push_back(positive_weight(
            q - alpha[static_cast<std::size_t>(i)] * ws_ladder[static_cast<std::size_t>(i)] -
                i * w_prime - delta - 1,
            "group T"));
    std::vector<GroupSpec> ws_groups;
    for (int i = 0; i <= 2 * n - 2 * k; ++i)
        ws_groups.push_back(GroupSpec::repeated(
            "Ws_" + std::to_string(i), Weight(BigInt(ws_ladder[static_cast<std::size_t>(i)])),
            alpha[static_cast<std::size_t>(i)].convert_to<long long>()));
    GroupSpec wp_group =
        GroupSpec::repeated("Wp", Weight(BigInt(w_prime)), 2 * n - 2 * k);

    // Everything below the (def) rows must stay under one t'-digit.
    BigInt small_total = group_total(d_group) + group_total(wp_group);
    for (const auto& g : v_groups)
        small_total += group_total(g);
    for (const auto& g : vp_groups)
        small_total += group_total(g);
    for (const auto& g : ws_groups)
        small_total += group_total(g);
    require_feasible(small_total < pow10(d.t_prime),
                     "ladder players overflow the t' digit");
    const auto [s1, s2] = two_smallest_of({&s_group, &t_group});
    require_feasible(s1 + s2 > q, "two heavy-row players do not exceed the quota");
    require_feasible(1 + w_a + w_m + d.w_c_total + d.w_cp_total + small_total < q - 1,
                     "light players reach q-1");

    d.tail.push_back(std::move(d_group));
    d.tail.push_back(std::move(s_group));
    for (auto& g : v_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : vp_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(t_group));
    for (auto& g : ws_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(wp_group));

    long long explicit_players = 1 + d.a_count + d.c_count + d.cp_count;
    for (const GroupSpec& g : d.tail)
        explicit_players += static_cast<long long>(g.weights.size());
    const BigInt filler = P - explicit_players;
    require_feasible(filler >= 0, "explicit groups exceed the declared player count P");
    d.tail.push_back(GroupSpec::repeated("Z", Weight(BigInt(q)), filler.convert_to<long long>()));
    d.expected_players = explicit_players + filler.convert_to<long long>();

    ReductionConstants c("thm2");
    put_shape_constants(c, n, m, k, r, w_m, w_a, d.w_c_total, d.w_cp_total);
    c.put("P", P);
    c.put("delta", delta);
    c.put("x", x);
    c.put("k_prime", k_prime);
    c.put("z", z);
    c.put("y_exponents", to_bigint_seq(y_exps));
    c.put("alpha", alpha);
    c.put("beta", beta);
    c.put("v", v_ladder);
    c.put("v_prime", vp_ladder);
    c.put("w_star", ws_ladder);
    c.put("w_prime", w_prime);
    c.put("t", d.t);
    c.put("t_prime", d.t_prime);
    c.put("q2", d.q_target);
    c.put("q", q);
    d.constants = std::move(c);
    return d;
}

// ---------------------------------------------------------------------------
// Decrease / nonincrease of the Shapley-Shubik index. Five rounded counters
// gamma_1..gamma_5 with exact residuals drive the pivotal-coalition counts;
// a deep weight-ladder family keeps every relevant coalition at size s.

Derivation derive_thm3bc_ss(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                            bool bounds_only) {
    if (k < 3 || k >= n)
        throw InvalidArgumentError("construction requires 3 <= k < n");

    Derivation d;
    d.set_id = 4;
    const int r = ceil_log2(BigInt(n)) - 1;
    const long long nn = n, kk = k;
    const BigInt mr = BigInt(m) * (r + 1);

    const BigInt P_prime = 8 * nn * kk * kk * kk - 4 * kk * kk * kk * kk +
                           4 * nn * nn * kk + 12 * nn * kk * kk - 6 * kk * kk * kk +
                           53 * nn * nn - 7 * nn * kk + 12 * kk * kk + 10 * nn + 11 * kk +
                           BigInt(2 * nn - kk + 2) * mr - 1;
    const BigInt delta = require_integral(
        ceil_rational(BigRat(5 * P_prime, 4) - 9 * nn - BigRat(9 * mr, 4)), "ceil");
    const BigInt P = P_prime + delta;
    const BigInt s = 4 * nn + mr + delta;

    require_feasible(P - s > 0, "coalition size reaches the player count");
    BigRat k_prime = 1;
    for (int i = 1; i <= k; ++i)
        k_prime *= BigRat(P + i, P - s + i - 1);
    require_feasible(k_prime > BigRat(9 * pow2(k - 3)) && k_prime < BigRat(pow2(2 * k)),
                     "k' outside (9*2^(k-3), 2^(2k))");
    require_feasible(BigRat(s) >= BigRat(5 * P, 9), "s below (5/9)P");
    require_feasible(BigRat(s) <= BigRat(2 * P, 3) - 1, "s above (2/3)P - 1");

    const BigRat y = k_prime - BigRat(pow2(k));
    require_feasible(y > 1, "y = k' - 2^k not above 1");

    const BigInt gamma1 = require_integral(ceil_rational(k_prime - 1), "ceil");
    const BigRat eps1 = k_prime - BigRat(gamma1);
    const BigInt gamma2 =
        require_integral(floor_rational(BigRat(pow2(2 * n - 2 * k - 1)) * y + 1), "floor");
    const BigRat eps2 = BigRat(gamma2) - BigRat(pow2(2 * n - 2 * k - 1)) * y;
    const BigInt gamma3 =
        require_integral(ceil_rational(BigRat(pow2(2 * n - 2 * k - 1)) * eps1), "ceil");
    const BigRat eps3 = BigRat(gamma3) - BigRat(pow2(2 * n - 2 * k - 1)) * eps1;
    const BigRat e4 = BigRat(pow2(n - k + 1)) * y + BigRat(pow2(n)) -
                      (BigRat(kk) * eps2 + BigRat(pow2(k) - kk - 2) * eps3) /
                          BigRat(pow2(n - k - 1));
    const BigInt gamma4 = require_integral(ceil_rational(e4 - 1), "ceil");
    const BigRat eps4 = e4 - BigRat(gamma4);
    const BigInt gamma5 = require_integral(ceil_rational(y), "ceil");

    require_feasible(eps1 > 0, "residual eps1 not positive");
    require_feasible(eps2 > 0, "residual eps2 not positive");
    require_feasible(eps3 >= 0 && eps3 < 1, "residual eps3 outside [0,1)");
    require_feasible(eps4 > 0, "residual eps4 not positive");
    for (const BigInt* g : {&gamma1, &gamma2, &gamma3, &gamma4, &gamma5})
        require_feasible(*g >= 1, "a rounded counter gamma_i is not positive");

    const std::vector<int> a1 = binary_exponents(gamma1);
    const std::vector<int> a2 = binary_exponents(gamma2);
    const std::vector<int> a3 = binary_exponents(gamma3);
    const std::vector<int> a4 = binary_exponents(gamma4);
    const std::vector<int> a5 = binary_exponents(gamma5);
    const int b1 = static_cast<int>(a1.size()), b2 = static_cast<int>(a2.size()),
              b3 = static_cast<int>(a3.size()), b4 = static_cast<int>(a4.size()),
              b5 = static_cast<int>(a5.size());
    const int a11 = a1.front(), a21 = a2.front(), a31 = a3.front(), a41 = a4.front(),
              a51 = a5.front();

    require_feasible((5 * kk * kk - 7 * kk - 4) % 2 == 0, "d not integral");
    const BigInt dd = BigInt(5 * kk * kk - 7 * kk - 4) / 2;
    require_feasible(dd >= 1, "d not positive");

    // Ladders. Each family base exceeds the running total of all lighter
    // ladder players, so the families cannot stand in for one another.
    std::vector<BigInt> e_lad; // e_1 .. e_{b4}
    {
        const BigInt base = 1 + (delta + 1) * dd;
        BigInt acc = 0;
        for (int i = 1; i <= b4; ++i) {
            BigInt val = base + acc;
            acc += BigInt(a4[static_cast<std::size_t>(i - 1)]) * val;
            e_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> es_lad; // e*_0 .. e*_{a41}
    {
        const BigInt base = 1 + BigInt(a4.back() + 1) * e_lad.back();
        BigInt acc = 0;
        for (int i = 0; i <= a41; ++i) {
            require_feasible(3 * n - 1 - i >= 1, "e* family width exhausted");
            BigInt val = base + acc;
            acc += BigInt(3 * n - 1 - i) * val;
            es_lad.push_back(std::move(val));
        }
    }
    require_feasible(3 * n - a41 >= 1, "t'' coefficient not positive");
    const BigInt t2 = BigInt(3 * n - a41) * es_lad.back();
    std::vector<BigInt> tt_lad; // t_1 .. t_{b1}
    {
        const BigInt base = 1 + BigInt(2 * n - 2 * k) * t2;
        BigInt acc = 0;
        for (int i = 1; i <= b1; ++i) {
            BigInt val = base + acc;
            acc += BigInt(a1[static_cast<std::size_t>(i - 1)]) * val;
            tt_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> ts_lad; // t*_1 .. t*_{k-1}
    {
        const BigInt base = 1 + BigInt(a1.back() + 1) * tt_lad.back();
        BigInt acc = 0;
        for (int i = 1; i <= k - 1; ++i) {
            BigInt val = base + acc;
            acc += BigInt(i) * val;
            ts_lad.push_back(std::move(val));
        }
    }
    const int m3 = std::max(2 * n - 2 * k - 1 + a11, a31);
    require_feasible(m3 <= 4 * n - 2 * k, "t** family width exhausted");
    std::vector<BigInt> tss_lad; // t**_0 .. t**_{m3}
    {
        const BigInt base = 1 + BigInt(kk) * ts_lad.back();
        BigInt acc = 0;
        for (int i = 0; i <= m3; ++i) {
            BigInt val = base + acc;
            acc += BigInt(4 * n - 2 - i) * val;
            tss_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> u_lad; // u_1 .. u_{b2}
    {
        const BigInt base = 1 + BigInt(4 * n - 2 * k - m3 + 1) * tss_lad.back();
        BigInt acc = 0;
        for (int i = 1; i <= b2; ++i) {
            BigInt val = base + acc;
            acc += BigInt(a2[static_cast<std::size_t>(i - 1)]) * val;
            u_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> us_lad; // u*_0 .. u*_{a21}
    {
        const BigInt base = 1 + BigInt(a2.back() + 1) * u_lad.back();
        BigInt acc = 0;
        for (int i = 0; i <= a21; ++i) {
            require_feasible(4 * n - 2 - i >= 1, "u* family width exhausted");
            BigInt val = base + acc;
            acc += BigInt(4 * n - 2 - i) * val;
            us_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> v_lad; // v_1 .. v_{b3}
    {
        require_feasible(4 * n - 1 - a21 >= 1, "v base coefficient not positive");
        const BigInt base = 1 + BigInt(4 * n - 1 - a21) * us_lad.back();
        BigInt acc = 0;
        for (int i = 1; i <= b3; ++i) {
            BigInt val = base + acc;
            acc += BigInt(a3[static_cast<std::size_t>(i - 1)]) * val;
            v_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> xs_lad; // x*_0 .. x*_{2n-k-1}
    {
        const BigInt base = 1 + BigInt(a3.back() + 1) * v_lad.back();
        BigInt acc = 0;
        for (int i = 0; i <= 2 * n - k - 1; ++i) {
            BigInt val = base + acc;
            acc += BigInt(4 * n - 2 * k - i) * val;
            xs_lad.push_back(std::move(val));
        }
    }
    // One more than the player count of the last x* group (2n-k+1 players),
    // like every other connector in the ladder; with the count itself the
    // connector ties the group's total exactly and equal-weight coalitions
    // of a different size appear (witnessed by exact counting at n=4, k=3).
    const BigInt y_prime = BigInt(2 * n - k + 2) * xs_lad.back();
    std::vector<BigInt> yy_lad; // y_1 .. y_{b5}
    {
        const BigInt base = 1 + BigInt(2 * n - k + 1) * y_prime;
        BigInt acc = 0;
        for (int i = 1; i <= b5; ++i) {
            BigInt val = base + acc;
            acc += BigInt(a5[static_cast<std::size_t>(i - 1)]) * val;
            yy_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> ys_lad; // y*_0 .. y*_{2n-k+a51}
    {
        const BigInt base = 1 + BigInt(a5.back() + 1) * yy_lad.back();
        BigInt acc = 0;
        for (int i = 0; i <= 2 * n - k + a51; ++i) {
            require_feasible(4 * n - 4 - i >= 1, "y* family width exhausted");
            BigInt val = base + acc;
            acc += BigInt(4 * n - 4 - i) * val;
            ys_lad.push_back(std::move(val));
        }
    }
    require_feasible(2 * n + k - 3 - a51 >= 1, "z coefficient not positive");
    const BigInt zz = BigInt(2 * n + k - 3 - a51) * ys_lad.back();
    std::vector<BigInt> zs_lad; // z*_0 .. z*_{2n-k-1}
    {
        const BigInt base = 1 + BigInt(2 * n - k) * zz;
        BigInt acc = 0;
        for (int i = 0; i <= 2 * n - k - 1; ++i) {
            BigInt val = base + acc;
            acc += (BigInt(4 * n) + mr - 1 - i) * val;
            zs_lad.push_back(std::move(val));
        }
    }
    const BigInt t_star = (BigInt(2 * n) + mr + k + 1) * zs_lad.back();

    {
        std::vector<std::pair<BigInt, BigInt>> ladder{{dd, delta}};
        for (int i = 1; i <= b4; ++i)
            ladder.emplace_back(e_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(a4[static_cast<std::size_t>(i - 1)]));
        for (int i = 0; i <= a41; ++i)
            ladder.emplace_back(es_lad[static_cast<std::size_t>(i)], BigInt(3 * n - 1 - i));
        ladder.emplace_back(t2, BigInt(2 * n - 2 * k - 1));
        for (int i = 1; i <= b1; ++i)
            ladder.emplace_back(tt_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(a1[static_cast<std::size_t>(i - 1)]));
        for (int i = 1; i <= k - 1; ++i)
            ladder.emplace_back(ts_lad[static_cast<std::size_t>(i - 1)], BigInt(i));
        for (int i = 0; i <= m3; ++i)
            ladder.emplace_back(tss_lad[static_cast<std::size_t>(i)], BigInt(4 * n - 2 * k - i));
        for (int i = 1; i <= b2; ++i)
            ladder.emplace_back(u_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(a2[static_cast<std::size_t>(i - 1)]));
        for (int i = 0; i <= a21; ++i)
            ladder.emplace_back(us_lad[static_cast<std::size_t>(i)], BigInt(4 * n - 2 - i));
        for (int i = 1; i <= b3; ++i)
            ladder.emplace_back(v_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(a3[static_cast<std::size_t>(i - 1)]));
        for (int i = 0; i <= 2 * n - k - 1; ++i)
            ladder.emplace_back(xs_lad[static_cast<std::size_t>(i)], BigInt(4 * n - 2 * k - i));
        ladder.emplace_back(y_prime, BigInt(2 * n - k));
        for (int i = 1; i <= b5; ++i)
            ladder.emplace_back(yy_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(a5[static_cast<std::size_t>(i - 1)]));
        for (int i = 0; i <= 2 * n - k + a51; ++i)
            ladder.emplace_back(ys_lad[static_cast<std::size_t>(i)], BigInt(4 * n - 4 - i));
        ladder.emplace_back(zz, BigInt(2 * n - k - 1));
        for (int i = 0; i <= 2 * n - k - 1; ++i)
            ladder.emplace_back(zs_lad[static_cast<std::size_t>(i)], BigInt(4 * n) + mr - 1 - i);
        check_ladder_dominance(std::move(ladder), "decrease/nonincrease ladder");
    }

    d.min_pow_t_prime = BigInt(k - 1) * (t_star + 2 * k + 3);
    std::tie(d.t, d.t_prime) = gadget_exponents(4, n, m, std::nullopt, d.min_pow_t_prime);
    if (bounds_only)
        return d;

    d.q_target = gadget_q_target(4, n, m, d.t, d.t_prime);
    d.w_c_total = c_block_total(4, n, m, d.t, d.t_prime);
    d.w_cp_total = cp_block_total(4, n, m, d.t_prime);
    d.m_count = 2 * k;
    d.a_count = 2 * (n - k);
    d.c_count = m * (r + 1);
    d.cp_count = m * (r + 1);

    auto marker = [&](int i) { return pow10(d.t * (m + 1) + 2 * i); };
    BigInt marker_sum = 0;
    for (int i = 1; i <= k; ++i)
        marker_sum += marker(i);
    const BigInt q = 2 * (w_m + w_a + d.w_c_total + 9 * marker_sum + pow10(d.t) + 1);
    d.quota = q;
    const BigInt dd_total = delta * dd;

    require_feasible(s == 4 * nn + mr + delta, "coalition size formula drifted");

    // --- groups, in table order ---
    GroupSpec d_group = GroupSpec::repeated("D", Weight(BigInt(dd)),
                                            delta.convert_to<long long>());
    std::vector<GroupSpec> e_groups;
    for (int i = 1; i <= b4; ++i)
        e_groups.push_back(GroupSpec::repeated("E_" + std::to_string(i),
                                               Weight(BigInt(e_lad[static_cast<std::size_t>(i - 1)])),
                                               a4[static_cast<std::size_t>(i - 1)]));
    std::vector<GroupSpec> es_groups;
    for (int i = 0; i <= a41; ++i)
        es_groups.push_back(GroupSpec::repeated("Es_" + std::to_string(i),
                                                Weight(BigInt(es_lad[static_cast<std::size_t>(i)])),
                                                3 * n - 1 - i));
    GroupSpec r_group{"R", {}};
    for (int i = 1; i <= b4; ++i)
        for (int j = 0; j <= a4[static_cast<std::size_t>(i - 1)]; ++j)
            r_group.weights.push_back(positive_weight(
                q - d.q_target - j * e_lad[static_cast<std::size_t>(i - 1)] -
                    BigInt(3 * n - 1 - j) * es_lad[static_cast<std::size_t>(j)] - dd_total - 1,
                "group R"));
    GroupSpec s_group{"S", {}};
    for (int i1 = 0; i1 <= 2 * n - 2 * k - 1; ++i1)
        for (int i2 = 1; i2 <= b1; ++i2)
            for (int j = 0; j <= a1[static_cast<std::size_t>(i2 - 1)]; ++j) {
                require_feasible(4 * n - 2 * k - i1 - j >= 0, "t** coefficient negative");
                s_group.weights.push_back(positive_weight(
                    q - 4 * marker_sum - d.w_c_total - t_star - (3 * kk + 1) - i1 * t2 -
                        j * tt_lad[static_cast<std::size_t>(i2 - 1)] -
                        BigInt(4 * n - 2 * k - i1 - j) *
                            tss_lad[static_cast<std::size_t>(i1 + j)] -
                        dd_total - 1,
                    "group S"));
            }
    GroupSpec sp_group{"Sp", {}};
    for (int i = 0; i <= k - 3; ++i) {
        BigInt w = t_star + (2 * kk + 3 + i);
        if (i >= 1)
            w -= BigInt(i) * ts_lad[static_cast<std::size_t>(i - 1)];
        sp_group.weights.push_back(positive_weight(std::move(w), "group Sp"));
    }
    for (int factor = 4; factor >= 2; --factor)
        for (int i = 1; i <= k; ++i)
            sp_group.weights.push_back(Weight(BigInt(factor * marker(i))));
    GroupSpec t_group = GroupSpec::repeated("T", Weight(BigInt(t2)), 2 * n - 2 * k - 1);
    std::vector<GroupSpec> tt_groups;
    for (int i = 1; i <= b1; ++i)
        tt_groups.push_back(GroupSpec::repeated("T_" + std::to_string(i),
                                                Weight(BigInt(tt_lad[static_cast<std::size_t>(i - 1)])),
                                                a1[static_cast<std::size_t>(i - 1)]));
    std::vector<GroupSpec> ts_groups;
    for (int i = 1; i <= k - 1; ++i)
        ts_groups.push_back(GroupSpec::repeated("Ts_" + std::to_string(i),
                                                Weight(BigInt(ts_lad[static_cast<std::size_t>(i - 1)])),
                                                i));
    std::vector<GroupSpec> tss_groups;
    for (int i = 0; i <= m3; ++i)
        tss_groups.push_back(GroupSpec::repeated("Tss_" + std::to_string(i),
                                                 Weight(BigInt(tss_lad[static_cast<std::size_t>(i)])),
                                                 4 * n - 2 * k - i));
    GroupSpec u_group{"U", {}};
    for (int i1 = 1; i1 <= k; ++i1)
        for (int i2 = 1; i2 <= b2; ++i2)
            for (int j = 0; j <= a2[static_cast<std::size_t>(i2 - 1)]; ++j)
                u_group.weights.push_back(positive_weight(
                    q - marker(i1) - 1 - d.w_c_total -
                        j * u_lad[static_cast<std::size_t>(i2 - 1)] -
                        BigInt(4 * n - 2 - j) * us_lad[static_cast<std::size_t>(j)] - dd_total -
                        1,
                    "group U"));
    std::vector<GroupSpec> uu_groups;
    for (int i = 1; i <= b2; ++i)
        uu_groups.push_back(GroupSpec::repeated("U_" + std::to_string(i),
                                                Weight(BigInt(u_lad[static_cast<std::size_t>(i - 1)])),
                                                a2[static_cast<std::size_t>(i - 1)]));
    std::vector<GroupSpec> us_groups;
    for (int i = 0; i <= a21; ++i)
        us_groups.push_back(GroupSpec::repeated("Us_" + std::to_string(i),
                                                Weight(BigInt(us_lad[static_cast<std::size_t>(i)])),
                                                4 * n - 2 - i));
    GroupSpec v_group{"V", {}};
    for (int i = 1; i <= b3; ++i)
        for (int j = 0; j <= a3[static_cast<std::size_t>(i - 1)]; ++j)
            v_group.weights.push_back(positive_weight(
                q - 4 * marker_sum - d.w_c_total - t_star - (3 * kk + 1) -
                    j * v_lad[static_cast<std::size_t>(i - 1)] -
                    BigInt(4 * n - 2 * k - j) * tss_lad[static_cast<std::size_t>(j)] - dd_total -
                    1,
                "group V"));
    std::vector<GroupSpec> vv_groups;
    for (int i = 1; i <= b3; ++i)
        vv_groups.push_back(GroupSpec::repeated("V_" + std::to_string(i),
                                                Weight(BigInt(v_lad[static_cast<std::size_t>(i - 1)])),
                                                a3[static_cast<std::size_t>(i - 1)]));
    GroupSpec x_group{"X", {}};
    for (int i = 0; i <= 2 * n - k - 1; ++i)
        x_group.weights.push_back(positive_weight(
            q - 4 * marker_sum - d.w_c_total - (kk - 1) - i * zz -
                BigInt(4 * n - 2 * k - i) * xs_lad[static_cast<std::size_t>(i)] - dd_total - 1,
            "group X"));
    std::vector<GroupSpec> xs_groups;
    for (int i = 0; i <= 2 * n - k - 1; ++i)
        xs_groups.push_back(GroupSpec::repeated("Xs_" + std::to_string(i),
                                                Weight(BigInt(xs_lad[static_cast<std::size_t>(i)])),
                                                4 * n - 2 * k - i));
    GroupSpec y_group{"Y", {}};
    for (int i1 = 1; i1 <= k; ++i1)
        for (int i2 = 0; i2 <= 2 * n - k; ++i2)
            for (int i3 = 1; i3 <= b5; ++i3)
                for (int j = 0; j <= a5[static_cast<std::size_t>(i3 - 1)]; ++j) {
                    require_feasible(4 * n - 4 - i2 - j >= 0, "y* coefficient negative");
                    y_group.weights.push_back(positive_weight(
                        q - 5 * marker(i1) - 2 - d.w_c_total - i2 * y_prime -
                            j * yy_lad[static_cast<std::size_t>(i3 - 1)] -
                            BigInt(4 * n - 4 - i2 - j) *
                                ys_lad[static_cast<std::size_t>(i2 + j)] -
                            dd_total - 1,
                        "group Y"));
                }
    GroupSpec yp_group = GroupSpec::repeated("Yp", Weight(BigInt(y_prime)), 2 * n - k);
    std::vector<GroupSpec> yy_groups;
    for (int i = 1; i <= b5; ++i)
        yy_groups.push_back(GroupSpec::repeated("Y_" + std::to_string(i),
                                                Weight(BigInt(yy_lad[static_cast<std::size_t>(i - 1)])),
                                                a5[static_cast<std::size_t>(i - 1)]));
    std::vector<GroupSpec> ys_groups;
    for (int i = 0; i <= 2 * n - k + a51; ++i)
        ys_groups.push_back(GroupSpec::repeated("Ys_" + std::to_string(i),
                                                Weight(BigInt(ys_lad[static_cast<std::size_t>(i)])),
                                                4 * n - 4 - i));
    GroupSpec z_group{"Z", {}};
    for (int i = 0; i <= 2 * n - k - 1; ++i)
        z_group.weights.push_back(positive_weight(
            q - i * zz - (BigInt(4 * n) + mr - 1 - i) * zs_lad[static_cast<std::size_t>(i)] -
                dd_total - 1,
            "group Z"));
    GroupSpec zp_group = GroupSpec::repeated("Zp", Weight(BigInt(zz)), 2 * n - k - 1);
    std::vector<GroupSpec> zs_groups;
    for (int i = 0; i <= 2 * n - k - 1; ++i)
        zs_groups.push_back(
            GroupSpec::repeated("Zs_" + std::to_string(i),
                                Weight(BigInt(zs_lad[static_cast<std::size_t>(i)])),
                                (BigInt(4 * n) + mr - 1 - i).convert_to<long long>()));

    const auto [s1, s2] = two_smallest_of(
        {&r_group, &s_group, &u_group, &v_group, &x_group, &y_group, &z_group});
    require_feasible(s1 + s2 > q, "two heavy-row players do not exceed the quota");

    BigInt light_total = 1 + w_m + w_a + d.w_c_total + d.w_cp_total + group_total(d_group) +
                         group_total(sp_group) + group_total(t_group) + group_total(yp_group) +
                         group_total(zp_group);
    BigInt sub_tstar_total = group_total(d_group) + group_total(t_group) +
                             group_total(yp_group) + group_total(zp_group);
    auto fold = [&](const std::vector<GroupSpec>& gs) {
        for (const auto& g : gs) {
            const BigInt total = group_total(g);
            light_total += total;
            sub_tstar_total += total;
        }
    };
    fold(e_groups);
    fold(es_groups);
    fold(tt_groups);
    fold(ts_groups);
    fold(tss_groups);
    fold(uu_groups);
    fold(us_groups);
    fold(vv_groups);
    fold(xs_groups);
    fold(yy_groups);
    fold(ys_groups);
    fold(zs_groups);
    for (const Weight& w : sp_group.weights)
        if (w.value() <= t_star + 2 * kk + 3)
            sub_tstar_total += w.value();
    require_feasible(sub_tstar_total < pow10(d.t_prime),
                     "ladder players overflow the t' digit");
    require_feasible(light_total < q - 1, "light players reach q-1");

    d.tail.push_back(std::move(d_group));
    for (auto& g : e_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : es_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(r_group));
    d.tail.push_back(std::move(s_group));
    d.tail.push_back(std::move(sp_group));
    d.tail.push_back(std::move(t_group));
    for (auto& g : tt_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : ts_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : tss_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(u_group));
    for (auto& g : uu_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : us_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(v_group));
    for (auto& g : vv_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(x_group));
    for (auto& g : xs_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(y_group));
    d.tail.push_back(std::move(yp_group));
    for (auto& g : yy_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : ys_groups)
        d.tail.push_back(std::move(g));
    d.tail.push_back(std::move(z_group));
    d.tail.push_back(std::move(zp_group));
    for (auto& g : zs_groups)
        d.tail.push_back(std::move(g));

    long long explicit_players = 1 + d.a_count + d.c_count + d.cp_count;
    for (const GroupSpec& g : d.tail)
        explicit_players += static_cast<long long>(g.weights.size());
    const BigInt filler = P - explicit_players;
    require_feasible(filler >= 0, "explicit groups exceed the declared player count P");
    d.tail.push_back(
        GroupSpec::repeated("filler", Weight(BigInt(q)), filler.convert_to<long long>()));
    d.expected_players = explicit_players + filler.convert_to<long long>();

    ReductionConstants c("thm3bc_ss");
    put_shape_constants(c, n, m, k, r, w_m, w_a, d.w_c_total, d.w_cp_total);
    c.put("P_prime", P_prime);
    c.put("delta", delta);
    c.put("P", P);
    c.put("s", s);
    c.put("k_prime", k_prime);
    c.put("y", y);
    c.put("gamma_1", gamma1);
    c.put("gamma_2", gamma2);
    c.put("gamma_3", gamma3);
    c.put("gamma_4", gamma4);
    c.put("gamma_5", gamma5);
    c.put("epsilon_1", eps1);
    c.put("epsilon_2", eps2);
    c.put("epsilon_3", eps3);
    c.put("epsilon_4", eps4);
    c.put("alpha_1", to_bigint_seq(a1));
    c.put("alpha_2", to_bigint_seq(a2));
    c.put("alpha_3", to_bigint_seq(a3));
    c.put("alpha_4", to_bigint_seq(a4));
    c.put("alpha_5", to_bigint_seq(a5));
    c.put("d", dd);
    c.put("e", e_lad);
    c.put("e_star", es_lad);
    c.put("t_doubleprime", t2);
    c.put("t_i", tt_lad);
    c.put("t_star_i", ts_lad);
    c.put("t_doublestar", tss_lad);
    c.put("u", u_lad);
    c.put("u_star", us_lad);
    c.put("v", v_lad);
    c.put("x_star", xs_lad);
    c.put("y_prime", y_prime);
    c.put("y_i", yy_lad);
    c.put("y_star", ys_lad);
    c.put("z", zz);
    c.put("z_star_i", zs_lad);
    c.put("t_star", t_star);
    c.put("t", d.t);
    c.put("t_prime", d.t_prime);
    c.put("q4", d.q_target);
    c.put("q", q);
    d.constants = std::move(c);
    return d;
}

// ---------------------------------------------------------------------------
// Maintain the Shapley-Shubik index. The pivotal count factors as
// (number of counter-row choices) * (satisfying assignments); all relevant
// coalitions have size s.

Derivation derive_thm3d_ss(int n, int m, int k, const BigInt& ell, const BigInt& w_m,
                           const BigInt& w_a, bool bounds_only) {
    if (n < 3)
        throw InvalidArgumentError("construction requires n >= 3");
    if (k < 1 || k > n)
        throw InvalidArgumentError("construction requires 1 <= k <= n");
    if (ell < 1 || ell > pow2(n))
        throw InvalidArgumentError("construction requires 1 <= ell <= 2^n");

    Derivation d;
    d.set_id = 2;
    const int r = ceil_log2(BigInt(n)) - 1;
    const long long nn = n;
    const BigInt mr = BigInt(m) * (r + 1);

    const std::vector<int> ell_exps = binary_exponents(ell);
    const int h = static_cast<int>(ell_exps.size());
    const int ell1 = ell_exps.front();

    const BigInt alpha =
        nn * nn * nn * nn + 2 * nn * nn * nn + 13 * nn * nn + 8 * nn + (3 * nn + 3) * mr + 2;
    require_feasible(alpha >= 256, "alpha below 256");
    const BigInt P = alpha * alpha - k;
    const BigInt z_star = BigInt(2 * k) * floor_log2(alpha) + ell1;
    const BigInt s = nn + mr + z_star + 1;

    require_feasible(P - s > 0, "coalition size reaches the player count");
    BigInt y = 1;
    for (int i = 0; i < k; ++i)
        y *= (P - s + i);
    BigInt rising = 1;
    for (int i = 1; i <= k; ++i)
        rising *= (P + i);
    const BigRat k_prime = BigRat(rising, y);
    const BigInt z = rising - y;
    require_feasible(z >= 1, "z not positive");

    const std::vector<int> y_exps = binary_exponents(y);
    const std::vector<int> z_exps = binary_exponents(z);
    const int hp = static_cast<int>(y_exps.size());
    const int hpp = static_cast<int>(z_exps.size());
    const int y1 = y_exps.front();
    const int z1 = z_exps.front();
    require_feasible(BigInt(z1) <= z_star, "z digit width exceeds z*");
    require_feasible(BigInt(ell1 + y1 + 1) <= s, "w' ladder deeper than s");
    const long long z_star_l = z_star.convert_to<long long>();

    std::vector<BigInt> u_lad; // u_1 .. u_{h''}
    {
        BigInt acc = 0;
        for (int i = 1; i <= hpp; ++i) {
            BigInt val = 1 + acc;
            acc += BigInt(z_exps[static_cast<std::size_t>(i - 1)]) * val;
            u_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> up_lad; // u'_1 .. u'_{z1+1}
    {
        const BigInt base = BigInt(z_exps.back() + 1) * u_lad.back();
        BigInt acc = 0;
        for (int i = 1; i <= z1 + 1; ++i) {
            BigInt val = base + acc;
            acc += (z_star - i + 1) * val;
            up_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> v_lad; // v_1 .. v_h
    {
        const BigInt base = (z_star - z1 + 1) * up_lad.back();
        BigInt acc = 0;
        for (int i = 1; i <= h; ++i) {
            BigInt val = base + acc;
            acc += BigInt(ell_exps[static_cast<std::size_t>(i - 1)]) * val;
            v_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> w_lad; // w_1 .. w_{h'}
    {
        const BigInt base = BigInt(ell_exps.back() + 1) * v_lad.back();
        BigInt acc = 0;
        for (int i = 1; i <= hp; ++i) {
            BigInt val = base + acc;
            acc += BigInt(y_exps[static_cast<std::size_t>(i - 1)]) * val;
            w_lad.push_back(std::move(val));
        }
    }
    std::vector<BigInt> wp_lad; // w'_1 .. w'_{ell1+y1+1}
    {
        const BigInt base = BigInt(y_exps.back() + 1) * w_lad.back();
        BigInt acc = 0;
        for (int i = 1; i <= ell1 + y1 + 1; ++i) {
            BigInt val = base + acc;
            acc += (s - i) * val;
            wp_lad.push_back(std::move(val));
        }
    }

    {
        std::vector<std::pair<BigInt, BigInt>> ladder;
        for (int i = 1; i <= hpp; ++i)
            ladder.emplace_back(u_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(z_exps[static_cast<std::size_t>(i - 1)]));
        for (int i = 1; i <= z1 + 1; ++i)
            ladder.emplace_back(up_lad[static_cast<std::size_t>(i - 1)], z_star - i + 1);
        for (int i = 1; i <= h; ++i)
            ladder.emplace_back(v_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(ell_exps[static_cast<std::size_t>(i - 1)]));
        for (int i = 1; i <= hp; ++i)
            ladder.emplace_back(w_lad[static_cast<std::size_t>(i - 1)],
                                BigInt(y_exps[static_cast<std::size_t>(i - 1)]));
        for (int i = 1; i <= ell1 + y1 + 1; ++i)
            ladder.emplace_back(wp_lad[static_cast<std::size_t>(i - 1)], s - i);
        check_ladder_dominance(std::move(ladder), "maintain ladder");
    }

    d.min_pow_t_prime = BigInt(ell1 + y1 + 2) * wp_lad.back();
    std::tie(d.t, d.t_prime) = gadget_exponents(2, n, m, std::nullopt, d.min_pow_t_prime);
    if (bounds_only)
        return d;

    d.q_target = gadget_q_target(2, n, m, d.t, d.t_prime);
    d.w_c_total = c_block_total(2, n, m, d.t, d.t_prime);
    d.w_cp_total = cp_block_total(2, n, m, d.t_prime);
    d.m_count = 2 * k;
    d.a_count = 2 * (n - k);
    d.c_count = m * (r + 1);
    d.cp_count = m * (r + 1);

    // q* = total weight of the light side (everything except the heavy rows
    // and the filler), with the addable pool counted in.
    BigInt q_star = 1 + w_m + w_a + d.w_c_total + d.w_cp_total;
    for (int i = 1; i <= hpp; ++i)
        q_star += BigInt(z_exps[static_cast<std::size_t>(i - 1)]) *
                  u_lad[static_cast<std::size_t>(i - 1)];
    for (int i = 1; i <= z1 + 1; ++i)
        q_star += (z_star - i + 1) * up_lad[static_cast<std::size_t>(i - 1)];
    for (int i = 1; i <= h; ++i)
        q_star += BigInt(ell_exps[static_cast<std::size_t>(i - 1)]) *
                  v_lad[static_cast<std::size_t>(i - 1)];
    for (int i = 1; i <= hp; ++i)
        q_star += BigInt(y_exps[static_cast<std::size_t>(i - 1)]) *
                  w_lad[static_cast<std::size_t>(i - 1)];
    for (int i = 1; i <= ell1 + y1 + 1; ++i)
        q_star += (s - i) * wp_lad[static_cast<std::size_t>(i - 1)];
    const BigInt q = 2 * q_star + 1;
    d.quota = q;

    std::vector<GroupSpec> t_groups;
    for (int i = 1; i <= hpp; ++i) {
        GroupSpec g{"T_" + std::to_string(i), {}};
        for (int j = 0; j <= z_exps[static_cast<std::size_t>(i - 1)]; ++j)
            g.weights.push_back(positive_weight(
                q - d.q_target - j * u_lad[static_cast<std::size_t>(i - 1)] -
                    (z_star - j) * up_lad[static_cast<std::size_t>(j)] - 1,
                g.label));
        t_groups.push_back(std::move(g));
    }
    std::vector<GroupSpec> u_groups;
    for (int i = 1; i <= hpp; ++i)
        u_groups.push_back(GroupSpec::repeated("U_" + std::to_string(i),
                                               Weight(BigInt(u_lad[static_cast<std::size_t>(i - 1)])),
                                               z_exps[static_cast<std::size_t>(i - 1)]));
    std::vector<GroupSpec> up_groups;
    for (int i = 0; i <= z1; ++i)
        up_groups.push_back(GroupSpec::repeated("Up_" + std::to_string(i),
                                                Weight(BigInt(up_lad[static_cast<std::size_t>(i)])),
                                                z_star_l - i));
    std::vector<GroupSpec> v_groups;
    for (int i = 1; i <= h; ++i)
        v_groups.push_back(GroupSpec::repeated("V_" + std::to_string(i),
                                               Weight(BigInt(v_lad[static_cast<std::size_t>(i - 1)])),
                                               ell_exps[static_cast<std::size_t>(i - 1)]));
    std::vector<GroupSpec> w_groups;
    for (int i = 1; i <= hp; ++i)
        w_groups.push_back(GroupSpec::repeated("W_" + std::to_string(i),
                                               Weight(BigInt(w_lad[static_cast<std::size_t>(i - 1)])),
                                               y_exps[static_cast<std::size_t>(i - 1)]));
    std::vector<GroupSpec> wp_groups;
    for (int i = 1; i <= ell1 + y1 + 1; ++i)
        wp_groups.push_back(
            GroupSpec::repeated("Wp_" + std::to_string(i),
                                Weight(BigInt(wp_lad[static_cast<std::size_t>(i - 1)])),
                                (s - i).convert_to<long long>()));
    std::vector<GroupSpec> x_groups;
    for (int i = 1; i <= h; ++i)
        for (int j = 1; j <= hp; ++j) {
            GroupSpec g{"X_" + std::to_string(i) + "_" + std::to_string(j), {}};
            for (int a = 0; a <= ell_exps[static_cast<std::size_t>(i - 1)]; ++a)
                for (int b = 0; b <= y_exps[static_cast<std::size_t>(j - 1)]; ++b)
                    g.weights.push_back(positive_weight(
                        q - a * v_lad[static_cast<std::size_t>(i - 1)] -
                            b * w_lad[static_cast<std::size_t>(j - 1)] -
                            (s - 1 - a - b) * wp_lad[static_cast<std::size_t>(a + b)] - 1,
                        g.label));
            x_groups.push_back(std::move(g));
        }

    std::vector<const GroupSpec*> heavy;
    for (const auto& g : t_groups)
        heavy.push_back(&g);
    for (const auto& g : x_groups)
        heavy.push_back(&g);
    const auto [s1, s2] = two_smallest_of(heavy);
    require_feasible(s1 + s2 > q, "two heavy-row players do not exceed the quota");
    require_feasible(q_star < q - 1, "light players reach q-1");

    for (auto& g : t_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : u_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : up_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : v_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : w_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : wp_groups)
        d.tail.push_back(std::move(g));
    for (auto& g : x_groups)
        d.tail.push_back(std::move(g));

    long long explicit_players = 1 + d.a_count + d.c_count + d.cp_count;
    for (const GroupSpec& g : d.tail)
        explicit_players += static_cast<long long>(g.weights.size());
    const BigInt filler = P - explicit_players;
    require_feasible(filler >= 0, "explicit groups exceed the declared player count P");
    d.tail.push_back(
        GroupSpec::repeated("Y", Weight(BigInt(q)), filler.convert_to<long long>()));
    d.expected_players = explicit_players + filler.convert_to<long long>();

    ReductionConstants c("thm3d_ss");
    put_shape_constants(c, n, m, k, r, w_m, w_a, d.w_c_total, d.w_cp_total);
    c.put("ell", ell);
    c.put("ell_exponents", to_bigint_seq(ell_exps));
    c.put("alpha", alpha);
    c.put("P", P);
    c.put("z_star", z_star);
    c.put("s", s);
    c.put("k_prime", k_prime);
    c.put("y", y);
    c.put("y_exponents", to_bigint_seq(y_exps));
    c.put("z", z);
    c.put("z_exponents", to_bigint_seq(z_exps));
    c.put("u", u_lad);
    c.put("u_prime", up_lad);
    c.put("v", v_lad);
    c.put("w", w_lad);
    c.put("w_prime", wp_lad);
    c.put("t", d.t);
    c.put("t_prime", d.t_prime);
    c.put("q2", d.q_target);
    c.put("q_star", q_star);
    c.put("q", q);
    d.constants = std::move(c);
    return d;
}

} // namespace wvg::detail
