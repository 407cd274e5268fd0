// Acceptance suite: one pass/fail line per criterion. Exit code 0 iff every
// executed criterion passes. Criterion 7 needs minutes of CPU and gigabytes
// of memory, so it only runs with --long (see tests/CMakeLists.txt).

#include "wvg/control.hpp"
#include "wvg/counting.hpp"
#include "wvg/errors.hpp"
#include "wvg/game.hpp"
#include "wvg/gadgets.hpp"
#include "wvg/reductions.hpp"

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace wvg;

namespace {

struct Outcome {
    bool executed = false;
    bool passed = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

CountingStrategy with(CountingMethod m) {
    CountingStrategy s;
    s.method = m;
    return s;
}

// ---------------------------------------------------------------------------
// 1. Index engine equivalence on random games.

Outcome criterion1() {
    Outcome out;
    out.executed = true;
    std::mt19937 rng(106);
    std::uniform_int_distribution<int> n_dist(1, 12);
    std::uniform_int_distribution<unsigned long long> w_dist(0, 1000000);
    int games_checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = n_dist(rng);
        std::vector<Weight> ws;
        BigInt total = 0;
        for (int i = 0; i < n; ++i) {
            ws.emplace_back(w_dist(rng));
            total += ws.back().value();
        }
        std::uniform_int_distribution<long long> q_dist(
            1, std::max<long long>(1, (total + 10).convert_to<long long>()));
        const Game game(std::move(ws), BigInt(q_dist(rng)));
        BigRat phi_sum = 0;
        for (int i = 1; i <= n; ++i) {
            const RationalIndex b_enum = banzhaf(game, i, with(CountingMethod::Enumerate));
            const RationalIndex b_mitm = banzhaf(game, i, with(CountingMethod::MeetInTheMiddle));
            const RationalIndex b_dp = banzhaf(game, i, with(CountingMethod::SparseDp));
            const RationalIndex s_enum =
                shapley_shubik(game, i, with(CountingMethod::Enumerate));
            const RationalIndex s_mitm =
                shapley_shubik(game, i, with(CountingMethod::MeetInTheMiddle));
            const RationalIndex s_dp = shapley_shubik(game, i, with(CountingMethod::SparseDp));
            if (!(b_enum == b_mitm && b_enum == b_dp && s_enum == s_mitm && s_enum == s_dp)) {
                out.detail = "engine disagreement on game " + std::to_string(trial) +
                             ", player " + std::to_string(i);
                return out;
            }
            phi_sum += s_enum.value();
        }
        if (game.total_weight() >= game.quota() && phi_sum != 1) {
            out.detail = "sum of Shapley indices != 1 on winning grand coalition (game " +
                         std::to_string(trial) + ")";
            return out;
        }
        ++games_checked;
    }
    out.passed = true;
    out.detail = std::to_string(games_checked) + " games, 3 engines bit-identical";
    return out;
}

// ---------------------------------------------------------------------------
// 2. Assignment/coalition correspondence across all four weight sets.

Outcome criterion2() {
    Outcome out;
    out.executed = true;
    long long checks = 0;
    auto run_formula = [&](const CnfFormula& f) -> bool {
        for (int k = 1; k <= f.num_vars() - 1; ++k)
            for (int set_id = 1; set_id <= 4; ++set_id) {
                const BijectionReport rep = verify_bijection(f, k, set_id);
                ++checks;
                if (!rep.ok()) {
                    std::ostringstream msg;
                    msg << "set " << set_id << ", k " << k << ", formula "
                        << f.to_dimacs() << ": "
                        << (rep.failures.empty() ? "count mismatch" : rep.failures.front());
                    out.detail = msg.str();
                    return false;
                }
            }
        return true;
    };
    // Exhaustive up to n = 3, m = 4; seeded samples at n = 4 where full
    // enumeration would blow the runtime budget.
    for (int n = 2; n <= 3; ++n)
        for (const auto& f : enumerate_formulas(n, 4))
            if (!run_formula(f))
                return out;
    for (int m = 1; m <= 4; ++m)
        for (const auto& f : sample_formulas(4, m, 60, 4000u + static_cast<unsigned>(m)))
            if (!run_formula(f))
                return out;
    out.passed = true;
    out.detail = std::to_string(checks) + " (formula, k, set) checks, all bijective";
    return out;
}

// ---------------------------------------------------------------------------
// 3. Worked baseline of the increase construction.

Outcome criterion3() {
    Outcome out;
    out.executed = true;
    const CnfFormula or2 = CnfFormula::create(2, {{1, 2}});
    const ControlInstance inst = reduce_increase_banzhaf(or2, 1);
    if (inst.game.player_count() != 7) {
        out.detail = "expected 7 players, got " + std::to_string(inst.game.player_count());
        return out;
    }
    const RationalIndex beta = banzhaf(inst.game, inst.distinguished);
    const BigRat closed_form(pow2(2 - 1 - 1), pow2(inst.game.player_count() - 1));
    if (beta.value() != BigRat(1, 64) || beta.value() != closed_form) {
        out.detail = "baseline index " + beta.str() + " != 1/64";
        return out;
    }
    out.passed = true;
    out.detail = "7 players, enumerated index 1/64 matches the closed form";
    return out;
}

// ---------------------------------------------------------------------------
// 4. Answer preservation of the three enumerable constructions.

Outcome criterion4() {
    Outcome out;
    out.executed = true;
    long long runs = 0;
    auto check = [&](const char* tag, const CnfFormula& f, int k,
                     const std::optional<BigInt>& ell) -> bool {
        const ReductionVerification rep = verify_reduction(tag, f, k, ell);
        ++runs;
        if (rep.structural_only || rep.agree != true || !rep.structural.all_passed()) {
            std::ostringstream msg;
            msg << tag << ", k " << k;
            if (ell)
                msg << ", ell " << *ell;
            msg << ", formula " << f.to_dimacs();
            out.detail = msg.str();
            return false;
        }
        return true;
    };
    for (int n = 2; n <= 3; ++n)
        for (const auto& f : enumerate_formulas(n, 3)) {
            for (int k = 1; k <= n - 1; ++k) {
                if (!check("thm1", f, k, std::nullopt))
                    return out;
                if (!check("thm3a", f, k, std::nullopt))
                    return out;
            }
            for (int k = 1; k <= n; ++k)
                for (BigInt ell = 1; ell <= pow2(n - k); ++ell)
                    if (!check("thm3d_banzhaf", f, k, ell))
                        return out;
        }
    out.passed = true;
    out.detail = std::to_string(runs) + " verifications, zero disagreements";
    return out;
}

// ---------------------------------------------------------------------------
// 5. Structural suite for the Shapley constructions (counting at this scale
// is out of reach; validate_instance is the declared substitute).

Outcome criterion5() {
    Outcome out;
    out.executed = true;
    int built = 0;
    // Beyond the structural audit, the baseline pivotal coalitions of every
    // built instance are counted exactly at target q-1 (sparse DP, heavy rows
    // first); the count and the common coalition size must match the
    // construction's formulas.
    auto ridge_check = [&](const ControlInstance& inst, const BigInt& expected_count,
                           const BigInt& expected_size, std::string& err) -> bool {
        std::vector<Weight> others;
        others.reserve(static_cast<std::size_t>(inst.game.player_count() - 1));
        for (int i = 2; i <= inst.game.player_count(); ++i)
            others.push_back(inst.game.weight(i));
        const BigInt target = inst.game.quota() - 1;
        const PivotalCountBySize counts =
            count_subsets_in_band_by_size(others, target, target, with(CountingMethod::SparseDp));
        if (counts.total() != expected_count) {
            err = "pivotal count " + counts.total().str() + " != " + expected_count.str();
            return false;
        }
        for (const auto& [size, cnt] : counts.by_size)
            if (cnt != 0 && BigInt(size) != expected_size) {
                err = "pivotal coalition of size " + std::to_string(size) + " != " +
                      expected_size.str();
                return false;
            }
        return true;
    };
    int counted = 0;
    auto audit = [&](const ControlInstance& inst, const std::string& what) -> bool {
        const InstanceValidation v = validate_instance(inst);
        ++built;
        if (!v.all_passed()) {
            out.detail = what + ": " + v.failures().front();
            return false;
        }
        // The maintain construction beyond n = 4 carries tens of thousands of
        // distinct heavy rows; counting stays for the sizes below that.
        if (inst.game.player_count() > 150000)
            return true;
        const auto& c = inst.constants;
        const int n = c.get_int("n").convert_to<int>();
        const int k = c.get_int("k").convert_to<int>();
        BigInt expected_count, expected_size;
        if (c.theorem() == "thm2") {
            expected_count = pow2(2 * n - 2 * k);
            expected_size = c.get_int("x");
        } else if (c.theorem() == "thm3bc_ss") {
            expected_count = pow2(2 * n - k - 1);
            expected_size = c.get_int("s");
        } else {
            expected_count = c.get_int("y") * c.get_int("ell");
            expected_size = c.get_int("s");
        }
        std::string err;
        if (!ridge_check(inst, expected_count, expected_size, err)) {
            out.detail = what + ": " + err;
            return false;
        }
        ++counted;
        return true;
    };
    auto formula_for = [&](int n, int m) {
        std::vector<std::vector<int>> clauses;
        std::vector<int> full;
        for (int v = 1; v <= n; ++v)
            full.push_back(v);
        clauses.push_back(full);
        for (int j = 1; j < m; ++j) {
            std::vector<int> clause;
            for (int v = 1; v <= n; ++v)
                clause.push_back(((v + j) % 2 == 0) ? v : -v);
            clauses.push_back(clause);
        }
        return CnfFormula::create(n, clauses);
    };

    for (int n = 2; n <= 6; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int k = 1; k < n; ++k) {
                const auto inst = reduce_increase_nondecrease_ss(formula_for(n, m), k,
                                                                 ControlGoal::Increase);
                std::ostringstream what;
                what << "thm2 n=" << n << " m=" << m << " k=" << k;
                if (!audit(inst, what.str()))
                    return out;
            }
    for (int n = 4; n <= 6; ++n)
        for (int m = 1; m <= 2; ++m)
            for (int k = 3; k < n; ++k) {
                const auto inst =
                    reduce_decrease_nonincrease_ss(formula_for(n, m), k, ControlGoal::Decrease);
                std::ostringstream what;
                what << "thm3bc_ss n=" << n << " m=" << m << " k=" << k;
                if (!audit(inst, what.str()))
                    return out;
            }
    for (int n = 3; n <= 6; ++n)
        for (int k = 1; k <= n; ++k)
            for (const BigInt& ell :
                 {BigInt(1), pow2(n) / 3 + 1, pow2(n)}) {
                const auto inst = reduce_maintain_ss(formula_for(n, 1), k, ell);
                std::ostringstream what;
                what << "thm3d_ss n=" << n << " k=" << k << " ell=" << ell;
                if (!audit(inst, what.str()))
                    return out;
            }
    out.passed = true;
    out.detail = std::to_string(built) + " instances audited with zero failures; " +
                 std::to_string(counted) + " baseline pivotal counts exact";
    return out;
}

// ---------------------------------------------------------------------------
// 6. Quantified-SAT deciders against an independent double-loop oracle.

namespace oracle {

bool clause_eval(const std::vector<int>& clause, std::uint32_t assignment) {
    for (int lit : clause) {
        const bool v = (assignment >> (std::abs(lit) - 1)) & 1;
        if ((lit > 0) == v)
            return true;
    }
    return false;
}

long long extensions(const CnfFormula& f, std::uint32_t prefix, int k) {
    long long count = 0;
    for (std::uint32_t ext = 0; ext < (std::uint32_t(1) << (f.num_vars() - k)); ++ext) {
        const std::uint32_t assignment = prefix | (ext << k);
        bool all = true;
        for (const auto& clause : f.clauses())
            if (!clause_eval(clause, assignment)) {
                all = false;
                break;
            }
        if (all)
            ++count;
    }
    return count;
}

} // namespace oracle

Outcome criterion6() {
    Outcome out;
    out.executed = true;
    long long checks = 0;
    auto run_formula = [&](const CnfFormula& f) -> bool {
        const int n = f.num_vars();
        for (int k = 0; k <= n; ++k) {
            bool maj = false, min = false;
            std::vector<long long> counts;
            for (std::uint32_t prefix = 0; prefix < (std::uint32_t(1) << k); ++prefix) {
                const long long c = oracle::extensions(f, prefix, k);
                counts.push_back(c);
                if (2 * c > (1LL << (n - k)))
                    maj = true;
                if (2 * c <= (1LL << (n - k)))
                    min = true;
            }
            if (decide_emajsat(f, k).yes != maj || decide_eminsat(f, k).yes != min) {
                out.detail = "threshold decider disagreed, k " + std::to_string(k);
                return false;
            }
            for (long long ell = 0; ell <= (1LL << (n - k)) + 1; ++ell) {
                const bool expect =
                    std::find(counts.begin(), counts.end(), ell) != counts.end();
                if (decide_eexasat(f, k, BigInt(ell)).yes != expect) {
                    out.detail = "exact-count decider disagreed, k " + std::to_string(k) +
                                 ", ell " + std::to_string(ell);
                    return false;
                }
                ++checks;
            }
            checks += 2;
        }
        return true;
    };
    for (int n = 1; n <= 3; ++n)
        for (const auto& f : enumerate_formulas(n, 3))
            if (!run_formula(f))
                return out;
    for (int n = 4; n <= 10; ++n)
        for (const auto& f : sample_formulas(n, std::min(2 * n, 10), 5,
                                             6000u + static_cast<unsigned>(n)))
            if (!run_formula(f))
                return out;
    out.passed = true;
    out.detail = std::to_string(checks) + " decider queries matched the oracle";
    return out;
}

// ---------------------------------------------------------------------------
// 7. Opt-in: meet-in-the-middle count on the 51-player decrease instance.

Outcome criterion7(bool long_checks) {
    Outcome out;
    if (!long_checks)
        return out; // skipped
    out.executed = true;
    const CnfFormula or3 = CnfFormula::create(3, {{1, 2, 3}});
    const ControlInstance inst =
        reduce_decrease_nonincrease_banzhaf(or3, 2, ControlGoal::Decrease);
    if (inst.game.player_count() != 51) {
        out.detail = "expected 51 players, got " + std::to_string(inst.game.player_count());
        return out;
    }
    std::vector<Weight> others;
    for (int i = 2; i <= inst.game.player_count(); ++i)
        others.push_back(inst.game.weight(i));
    const BigInt count = count_subsets_in_band(
        others, inst.game.quota() - 1, inst.game.quota() - 1,
        with(CountingMethod::MeetInTheMiddle));
    const BigInt expected = pow2(2 * 3 - 2); // 2^(2n-k)
    if (count != expected) {
        out.detail = "count " + count.str() + " != " + expected.str();
        return out;
    }
    out.passed = true;
    out.detail = "weight-(q-1) subsets of N minus {1}: " + count.str() + " = 2^4";
    return out;
}

} // namespace

int main(int argc, char** argv) {
    bool long_checks = false;
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--long") == 0)
            long_checks = true;
        else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }

    const char* names[] = {
        "",
        "index engine equivalence (200 random games, 3 engines)",
        "assignment/coalition bijection for weight sets 1-4",
        "increase-construction baseline on (x1 v x2), k=1",
        "end-to-end answer preservation (thm1, thm3a, thm3d_banzhaf)",
        "Shapley construction structural suite (n <= 6)",
        "quantified-SAT deciders vs double-loop oracle",
        "51-player decrease baseline via meet-in-the-middle (opt-in)",
    };

    bool any_failed = false;
    for (int c = 1; c <= 7; ++c) {
        if (only != 0 && c != only)
            continue;
        const auto start = Clock::now();
        Outcome out;
        switch (c) {
        case 1: out = criterion1(); break;
        case 2: out = criterion2(); break;
        case 3: out = criterion3(); break;
        case 4: out = criterion4(); break;
        case 5: out = criterion5(); break;
        case 6: out = criterion6(); break;
        case 7: out = criterion7(long_checks); break;
        }
        std::ostringstream line;
        line << "criterion " << c << ": ";
        if (!out.executed) {
            line << "SKIP - opt-in, run with --long; " << names[c];
        } else if (out.passed) {
            line << "PASS - " << names[c] << "; " << out.detail;
        } else {
            line << "FAIL - " << names[c] << "; " << out.detail;
            any_failed = true;
        }
        line << " [" << std::fixed << seconds_since(start) << "s]";
        std::cout << line.str() << std::endl;
    }
    return any_failed ? 1 : 0;
}
