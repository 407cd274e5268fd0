#pragma once

// Shared machinery of the instance builders and their audit: every
// construction is derived twice from the same code path, once when building
// and once when validating, so a tampered instance cannot agree with its own
// constants.

#include "wvg/gadgets.hpp"
#include "wvg/reductions.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wvg::detail {

struct GroupSpec {
    std::string label;
    std::vector<Weight> weights;

    static GroupSpec repeated(std::string label, const Weight& w, long long count);
};

/// Everything about a construction that is determined by the formula shape
/// (n, m), the split k, the optional ell, and the two formula-dependent
/// weight totals w_M and w_A. The gadget blocks themselves stay opaque; only
/// their cardinalities and totals are pinned here.
struct Derivation {
    ReductionConstants constants;
    std::vector<GroupSpec> tail; // groups after p/A/C/C', construction order
    BigInt quota;

    int set_id = 0;
    int t = 0;
    int t_prime = 0;
    std::optional<BigInt> min_pow_t;       // extra bound handed to the gadget
    std::optional<BigInt> min_pow_t_prime;
    BigInt q_target;

    int m_count = 0, a_count = 0, c_count = 0, cp_count = 0;
    BigInt w_c_total, w_cp_total; // recomputed, formula-independent
    long long expected_players = 0;
};

// With bounds_only the derivation stops once the gadget exponent bounds are
// known (the block totals are not needed up to that point); the builders use
// that phase to construct the gadget, then re-derive with the real totals.
Derivation derive_thm1(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                       bool nondecrease_variant, bool bounds_only = false);
Derivation derive_thm2(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                       bool bounds_only = false);
Derivation derive_thm3bc_banzhaf(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                                 bool bounds_only = false);
Derivation derive_thm3bc_ss(int n, int m, int k, const BigInt& w_m, const BigInt& w_a,
                            bool bounds_only = false);
Derivation derive_thm3d_banzhaf(int n, int m, int k, const BigInt& ell, const BigInt& w_m,
                                const BigInt& w_a, bool bounds_only = false);
Derivation derive_thm3d_ss(int n, int m, int k, const BigInt& ell, const BigInt& w_m,
                           const BigInt& w_a, bool bounds_only = false);

/// Re-derives the construction recorded in `stored` (reads theorem tag, n,
/// m, k, ell, w_M, w_A). Used by validate_instance.
Derivation derive_from_constants(const ReductionConstants& stored);

/// Common bookkeeping all derivations share.
void put_shape_constants(ReductionConstants& c, int n, int m, int k, int r,
                         const BigInt& w_m, const BigInt& w_a, const BigInt& w_c,
                         const BigInt& w_cp);

/// Fuses a prebuilt gadget with the derived tail into the final instance.
ControlInstance assemble_instance(const GadgetWeights& gadget, int k, Derivation derivation,
                                  ControlGoal goal, IndexKind kind);

/// Shared builder flow: bounds-only derivation, gadget construction, full
/// derivation with the real block totals, assembly.
template <typename DeriveFn>
ControlInstance build_via(const CnfFormula& formula, int k, bool allow_full_prefix,
                          ControlGoal goal, IndexKind kind, DeriveFn&& derive) {
    Derivation bounds = derive(BigInt(0), BigInt(0), /*bounds_only=*/true);
    const GadgetWeights gadget =
        build_weight_set(formula, k, bounds.set_id, bounds.min_pow_t, bounds.min_pow_t_prime,
                         allow_full_prefix);
    BigInt w_m = 0, w_a = 0;
    for (const Weight& w : gadget.w_m)
        w_m += w.value();
    for (const Weight& w : gadget.w_a)
        w_a += w.value();
    Derivation full = derive(w_m, w_a, /*bounds_only=*/false);
    return assemble_instance(gadget, k, std::move(full), goal, kind);
}

/// Formula-independent total of the C block: (2^ceil(log2 n) - 1) * sum_j 10^(tj)
/// plus, for sets 2 and 4, the same with t'. C' analogously.
BigInt c_block_total(int set_id, int n, int m, int t, int t_prime);
BigInt cp_block_total(int set_id, int n, int m, int t_prime);

} // namespace wvg::detail
