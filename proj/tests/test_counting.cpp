#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "wvg/counting.hpp"
#include "wvg/errors.hpp"

#include <random>

using namespace wvg;

namespace {

std::vector<Weight> to_weights(const std::vector<unsigned long long>& vals) {
    std::vector<Weight> out;
    for (auto v : vals)
        out.emplace_back(v);
    return out;
}

CountingStrategy with(CountingMethod m) {
    CountingStrategy s;
    s.method = m;
    return s;
}

const CountingMethod kAllMethods[] = {CountingMethod::Enumerate,
                                      CountingMethod::MeetInTheMiddle,
                                      CountingMethod::SparseDp};

} // namespace

TEST_CASE("count_subsets_with_sum small cases") {
    const auto w = to_weights({1, 2, 3});
    for (auto m : kAllMethods) {
        CHECK(count_subsets_with_sum(w, BigInt(0), with(m)) == 1); // empty set
        CHECK(count_subsets_with_sum(w, BigInt(7), with(m)) == 0); // above total
        CHECK(count_subsets_with_sum(w, BigInt(3), with(m)) == 2); // {3}, {1,2}
        CHECK(count_subsets_with_sum(w, BigInt(6), with(m)) == 1);
    }
}

TEST_CASE("band counting by size") {
    const auto two_ones = to_weights({1, 1});
    auto r = count_subsets_in_band_by_size(two_ones, BigInt(1), BigInt(1));
    CHECK(r.by_size == std::map<int, BigInt>{{1, BigInt(2)}});

    const auto w = to_weights({1, 2, 3});
    r = count_subsets_in_band_by_size(w, BigInt(3), BigInt(3));
    CHECK(r.by_size == std::map<int, BigInt>{{1, BigInt(1)}, {2, BigInt(1)}});

    const std::vector<Weight> empty;
    r = count_subsets_in_band_by_size(empty, BigInt(1), BigInt(2));
    CHECK(r.by_size.empty());
}

TEST_CASE("errors: invalid band and enumeration cap") {
    const auto w = to_weights({1, 2, 3});
    CHECK_THROWS_AS(count_subsets_in_band(w, BigInt(2), BigInt(1)), InvalidArgumentError);
    CHECK_THROWS_AS(count_subsets_in_band_by_size(w, BigInt(2), BigInt(1)),
                    InvalidArgumentError);

    CountingStrategy capped = with(CountingMethod::Enumerate);
    capped.enumerate_player_cap = 2;
    CHECK_THROWS_AS(count_subsets_with_sum(w, BigInt(3), capped), CapabilityError);
}

TEST_CASE("strategy equivalence on random instances") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> n_dist(0, 14);
    std::uniform_int_distribution<unsigned long long> w_dist(0, 1000000);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = n_dist(rng);
        std::vector<unsigned long long> vals;
        std::vector<BigInt> vals_big;
        for (int i = 0; i < n; ++i) {
            vals.push_back(w_dist(rng));
            vals_big.emplace_back(vals.back());
        }
        const auto w = to_weights(vals);
        BigInt total = 0;
        for (const auto& v : vals_big)
            total += v;
        std::uniform_int_distribution<long long> b_dist(0, std::max<long long>(
                                                               1, total.convert_to<long long>()));
        BigInt lo(b_dist(rng)), hi(b_dist(rng));
        if (lo > hi)
            std::swap(lo, hi);
        const BigInt expected = oracles::count_band(vals_big, lo, hi);
        for (auto m : kAllMethods)
            CHECK(count_subsets_in_band(w, lo, hi, with(m)) == expected);
        const auto expected_sized = oracles::count_band_by_size(vals_big, lo, hi);
        for (auto m : kAllMethods)
            CHECK(count_subsets_in_band_by_size(w, lo, hi, with(m)).by_size == expected_sized);
    }
}

TEST_CASE("three engines agree up to 24 players") {
    std::mt19937 rng(240817);
    std::uniform_int_distribution<unsigned long long> w_dist(0, 1000000);
    auto check_all = [](const std::vector<Weight>& w, const BigInt& lo, const BigInt& hi) {
        const BigInt via_enum = count_subsets_in_band(w, lo, hi, with(CountingMethod::Enumerate));
        CHECK(via_enum ==
              count_subsets_in_band(w, lo, hi, with(CountingMethod::MeetInTheMiddle)));
        CHECK(via_enum == count_subsets_in_band(w, lo, hi, with(CountingMethod::SparseDp)));
    };
    // Distinct random weights (the dp degenerates to one sum per subset, so
    // keep these mid-sized).
    std::uniform_int_distribution<int> n_dist(15, 21);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = n_dist(rng);
        std::vector<unsigned long long> vals;
        BigInt total = 0;
        for (int i = 0; i < n; ++i) {
            vals.push_back(w_dist(rng));
            total += vals.back();
        }
        std::uniform_int_distribution<long long> b_dist(0, total.convert_to<long long>());
        BigInt lo(b_dist(rng)), hi(b_dist(rng));
        if (lo > hi)
            std::swap(lo, hi);
        check_all(to_weights(vals), lo, hi);
    }
    // Duplicate-heavy pools at the full 24 players (the dp's home turf, and
    // the shape the constructed instances have).
    std::uniform_int_distribution<int> big_n(22, 24);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<unsigned long long> pool;
        for (int i = 0; i < 6; ++i)
            pool.push_back(w_dist(rng));
        const int n = big_n(rng);
        std::vector<unsigned long long> vals;
        BigInt total = 0;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int i = 0; i < n; ++i) {
            vals.push_back(pool[pick(rng)]);
            total += vals.back();
        }
        std::uniform_int_distribution<long long> b_dist(0, total.convert_to<long long>());
        BigInt lo(b_dist(rng)), hi(b_dist(rng));
        if (lo > hi)
            std::swap(lo, hi);
        check_all(to_weights(vals), lo, hi);
    }
}

TEST_CASE("partition: full band counts every subset") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<unsigned long long> w_dist(0, 50);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<unsigned long long> vals;
        const int n = trial % 13;
        for (int i = 0; i < n; ++i)
            vals.push_back(w_dist(rng));
        const auto w = to_weights(vals);
        BigInt total = 0;
        for (auto v : vals)
            total += v;
        for (auto m : kAllMethods) {
            CHECK(count_subsets_in_band(w, BigInt(0), total, with(m)) == pow2(n));
            CHECK(count_subsets_in_band_by_size(w, BigInt(0), total, with(m)).total() ==
                  pow2(n));
        }
    }
}

TEST_CASE("sparse dp is permutation invariant and handles duplicates") {
    std::vector<unsigned long long> vals{5, 5, 5, 5, 7, 7, 0, 3};
    auto w1 = to_weights(vals);
    std::mt19937 rng(99);
    std::shuffle(vals.begin(), vals.end(), rng);
    auto w2 = to_weights(vals);
    for (BigInt target = 0; target <= 40; ++target)
        CHECK(count_subsets_with_sum(w1, target, with(CountingMethod::SparseDp)) ==
              count_subsets_with_sum(w2, target, with(CountingMethod::SparseDp)));
    // Zero weights double the subset count at every sum.
    CHECK(count_subsets_with_sum(w1, BigInt(0), with(CountingMethod::SparseDp)) == 2);
}

TEST_CASE("huge weights stay exact") {
    std::vector<Weight> w;
    const BigInt big = pow10(40);
    w.emplace_back(BigInt(big));
    w.emplace_back(BigInt(big));
    w.emplace_back(BigInt(2) * big);
    for (auto m : kAllMethods)
        CHECK(count_subsets_with_sum(w, BigInt(2) * big, with(m)) == 2);
}
