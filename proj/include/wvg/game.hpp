#pragma once

#include "wvg/bigint.hpp"
#include "wvg/counting.hpp"
#include "wvg/weight.hpp"

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace wvg {

/// A set of player indices (1-based, within the owning game).
class Coalition {
public:
    Coalition() = default;
    explicit Coalition(std::vector<int> members);
    Coalition(std::initializer_list<int> members)
        : Coalition(std::vector<int>(members)) {}

    const std::vector<int>& members() const { return members_; }
    bool contains(int player) const;
    int size() const { return static_cast<int>(members_.size()); }

private:
    std::vector<int> members_; // sorted, unique
};

/// Weighted voting game (w_1, ..., w_n; q): a coalition wins iff its total
/// weight reaches the quota. Players are addressed 1-based.
class Game {
public:
    Game(std::vector<Weight> weights, BigInt quota);

    /// Convenience for small literal games: Game::of({2, 1, 1}, 3).
    static Game of(std::initializer_list<unsigned long long> weights,
                   unsigned long long quota);

    int player_count() const { return static_cast<int>(weights_.size()); }
    const Weight& weight(int player) const; // 1-based
    const std::vector<Weight>& weights() const { return weights_; }
    const BigInt& quota() const { return quota_; }
    BigInt total_weight() const;

    /// New game with `extra` players appended after the existing ones;
    /// original indices keep their meaning.
    Game with_added_players(std::span<const Weight> extra) const;

private:
    std::vector<Weight> weights_;
    BigInt quota_;
};

/// Exact power index value in [0, 1], kept as a reduced fraction.
class RationalIndex {
public:
    RationalIndex() : value_(0) {}
    explicit RationalIndex(BigRat value);

    const BigRat& value() const { return value_; }
    BigInt numerator() const;
    BigInt denominator() const;
    std::string str() const { return to_fraction(value_); }

    friend bool operator==(const RationalIndex&, const RationalIndex&) = default;
    friend auto operator<=>(const RationalIndex& a, const RationalIndex& b) {
        return a.value_ < b.value_   ? std::strong_ordering::less
               : a.value_ > b.value_ ? std::strong_ordering::greater
                                     : std::strong_ordering::equal;
    }

private:
    BigRat value_;
};

bool is_winning(const Game& game, const Coalition& coalition);

/// True iff `coalition` loses and `coalition + player` wins. The player must
/// not already be a member.
bool is_pivotal(const Game& game, int player, const Coalition& coalition);

/// Probabilistic Penrose-Banzhaf index: pivotal-subset count over 2^(n-1).
RationalIndex banzhaf(const Game& game, int player, const CountingStrategy& strategy = {});

/// Shapley-Shubik index: pivotal subsets weighted |S|!(n-1-|S|)!/n!.
RationalIndex shapley_shubik(const Game& game, int player,
                             const CountingStrategy& strategy = {});

} // namespace wvg
