#include "wvg/game.hpp"

#include "wvg/errors.hpp"

#include <algorithm>

namespace wvg {

Coalition::Coalition(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Coalition::contains(int player) const {
    return std::binary_search(members_.begin(), members_.end(), player);
}

Game::Game(std::vector<Weight> weights, BigInt quota)
    : weights_(std::move(weights)), quota_(std::move(quota)) {
    if (weights_.empty())
        throw InvalidArgumentError("Game: at least one player required");
    if (quota_ < 1)
        throw InvalidArgumentError("Game: quota must be >= 1");
}

Game Game::of(std::initializer_list<unsigned long long> weights, unsigned long long quota) {
    std::vector<Weight> ws;
    ws.reserve(weights.size());
    for (auto w : weights)
        ws.emplace_back(w);
    return Game(std::move(ws), BigInt(quota));
}

const Weight& Game::weight(int player) const {
    if (player < 1 || player > player_count())
        throw InvalidArgumentError("Game: player index " + std::to_string(player) +
                                   " out of range 1.." + std::to_string(player_count()));
    return weights_[static_cast<std::size_t>(player - 1)];
}

BigInt Game::total_weight() const {
    BigInt t = 0;
    for (const Weight& w : weights_)
        t += w.value();
    return t;
}

Game Game::with_added_players(std::span<const Weight> extra) const {
    std::vector<Weight> ws = weights_;
    ws.insert(ws.end(), extra.begin(), extra.end());
    return Game(std::move(ws), quota_);
}

RationalIndex::RationalIndex(BigRat value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1)
        throw InvalidArgumentError("RationalIndex: value outside [0, 1]: " + to_fraction(value_));
}

BigInt RationalIndex::numerator() const {
    return boost::multiprecision::numerator(value_);
}

BigInt RationalIndex::denominator() const {
    return boost::multiprecision::denominator(value_);
}

namespace {

void check_members(const Game& game, const Coalition& coalition) {
    const auto& m = coalition.members();
    if (!m.empty() && (m.front() < 1 || m.back() > game.player_count()))
        throw InvalidArgumentError("invalid coalition: member index out of range");
}

// Weights of every player except `player` (1-based).
std::vector<Weight> weights_without(const Game& game, int player) {
    std::vector<Weight> rest;
    rest.reserve(static_cast<std::size_t>(game.player_count() - 1));
    for (int i = 1; i <= game.player_count(); ++i)
        if (i != player)
            rest.push_back(game.weight(i));
    return rest;
}

} // namespace

bool is_winning(const Game& game, const Coalition& coalition) {
    check_members(game, coalition);
    BigInt sum = 0;
    for (int i : coalition.members())
        sum += game.weight(i).value();
    return sum >= game.quota();
}

bool is_pivotal(const Game& game, int player, const Coalition& coalition) {
    game.weight(player); // validates the index
    if (coalition.contains(player))
        throw InvalidArgumentError("is_pivotal: player " + std::to_string(player) +
                                   " already in coalition");
    check_members(game, coalition);
    BigInt sum = 0;
    for (int i : coalition.members())
        sum += game.weight(i).value();
    return sum < game.quota() && sum + game.weight(player).value() >= game.quota();
}

RationalIndex banzhaf(const Game& game, int player, const CountingStrategy& strategy) {
    const BigInt& w = game.weight(player).value();
    const BigInt lo = game.quota() - w;
    const BigInt hi = game.quota() - 1;
    BigInt pivotal = 0;
    if (lo <= hi) {
        const std::vector<Weight> rest = weights_without(game, player);
        pivotal = count_subsets_in_band(rest, lo, hi, strategy);
    }
    return RationalIndex(BigRat(pivotal, pow2(game.player_count() - 1)));
}

RationalIndex shapley_shubik(const Game& game, int player, const CountingStrategy& strategy) {
    const int n = game.player_count();
    const BigInt& w = game.weight(player).value();
    const BigInt lo = game.quota() - w;
    const BigInt hi = game.quota() - 1;
    BigRat phi = 0;
    if (lo <= hi) {
        const std::vector<Weight> rest = weights_without(game, player);
        const PivotalCountBySize counts = count_subsets_in_band_by_size(rest, lo, hi, strategy);
        // s!(n-1-s)!/n! = 1 / (n * C(n-1, s)); avoids factorials of the full
        // player count, which reaches the millions on constructed games.
        for (const auto& [size, count] : counts.by_size)
            phi += BigRat(count, BigInt(n) * binomial(n - 1, size));
    }
    return RationalIndex(std::move(phi));
}

} // namespace wvg
