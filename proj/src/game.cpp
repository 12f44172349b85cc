#include "ceq/game.hpp"

#include "ceq/error.hpp"

#include <utility>

namespace ceq {

namespace {
constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 26;
}

GameTable::GameTable(int n) : GameTable(std::vector<int>(static_cast<std::size_t>(n > 0 ? n : 0), 2)) {
    if (n < 1) throw Error("game needs at least one player, got n=" + std::to_string(n));
}

GameTable::GameTable(std::vector<int> actions_per_player)
    : n_(static_cast<int>(actions_per_player.size())), actions_(std::move(actions_per_player)) {
    if (n_ < 1) throw Error("game needs at least one player");
    if (n_ > 63) throw Error("player count " + std::to_string(n_) + " exceeds 63");
    binary_ = true;
    strides_.resize(actions_.size());
    std::uint64_t size = 1;
    for (int i = 0; i < n_; ++i) {
        const int m = actions_[static_cast<std::size_t>(i)];
        if (m < 2 || m > 10) {
            throw Error("player " + std::to_string(i + 1) + " has " + std::to_string(m) +
                        " actions; supported range is 2..10");
        }
        if (m != 2) binary_ = false;
        strides_[static_cast<std::size_t>(i)] = size;
        if (size > kMaxTableSize / static_cast<std::uint64_t>(m)) {
            throw Error("game table too large (more than 2^26 profiles)");
        }
        size *= static_cast<std::uint64_t>(m);
    }
    size_ = size;
    utilities_.assign(static_cast<std::size_t>(n_),
                      std::vector<std::optional<Rational>>(size_));
}

int GameTable::actions(int player) const {
    check_player(player);
    return actions_[static_cast<std::size_t>(player - 1)];
}

void GameTable::check_player(int player) const {
    if (player < 1 || player > n_) {
        throw Error("player index " + std::to_string(player) + " out of range 1.." +
                    std::to_string(n_));
    }
}

void GameTable::check_index(std::uint64_t index) const {
    if (index >= size_) {
        throw Error("profile index " + std::to_string(index) + " out of range for table of size " +
                    std::to_string(size_));
    }
}

bool GameTable::is_complete() const {
    return !first_missing().has_value();
}

std::optional<std::pair<int, std::uint64_t>> GameTable::first_missing() const {
    for (int i = 1; i <= n_; ++i) {
        const auto& row = utilities_[static_cast<std::size_t>(i - 1)];
        for (std::uint64_t idx = 0; idx < size_; ++idx) {
            if (!row[idx].has_value()) return std::make_pair(i, idx);
        }
    }
    return std::nullopt;
}

void GameTable::set_utility(int player, Profile s, const Rational& value) {
    if (!binary_) throw Error("Profile-addressed utilities require a binary game");
    set_utility_at(player, s.code(), value);
}

Rational GameTable::utility(int player, Profile s) const {
    if (!binary_) throw Error("Profile-addressed utilities require a binary game");
    return utility_at(player, s.code());
}

void GameTable::set_utility_at(int player, std::uint64_t index, const Rational& value) {
    check_player(player);
    check_index(index);
    utilities_[static_cast<std::size_t>(player - 1)][index] = value;
}

Rational GameTable::utility_at(int player, std::uint64_t index) const {
    check_player(player);
    check_index(index);
    const auto& slot = utilities_[static_cast<std::size_t>(player - 1)][index];
    if (!slot.has_value()) {
        throw Error("utility of player " + std::to_string(player) + " at profile " +
                    profile_string(index) + " is unassigned");
    }
    return *slot;
}

bool GameTable::has_utility_at(int player, std::uint64_t index) const {
    check_player(player);
    check_index(index);
    return utilities_[static_cast<std::size_t>(player - 1)][index].has_value();
}

int GameTable::action_at(std::uint64_t index, int player) const {
    check_player(player);
    check_index(index);
    const std::size_t p = static_cast<std::size_t>(player - 1);
    return static_cast<int>((index / strides_[p]) % static_cast<std::uint64_t>(actions_[p]));
}

std::uint64_t GameTable::index_with_action(std::uint64_t index, int player, int action) const {
    check_player(player);
    check_index(index);
    const std::size_t p = static_cast<std::size_t>(player - 1);
    if (action < 0 || action >= actions_[p]) {
        throw Error("action " + std::to_string(action) + " out of range for player " +
                    std::to_string(player));
    }
    const int current = action_at(index, player);
    return index + (static_cast<std::uint64_t>(action) - static_cast<std::uint64_t>(current)) *
                       strides_[p];
}

std::string GameTable::profile_string(std::uint64_t index) const {
    check_index(index);
    std::string out(static_cast<std::size_t>(n_), '0');
    for (int i = 1; i <= n_; ++i) {
        out[static_cast<std::size_t>(i - 1)] = static_cast<char>('0' + action_at(index, i));
    }
    return out;
}

std::uint64_t GameTable::parse_profile(const std::string& digits) const {
    if (static_cast<int>(digits.size()) != n_) {
        throw ParseError("profile \"" + digits + "\" has " + std::to_string(digits.size()) +
                         " digits, expected " + std::to_string(n_));
    }
    std::uint64_t index = 0;
    for (int i = 1; i <= n_; ++i) {
        const char c = digits[static_cast<std::size_t>(i - 1)];
        const std::size_t p = static_cast<std::size_t>(i - 1);
        if (c < '0' || c >= static_cast<char>('0' + actions_[p])) {
            throw ParseError("profile \"" + digits + "\": digit '" + std::string(1, c) +
                             "' invalid for player " + std::to_string(i) + " with " +
                             std::to_string(actions_[p]) + " actions");
        }
        index += static_cast<std::uint64_t>(c - '0') * strides_[p];
    }
    return index;
}

Distribution::Distribution(int n, std::map<Profile, Rational> support, std::uint64_t universe)
    : n_(n), support_(std::move(support)) {
    if (n < 1 || n > 63) throw Error("distribution needs n in [1, 63], got " + std::to_string(n));
    const std::uint64_t bound = universe == 0 ? (std::uint64_t{1} << n) : universe;
    Rational total(0);
    for (const auto& [s, p] : support_) {
        if (s.code() >= bound) {
            throw Error("distribution support contains out-of-range profile code " +
                        std::to_string(s.code()));
        }
        if (p <= 0) {
            throw Error("distribution probability at code " + std::to_string(s.code()) +
                        " is not strictly positive: " + to_fraction(p));
        }
        total += p;
    }
    if (total != 1) {
        throw Error("distribution probabilities sum to " + to_fraction(total) + ", expected 1");
    }
}

Distribution Distribution::point_mass(int n, Profile s, std::uint64_t universe) {
    return Distribution(n, {{s, Rational(1)}}, universe);
}

Distribution Distribution::uniform_over(int n, const std::vector<Profile>& profiles,
                                        std::uint64_t universe) {
    if (profiles.empty()) throw Error("uniform_over needs a nonempty profile list");
    std::map<Profile, Rational> support;
    for (Profile s : profiles) support[s] = Rational(0);
    const Rational weight = make_rational(Int(1), Int(static_cast<long>(support.size())));
    for (auto& [s, p] : support) p = weight;
    return Distribution(n, std::move(support), universe);
}

Distribution Distribution::uniform_all(int n) {
    if (n < 1 || n > 30) throw Error("uniform_all supports n in [1, 30]");
    std::map<Profile, Rational> support;
    const std::uint64_t total = std::uint64_t{1} << n;
    const Rational weight = make_rational(Int(1), Int(total));
    for (std::uint64_t c = 0; c < total; ++c) support[Profile(c)] = weight;
    return Distribution(n, std::move(support));
}

Rational Distribution::probability(Profile s) const {
    auto it = support_.find(s);
    return it == support_.end() ? Rational(0) : it->second;
}

namespace {

void check_binary_pair(const GameTable& game, const Distribution& sigma, const char* op) {
    if (!game.binary()) {
        throw Error(std::string(op) + " requires a binary game");
    }
    if (game.players() != sigma.players()) {
        throw Error(std::string(op) + ": game has " + std::to_string(game.players()) +
                    " players but distribution has " + std::to_string(sigma.players()));
    }
}

}  // namespace

std::vector<ConstraintValue> ce_constraint_values(const GameTable& game,
                                                  const Distribution& sigma) {
    check_binary_pair(game, sigma, "ce_constraint_values");
    const int n = game.players();
    std::vector<ConstraintValue> values;
    values.reserve(static_cast<std::size_t>(2 * n));
    for (int i = 1; i <= n; ++i) {
        for (int a = 0; a <= 1; ++a) {
            Rational value(0);
            for (const auto& [s, p] : sigma.support()) {
                if (s.bit(i) != a) continue;
                value += (game.utility(i, s) - game.utility(i, s.flip(i))) * p;
            }
            values.push_back({i, a, value});
        }
    }
    return values;
}

std::optional<Certificate> is_correlated_equilibrium(const GameTable& game,
                                                     const Distribution& sigma) {
    check_binary_pair(game, sigma, "is_correlated_equilibrium");
    std::optional<Certificate> worst;
    for (const auto& cv : ce_constraint_values(game, sigma)) {
        if (cv.value >= 0) continue;
        if (!worst || cv.value < worst->value) {
            worst = Certificate{cv.player, cv.action, cv.value, "definition-violation"};
        }
    }
    return worst;
}

std::optional<CoarseViolation> is_coarse_ce(const GameTable& game, const Distribution& sigma) {
    if (game.players() != sigma.players()) {
        throw Error("is_coarse_ce: game has " + std::to_string(game.players()) +
                    " players but distribution has " + std::to_string(sigma.players()));
    }
    std::optional<CoarseViolation> worst;
    for (int i = 1; i <= game.players(); ++i) {
        for (int dev = 0; dev < game.actions(i); ++dev) {
            Rational value(0);
            for (const auto& [s, p] : sigma.support()) {
                const std::uint64_t idx = s.code();
                value += (game.utility_at(i, idx) -
                          game.utility_at(i, game.index_with_action(idx, i, dev))) *
                         p;
            }
            if (value >= 0) continue;
            if (!worst || value < worst->value) {
                worst = CoarseViolation{i, dev, value};
            }
        }
    }
    return worst;
}

}  // namespace ceq
