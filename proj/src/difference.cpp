#include "ceq/difference.hpp"

#include "ceq/error.hpp"

#include <string>

namespace ceq {

DifferenceTable::DifferenceTable(int n) : n_(n) {
    if (n < 1 || n > 30) {
        throw Error("difference table needs n in [1, 30], got " + std::to_string(n));
    }
    entries_.assign(static_cast<std::size_t>(n),
                    std::vector<std::optional<Rational>>(std::uint64_t{1} << n));
}

void DifferenceTable::check(int player, Profile s) const {
    if (player < 1 || player > n_) {
        throw Error("player index " + std::to_string(player) + " out of range 1.." +
                    std::to_string(n_));
    }
    if (s.code() >= profile_count()) {
        throw Error("profile code " + std::to_string(s.code()) + " out of range for n=" +
                    std::to_string(n_));
    }
}

bool DifferenceTable::is_assigned(int player, Profile s) const {
    check(player, s);
    return entries_[static_cast<std::size_t>(player - 1)][s.code()].has_value();
}

Rational DifferenceTable::get(int player, Profile s) const {
    check(player, s);
    const auto& slot = entries_[static_cast<std::size_t>(player - 1)][s.code()];
    if (!slot.has_value()) {
        throw Error("d_" + std::to_string(player) + "(" + s.bitstring(n_) + ") is unassigned");
    }
    return *slot;
}

std::optional<Rational> DifferenceTable::maybe(int player, Profile s) const {
    check(player, s);
    return entries_[static_cast<std::size_t>(player - 1)][s.code()];
}

void DifferenceTable::set(int player, Profile s, const Rational& value) {
    check(player, s);
    entries_[static_cast<std::size_t>(player - 1)][s.code()] = value;
}

void DifferenceTable::assign_pair(int player, Profile s, const Rational& value) {
    check(player, s);
    const Profile mirror = s.flip(player);
    if (is_assigned(player, s)) {
        throw Error("d_" + std::to_string(player) + "(" + s.bitstring(n_) +
                    ") is already assigned");
    }
    if (is_assigned(player, mirror)) {
        throw Error("d_" + std::to_string(player) + "(" + mirror.bitstring(n_) +
                    ") is already assigned");
    }
    entries_[static_cast<std::size_t>(player - 1)][s.code()] = value;
    entries_[static_cast<std::size_t>(player - 1)][mirror.code()] = -value;
}

bool DifferenceTable::fully_assigned(Profile s) const {
    for (int i = 1; i <= n_; ++i) {
        if (!is_assigned(i, s)) return false;
    }
    return true;
}

bool DifferenceTable::any_assigned(Profile s) const {
    for (int i = 1; i <= n_; ++i) {
        if (is_assigned(i, s)) return true;
    }
    return false;
}

bool DifferenceTable::complete() const {
    return !first_unassigned().has_value();
}

std::optional<std::pair<int, Profile>> DifferenceTable::first_unassigned() const {
    for (std::uint64_t c = 0; c < profile_count(); ++c) {
        for (int i = 1; i <= n_; ++i) {
            if (!entries_[static_cast<std::size_t>(i - 1)][c].has_value()) {
                return std::make_pair(i, Profile(c));
            }
        }
    }
    return std::nullopt;
}

std::optional<std::pair<int, Profile>> DifferenceTable::complementarity_violation() const {
    for (std::uint64_t c = 0; c < profile_count(); ++c) {
        for (int i = 1; i <= n_; ++i) {
            const auto& here = entries_[static_cast<std::size_t>(i - 1)][c];
            if (!here.has_value()) continue;
            const Profile mirror = Profile(c).flip(i);
            const auto& there = entries_[static_cast<std::size_t>(i - 1)][mirror.code()];
            if (!there.has_value() || *there != -*here) {
                return std::make_pair(i, Profile(c));
            }
        }
    }
    return std::nullopt;
}

DifferenceTable differences_from_utilities(const GameTable& game) {
    if (!game.binary()) throw Error("differences_from_utilities requires a binary game");
    if (auto missing = game.first_missing()) {
        throw Error("game is incomplete: player " + std::to_string(missing->first) +
                    " at profile " + game.profile_string(missing->second) + " is unassigned");
    }
    const int n = game.players();
    DifferenceTable diff(n);
    for (std::uint64_t c = 0; c < diff.profile_count(); ++c) {
        const Profile s(c);
        for (int i = 1; i <= n; ++i) {
            diff.set(i, s, game.utility(i, s) - game.utility(i, s.flip(i)));
        }
    }
    return diff;
}

GameTable utilities_from_differences(const DifferenceTable& diff) {
    if (auto bad = diff.complementarity_violation()) {
        throw Error("mirror identity violated at d_" + std::to_string(bad->first) + "(" +
                    bad->second.bitstring(diff.players()) + ")");
    }
    const int n = diff.players();
    GameTable game(n);
    for (std::uint64_t c = 0; c < diff.profile_count(); ++c) {
        const Profile s(c);
        for (int i = 1; i <= n; ++i) {
            if (s.bit(i) != 0) {
                game.set_utility(i, s, Rational(0));
            } else {
                const auto d = diff.maybe(i, s);
                game.set_utility(i, s, d.has_value() ? *d : Rational(0));
            }
        }
    }
    return game;
}

std::vector<Rational> canonical_utilities_at(const DifferenceTable& diff, Profile s) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(diff.players()));
    for (int i = 1; i <= diff.players(); ++i) {
        if (s.bit(i) != 0) {
            out.emplace_back(0);
        } else {
            const auto d = diff.maybe(i, s);
            out.push_back(d.has_value() ? *d : Rational(0));
        }
    }
    return out;
}

Rational sum_differences(const DifferenceTable& diff, Profile s) {
    Rational total(0);
    for (int i = 1; i <= diff.players(); ++i) {
        total += diff.get(i, s);
    }
    return total;
}

std::optional<Certificate> remark1_certificate(const DifferenceTable& diff,
                                               const Distribution& sigma) {
    if (diff.players() != sigma.players()) {
        throw Error("remark1_certificate: table has " + std::to_string(diff.players()) +
                    " players but distribution has " + std::to_string(sigma.players()));
    }
    Rational expected(0);
    for (const auto& [s, p] : sigma.support()) {
        expected += sum_differences(diff, s) * p;
    }
    if (expected >= 0) return std::nullopt;

    // E[D] = sum over (i, a) of the constraint value at (i, a), so at least
    // one term is negative; report the most negative one.
    std::optional<Certificate> worst;
    for (int i = 1; i <= diff.players(); ++i) {
        for (int a = 0; a <= 1; ++a) {
            Rational value(0);
            for (const auto& [s, p] : sigma.support()) {
                if (s.bit(i) != a) continue;
                value += diff.get(i, s) * p;
            }
            if (value >= 0) continue;
            if (!worst || value < worst->value) {
                worst = Certificate{i, a, value, "remark1"};
            }
        }
    }
    if (!worst) {
        throw Error("internal: negative expected regret sum but no negative constraint");
    }
    return worst;
}

}  // namespace ceq
