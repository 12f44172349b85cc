#pragma once

#include "ceq/game.hpp"
#include "ceq/profile.hpp"
#include "ceq/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ceq {

/// Partial map (player i, profile s) -> d_i(s), where d_i(s) is the utility
/// player i gains at s over deviating to s¬i. Consistency requires the
/// mirror identity d_i(s¬i) = −d_i(s); assign_pair maintains it, while the
/// raw set() exists so tests can build broken tables on purpose.
class DifferenceTable {
public:
    explicit DifferenceTable(int n);

    int players() const { return n_; }
    std::uint64_t profile_count() const { return std::uint64_t{1} << n_; }

    bool is_assigned(int player, Profile s) const;
    /// Throws when the entry is unassigned.
    Rational get(int player, Profile s) const;
    std::optional<Rational> maybe(int player, Profile s) const;

    /// Writes one entry without touching the mirror entry.
    void set(int player, Profile s, const Rational& value);
    /// Assigns the edge pair d_player(s) = value, d_player(s¬player) = −value.
    /// Throws if either side is already assigned.
    void assign_pair(int player, Profile s, const Rational& value);

    bool fully_assigned(Profile s) const;
    bool any_assigned(Profile s) const;
    bool complete() const;
    std::optional<std::pair<int, Profile>> first_unassigned() const;

    /// Smallest (player, profile) whose assigned entry has no exact mirror;
    /// nullopt when the mirror identity holds everywhere.
    std::optional<std::pair<int, Profile>> complementarity_violation() const;

private:
    void check(int player, Profile s) const;

    int n_;
    std::vector<std::vector<std::optional<Rational>>> entries_;  // [player-1][code]
};

/// d_i(s) = u_i(s) − u_i(s¬i) for a complete binary game.
DifferenceTable differences_from_utilities(const GameTable& game);

/// Canonical utilities u_i(s) = d_i(s) when s_i = 0, else 0; unassigned
/// entries are treated as 0. Throws when the mirror identity fails, naming
/// the offending (player, profile).
GameTable utilities_from_differences(const DifferenceTable& diff);

/// The canonical utility vector (u_1(s), ..., u_n(s)) at a single profile.
std::vector<Rational> canonical_utilities_at(const DifferenceTable& diff, Profile s);

/// D(s) = sum of d_i(s) over all players. Throws if any component is
/// unassigned at s.
Rational sum_differences(const DifferenceTable& diff, Profile s);

/// If the expected value of D(s) under sigma is negative, no distribution of
/// utilities consistent with diff makes sigma a correlated equilibrium; this
/// returns a certificate naming a violated constraint (the expectation splits
/// across players and actions, so a negative term must exist). Returns
/// nullopt when the expectation is nonnegative. Requires every d_i(s) on the
/// support of sigma to be assigned.
std::optional<Certificate> remark1_certificate(const DifferenceTable& diff,
                                               const Distribution& sigma);

}  // namespace ceq
