#pragma once

#include "ceq/profile.hpp"
#include "ceq/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ceq {

/// Dense n-player utility table with exact rational entries. Entries start
/// unassigned so partially known games can be represented; most operations
/// require a complete table.
///
/// Games are binary-action except where noted (the coarse-equilibrium check
/// accepts any number of actions per player). Profiles of a general table are
/// addressed by mixed-radix index with player 1 as the lowest digit; for
/// binary tables that index coincides with Profile::code.
class GameTable {
public:
    /// Binary-action game with all utilities unassigned.
    explicit GameTable(int n);
    /// General game; each player needs between 2 and 10 actions (one digit
    /// per player in rendered profile strings).
    explicit GameTable(std::vector<int> actions_per_player);

    int players() const { return n_; }
    int actions(int player) const;
    bool binary() const { return binary_; }
    /// Number of profiles (product of the action counts).
    std::uint64_t table_size() const { return size_; }

    bool is_complete() const;
    /// Smallest (player, index) pair still unassigned, if any.
    std::optional<std::pair<int, std::uint64_t>> first_missing() const;

    void set_utility(int player, Profile s, const Rational& value);
    Rational utility(int player, Profile s) const;

    void set_utility_at(int player, std::uint64_t index, const Rational& value);
    Rational utility_at(int player, std::uint64_t index) const;
    bool has_utility_at(int player, std::uint64_t index) const;

    /// Action of `player` in the profile with this index.
    int action_at(std::uint64_t index, int player) const;
    /// Index of the profile obtained by switching `player` to `action`.
    std::uint64_t index_with_action(std::uint64_t index, int player, int action) const;

    /// Digit string a_1 a_2 ... a_n for the profile with this index.
    std::string profile_string(std::uint64_t index) const;
    /// Inverse of profile_string. Throws ParseError on malformed input.
    std::uint64_t parse_profile(const std::string& digits) const;

private:
    void check_player(int player) const;
    void check_index(std::uint64_t index) const;

    int n_;
    bool binary_;
    std::vector<int> actions_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t size_;
    std::vector<std::vector<std::optional<Rational>>> utilities_;  // [player-1][index]
};

/// Probability distribution over profiles with explicit support. Entries are
/// strictly positive and sum to exactly 1. Keys are Profiles; for general
/// (non-binary) games the Profile code carries the mixed-radix index of
/// GameTable.
class Distribution {
public:
    /// `universe` bounds the valid codes; 0 means the binary default 2^n.
    Distribution(int n, std::map<Profile, Rational> support, std::uint64_t universe = 0);

    static Distribution point_mass(int n, Profile s, std::uint64_t universe = 0);
    static Distribution uniform_over(int n, const std::vector<Profile>& profiles,
                                     std::uint64_t universe = 0);
    static Distribution uniform_all(int n);

    int players() const { return n_; }
    const std::map<Profile, Rational>& support() const { return support_; }
    Rational probability(Profile s) const;

private:
    int n_;
    std::map<Profile, Rational> support_;
};

/// A violated correlated-equilibrium constraint: with probability-weighted
/// utility differences, value = sum over s with s_player = action of
/// d_player(s) * sigma(s), and value < 0 proves sigma is not a CE.
struct Certificate {
    int player = 0;
    int action = 0;
    Rational value;
    /// "definition-violation" when found by direct constraint evaluation,
    /// "remark1" when derived from a negative expected regret sum.
    std::string kind;
};

/// A violated coarse constraint: deviating to the fixed action `deviation`
/// improves player `player`'s expected utility by −value > 0.
struct CoarseViolation {
    int player = 0;
    int deviation = 0;
    Rational value;
};

struct ConstraintValue {
    int player;
    int action;
    Rational value;
};

/// All 2n correlated-equilibrium constraint values for a binary game:
/// entry (i, a) holds sum over s with s_i = a of
/// [u_i(s) − u_i(s¬i)] * sigma(s), in (player, action) order.
std::vector<ConstraintValue> ce_constraint_values(const GameTable& game,
                                                  const Distribution& sigma);

/// Exact correlated-equilibrium check for a complete binary game. Returns
/// nullopt when every constraint holds, otherwise the certificate with the
/// most negative value (ties: smallest player, then action 0).
std::optional<Certificate> is_correlated_equilibrium(const GameTable& game,
                                                     const Distribution& sigma);

/// Exact coarse-correlated-equilibrium check; this is the one operation that
/// accepts more than two actions per player. Returns the most negative
/// violated deviation (ties: smallest player, then smallest action).
std::optional<CoarseViolation> is_coarse_ce(const GameTable& game, const Distribution& sigma);

}  // namespace ceq
