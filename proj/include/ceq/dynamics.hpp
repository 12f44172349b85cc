#pragma once

#include "ceq/adversary.hpp"
#include "ceq/difference.hpp"
#include "ceq/game.hpp"
#include "ceq/profile.hpp"
#include "ceq/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ceq {

struct QueryObservation {
    Profile profile;
    std::vector<Rational> utilities;
};

using QueryHistory = std::vector<QueryObservation>;

/// A deterministic query algorithm: both methods must be pure functions of
/// (n, history), so replaying a history reproduces the run exactly.
class QuerierStrategy {
public:
    virtual ~QuerierStrategy() = default;

    virtual std::string name() const = 0;
    virtual Profile next_query(int n, const QueryHistory& history) const = 0;
    /// The distribution the algorithm would submit if stopped now.
    virtual Distribution output_distribution(int n, const QueryHistory& history) const = 0;
};

/// The built-in strategies:
///  - "lex": queries profiles in lexicographic bitstring order; outputs the
///    uniform distribution over the distinct profiles it has seen (uniform
///    over everything when it has seen none).
///  - "greedy": starts at the all-zeros profile, then always queries the
///    smallest unseen profile adjacent to one it has seen, keeping its query
///    set connected; outputs a point mass on its first query.
///  - "scatter": queries pseudo-random profiles from a fixed-seed hash
///    stream, skipping repeats; outputs the uniform distribution over all
///    2^n profiles.
///  - "chaser": queries neighbors of the best profile seen so far (by total
///    utility over players, latest wins ties); outputs a point mass on that
///    best profile.
std::vector<std::unique_ptr<QuerierStrategy>> builtin_queriers();
std::unique_ptr<QuerierStrategy> make_querier(const std::string& name);
std::vector<std::string> builtin_querier_names();

struct DuelResult {
    std::string querier;
    int n = 0;
    int budget = 0;
    int queries_used = 0;
    int case_taken = 0;
    Certificate certificate;
    /// True when the independent verifier also rejects the submitted
    /// distribution; guaranteed for n >= 6 within max_budget(n).
    bool verifier_agreement = false;
    std::optional<Certificate> verifier_certificate;
    std::optional<Profile> case1_root;
    GameTable game;
    Distribution output;
    Transcript transcript;
};

/// Drives `querier` against a fresh adversary for `budget` queries, submits
/// its output distribution, and cross-checks the resulting certificate.
DuelResult run_duel(const QuerierStrategy& querier, int n, int budget);

struct RegretReport {
    int rounds = 0;
    Distribution empirical;
    /// Maximum average regret for having not switched one action to the
    /// other, over all players and actions; exact.
    Rational epsilon;
    std::vector<Rational> per_player;
};

/// Regret matching on a complete binary game: each round every player plays
/// an action with probability proportional to the positive cumulative regret
/// for switching to it (uniform when neither switch has positive regret).
/// Action sampling uses a seeded deterministic generator, so runs are
/// reproducible; all regret bookkeeping is exact.
RegretReport regret_matching(const GameTable& game, int rounds, std::uint64_t seed);

/// Weight vector plus a complete difference table: the task is to find a
/// profile whose weighted difference sum is strictly positive.
struct ReducedInstance {
    std::vector<Rational> y;  // nonnegative, not all zero
    DifferenceTable diff;
};

/// Smallest-code profile s with sum_i y_i * d_i(s) > 0, if any.
std::optional<Profile> solve_reduced(const ReducedInstance& inst);

/// True iff no profile fully assigned during the transcript's query phase
/// has a strictly positive weighted difference sum. With y = (1,...,1) this
/// holds for every adversary transcript: fully assigned profiles have
/// difference sum exactly -1.
bool reduced_necessity_check(const Transcript& transcript, const std::vector<Rational>& y);

}  // namespace ceq
