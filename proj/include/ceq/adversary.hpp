#pragma once

#include "ceq/difference.hpp"
#include "ceq/game.hpp"
#include "ceq/hypercube.hpp"
#include "ceq/profile.hpp"
#include "ceq/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ceq {

/// Largest query count the adversary can absorb while still guaranteeing
/// that no querier can pin down a correlated equilibrium:
/// ceil(2^n / (n^2 + 1)) - 1.
int max_budget(int n);

/// V splits into three regions relative to the live component W:
/// assigned = V \ W (every difference entry known), frontier = W vertices
/// with a neighbor outside W (partially known), untouched = the rest of W
/// (nothing known).
struct RegionSplit {
    VertexSet assigned;
    VertexSet frontier;
    VertexSet untouched;
};

struct PropertyCheck {
    bool pass = true;
    std::string witness;  // empty when pass
};

/// Result of auditing the adversary's standing invariants.
struct PropertyReport {
    /// Every vertex outside the live component is fully assigned.
    PropertyCheck outside_fully_assigned;
    /// Every fully assigned vertex outside the live component has D(s) = -1.
    PropertyCheck outside_regret_sum;
    /// Edges with both endpoints inside the live component are unassigned.
    PropertyCheck live_edges_unassigned;
    /// Vertices outside the live component that touch it have been queried.
    PropertyCheck boundary_queried;
    /// Every assigned entry has an exact mirror: d_i(s¬i) = -d_i(s).
    PropertyCheck complementarity;

    bool all_pass() const {
        return outside_fully_assigned.pass && outside_regret_sum.pass &&
               live_edges_unassigned.pass && boundary_queried.pass && complementarity.pass;
    }
};

/// Audits the invariants on raw state; exposed separately from the Adversary
/// class so tests can run it against deliberately corrupted tables.
PropertyReport check_adversary_properties(const DifferenceTable& diff, const VertexSet& live,
                                          const std::vector<Profile>& queries);

struct AssignmentRecord {
    int player;
    Profile profile;
    Rational value;
};

struct QueryRecord {
    int t = 0;  // 1-based ordinal of the process_query call
    Profile profile;
    std::vector<Rational> returned_utilities;
    std::vector<AssignmentRecord> newly_assigned;  // empty for cached replies
};

struct FinalizeRecord {
    int case_taken = 0;  // 1 or 2
    Certificate certificate;
    std::uint64_t assigned_size = 0;
    std::uint64_t frontier_size = 0;
    std::uint64_t untouched_size = 0;
};

/// Full record of one adversary run: every utility reply with the difference
/// entries it committed, then the completion record.
struct Transcript {
    int n = 0;
    std::vector<QueryRecord> queries;
    std::optional<FinalizeRecord> final_record;
};

struct FinalizeResult {
    int case_taken = 0;
    GameTable game;
    Certificate certificate;
    /// Case 1 only: the vertex carrying the positive regret sum 2^n - 1.
    std::optional<Profile> case1_root;
    /// Region split at the moment finalize was called, before completion.
    RegionSplit regions;
    /// Probability mass the submitted distribution puts on the untouched
    /// region; the case decision threshold is 1/6.
    Rational untouched_mass;
};

/// Answers pure-profile utility queries while committing to as little of the
/// game as possible: after each query the vertices severed from the largest
/// live component get difference values making their regret sum exactly -1,
/// so no distribution supported there can survive verification. finalize
/// completes the table against a submitted distribution and returns a
/// certificate that it is not a correlated equilibrium.
///
/// Within budget max_budget(n) and for n >= 6 the certificate is guaranteed;
/// outside that regime queries are processed best effort and failures raise
/// GuaranteeError rather than returning a wrong answer.
class Adversary {
public:
    explicit Adversary(int n);

    int players() const { return n_; }
    bool finalized() const { return finalized_; }
    /// Distinct informative queries absorbed so far (|Q_t|).
    int queries_made() const { return static_cast<int>(queries_.size()); }
    const std::vector<Profile>& queries() const { return queries_; }
    const VertexSet& live() const { return live_; }
    const DifferenceTable& differences() const { return diff_; }
    /// M = maximum |d_i(s)| over assigned entries (0 when none).
    const Rational& max_abs_assigned() const { return max_abs_; }

    /// Returns (u_1(s), ..., u_n(s)). Queries outside the live component hit
    /// already-committed values and change nothing; repeating a query returns
    /// the identical reply.
    std::vector<Rational> process_query(Profile s);

    RegionSplit region_split() const;
    PropertyReport check_properties() const;

    /// Completes the difference table against the submitted distribution and
    /// produces a verified certificate. The state is consumed: no further
    /// queries or completions are accepted.
    FinalizeResult finalize(const Distribution& x);

    /// Transcript so far; includes the completion record once finalized.
    const Transcript& transcript() const { return transcript_; }

private:
    std::vector<AssignmentRecord> run_tree_pass(const SpanningTree& tree);
    void commit_pair(std::vector<AssignmentRecord>& records, int player, Profile s,
                     const Rational& value);

    int n_;
    std::vector<Profile> queries_;
    VertexSet queried_set_;
    VertexSet live_;
    DifferenceTable diff_;
    Rational max_abs_;
    bool finalized_ = false;
    int call_counter_ = 0;
    Transcript transcript_;
};

}  // namespace ceq
