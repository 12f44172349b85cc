#include "ceq/adversary.hpp"

#include "ceq/error.hpp"

#include <string>
#include <utility>

namespace ceq {

namespace {

int checked_adversary_n(int n) {
    if (n < 2) {
        throw Error("adversary needs at least 2 players, got n=" + std::to_string(n));
    }
    if (n > 20) {
        throw Error("adversary holds a table of n*2^n rationals; n=" + std::to_string(n) +
                    " exceeds the supported limit of 20");
    }
    return n;
}

}  // namespace

int max_budget(int n) {
    if (n < 2 || n > 32) {
        throw Error("max_budget supports n in [2, 32], got " + std::to_string(n));
    }
    const Int total = Int(1) << n;
    const Int den = Int(n) * n + 1;
    const Int budget = (total + den - 1) / den - 1;
    return budget.convert_to<int>();
}

PropertyReport check_adversary_properties(const DifferenceTable& diff, const VertexSet& live,
                                          const std::vector<Profile>& queries) {
    PropertyReport report;
    const int n = diff.players();
    const std::uint64_t total = std::uint64_t{1} << n;
    VertexSet queried(n);
    for (Profile q : queries) queried.insert(q);

    for (std::uint64_t c = 0; c < total; ++c) {
        const Profile s(c);
        if (live.contains(s)) {
            if (report.live_edges_unassigned.pass) {
                for (int i = 1; i <= n; ++i) {
                    const Profile t = s.flip(i);
                    if (t.code() < s.code() || !live.contains(t)) continue;
                    if (diff.is_assigned(i, s) || diff.is_assigned(i, t)) {
                        report.live_edges_unassigned = {
                            false, "edge (" + s.bitstring(n) + ", " + t.bitstring(n) +
                                       ") is assigned inside the live component"};
                        break;
                    }
                }
            }
            continue;
        }

        bool fully = true;
        if (report.outside_fully_assigned.pass) {
            for (int i = 1; i <= n; ++i) {
                if (!diff.is_assigned(i, s)) {
                    fully = false;
                    report.outside_fully_assigned = {
                        false, "d_" + std::to_string(i) + "(" + s.bitstring(n) +
                                   ") is unassigned outside the live component"};
                    break;
                }
            }
        } else {
            fully = diff.fully_assigned(s);
        }
        if (fully && report.outside_regret_sum.pass) {
            const Rational D = sum_differences(diff, s);
            if (D != -1) {
                report.outside_regret_sum = {false, "D(" + s.bitstring(n) + ") = " +
                                                        to_fraction(D) + ", expected -1"};
            }
        }
        if (report.boundary_queried.pass && !queried.contains(s)) {
            for (int i = 1; i <= n; ++i) {
                if (live.contains(s.flip(i))) {
                    report.boundary_queried = {
                        false, s.bitstring(n) + " touches the live component but was never queried"};
                    break;
                }
            }
        }
    }

    if (auto bad = diff.complementarity_violation()) {
        report.complementarity = {false, "d_" + std::to_string(bad->first) + "(" +
                                             bad->second.bitstring(n) + ") has no exact mirror"};
    }
    return report;
}

Adversary::Adversary(int n)
    : n_(checked_adversary_n(n)),
      queried_set_(n_),
      live_(VertexSet::full(n_)),
      diff_(n_),
      max_abs_(0) {
    transcript_.n = n_;
}

void Adversary::commit_pair(std::vector<AssignmentRecord>& records, int player, Profile s,
                            const Rational& value) {
    diff_.assign_pair(player, s, value);
    records.push_back({player, s, value});
    records.push_back({player, s.flip(player), -value});
    const Rational magnitude = value >= 0 ? value : Rational(-value);
    if (magnitude > max_abs_) max_abs_ = magnitude;
}

std::vector<AssignmentRecord> Adversary::run_tree_pass(const SpanningTree& tree) {
    std::vector<AssignmentRecord> records;
    for (Profile w : tree.order) {
        if (w == tree.root) continue;
        const int parent_coord = tree.parent_of(w)->coord;
        Rational others(0);
        for (int j = 1; j <= n_; ++j) {
            if (j == parent_coord) continue;
            if (!diff_.is_assigned(j, w)) commit_pair(records, j, w, Rational(0));
            others += diff_.get(j, w);
        }
        // Forces the regret sum at w to exactly -1; the mirror entry lands on
        // the parent, which is processed later.
        commit_pair(records, parent_coord, w, -others - 1);
    }
    return records;
}

std::vector<Rational> Adversary::process_query(Profile s) {
    if (finalized_) throw Error("adversary is finalized; no further queries accepted");
    if (s.code() >= live_.universe_size()) {
        throw Error("query profile code " + std::to_string(s.code()) + " out of range for n=" +
                    std::to_string(n_));
    }
    ++call_counter_;

    if (!live_.contains(s)) {
        // Already severed from the live component, hence fully committed:
        // answer from the table without consuming anything.
        auto u = canonical_utilities_at(diff_, s);
        transcript_.queries.push_back({call_counter_, s, u, {}});
        return u;
    }

    queries_.push_back(s);
    queried_set_.insert(s);
    if (queried_set_.size() == live_.universe_size()) {
        throw GuaranteeError("every profile has been queried; no live component remains");
    }
    VertexSet next_live = largest_component(n_, queried_set_);

    bool monotone = true;
    Profile escape(0);
    next_live.for_each([&](Profile w) {
        if (monotone && !live_.contains(w)) {
            monotone = false;
            escape = w;
        }
    });
    if (!monotone) {
        throw GuaranteeError("live component escaped to " + escape.bitstring(n_) +
                             "; the query count left the guaranteed regime");
    }

    // Severed region plus one live anchor: the root of the assignment pass.
    VertexSet tree_set(n_);
    live_.for_each([&](Profile w) {
        if (!next_live.contains(w)) tree_set.insert(w);
    });
    int root_coord = 0;
    for (int i = 1; i <= n_; ++i) {
        if (next_live.contains(s.flip(i))) {
            root_coord = i;
            break;
        }
    }
    if (root_coord == 0) {
        throw GuaranteeError("queried vertex " + s.bitstring(n_) +
                             " has no neighbor in the live component; the query count left the "
                             "guaranteed regime");
    }
    const Profile v = s.flip(root_coord);
    tree_set.insert(v);

    const SpanningTree tree = spanning_tree(tree_set, v, n_);
    auto records = run_tree_pass(tree);
    live_ = std::move(next_live);

    auto u = canonical_utilities_at(diff_, s);
    transcript_.queries.push_back({call_counter_, s, u, std::move(records)});
    return u;
}

RegionSplit Adversary::region_split() const {
    RegionSplit split{VertexSet(n_), VertexSet(n_), VertexSet(n_)};
    const std::uint64_t total = std::uint64_t{1} << n_;
    for (std::uint64_t c = 0; c < total; ++c) {
        const Profile s(c);
        if (!live_.contains(s)) {
            split.assigned.insert(s);
            continue;
        }
        bool touches_outside = false;
        for (int i = 1; i <= n_; ++i) {
            if (!live_.contains(s.flip(i))) {
                touches_outside = true;
                break;
            }
        }
        (touches_outside ? split.frontier : split.untouched).insert(s);
    }
    return split;
}

PropertyReport Adversary::check_properties() const {
    return check_adversary_properties(diff_, live_, queries_);
}

FinalizeResult Adversary::finalize(const Distribution& x) {
    if (finalized_) throw Error("adversary is already finalized");
    if (x.players() != n_) {
        throw Error("distribution has " + std::to_string(x.players()) + " players, adversary has " +
                    std::to_string(n_));
    }

    RegionSplit regions = region_split();
    Rational untouched_mass(0);
    for (const auto& [s, p] : x.support()) {
        if (regions.untouched.contains(s)) untouched_mass += p;
    }

    const Rational threshold = make_rational(Int(1), Int(6));
    int case_taken = 0;
    std::optional<Profile> case1_root;
    Certificate certificate;

    if (untouched_mass <= threshold) {
        case_taken = 1;
        // The submitted distribution barely touches the untouched region, so
        // some vertex there carries probability at most 1/2^n; rooting the
        // completion pass at it puts the entire positive regret sum 2^n - 1
        // on a vertex the distribution cannot afford.
        const VertexSet& pool = regions.untouched.empty() ? live_ : regions.untouched;
        std::optional<Profile> best;
        Rational best_mass;
        pool.for_each([&](Profile s) {
            const Rational m = x.probability(s);
            if (!best || m < best_mass) {
                best = s;
                best_mass = m;
            }
        });
        const Profile v = *best;
        const SpanningTree tree = spanning_tree(live_, v, n_);
        run_tree_pass(tree);
        finalized_ = true;
        case1_root = v;

        auto cert = remark1_certificate(diff_, x);
        if (!cert) {
            throw GuaranteeError(
                "expected regret sum is nonnegative after completion; the guarantee requires "
                "n >= 6 and at most max_budget(n) queries");
        }
        certificate = *cert;
    } else {
        case_taken = 2;
        // Over 1/6 of the mass sits on untouched vertices. Penalize player 1
        // on the heavier action half of that region so strongly that no
        // previously committed value can compensate.
        Rational mass0(0), mass1(0);
        for (const auto& [s, p] : x.support()) {
            if (!regions.untouched.contains(s)) continue;
            (s.bit(1) == 0 ? mass0 : mass1) += p;
        }
        const int j = mass1 > mass0 ? 1 : 0;
        const Rational scale = max_abs_ < 1 ? Rational(1) : max_abs_;
        const Rational penalty = Rational(-12) * scale;
        std::vector<AssignmentRecord> records;
        regions.untouched.for_each([&](Profile s) {
            if (s.bit(1) == j) commit_pair(records, 1, s, penalty);
        });
        const std::uint64_t total = std::uint64_t{1} << n_;
        for (std::uint64_t c = 0; c < total; ++c) {
            const Profile s(c);
            for (int i = 1; i <= n_; ++i) {
                if (!diff_.is_assigned(i, s)) diff_.assign_pair(i, s, Rational(0));
            }
        }
        finalized_ = true;

        Rational value(0);
        for (const auto& [s, p] : x.support()) {
            if (s.bit(1) == j) value += diff_.get(1, s) * p;
        }
        if (value >= 0) {
            throw GuaranteeError("penalized constraint is not violated after completion");
        }
        certificate = Certificate{1, j, value, "definition-violation"};
    }

    GameTable game = utilities_from_differences(diff_);
    if (!is_correlated_equilibrium(game, x)) {
        throw GuaranteeError(
            "completed game admits the submitted distribution as a correlated equilibrium; the "
            "guarantee requires n >= 6 and at most max_budget(n) queries");
    }

    transcript_.final_record = FinalizeRecord{case_taken, certificate, regions.assigned.size(),
                                              regions.frontier.size(), regions.untouched.size()};

    return FinalizeResult{case_taken,  std::move(game), certificate,
                          case1_root,  std::move(regions), untouched_mass};
}

}  // namespace ceq
