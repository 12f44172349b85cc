#include "ceq/dynamics.hpp"

#include "ceq/error.hpp"
#include "ceq/hypercube.hpp"

#include <array>
#include <map>
#include <random>
#include <string>
#include <utility>

namespace ceq {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

VertexSet seen_set(int n, const QueryHistory& history) {
    VertexSet seen(n);
    for (const auto& obs : history) seen.insert(obs.profile);
    return seen;
}

class LexQuerier final : public QuerierStrategy {
public:
    std::string name() const override { return "lex"; }

    Profile next_query(int n, const QueryHistory& history) const override {
        const std::uint64_t total = std::uint64_t{1} << n;
        const std::uint64_t t = static_cast<std::uint64_t>(history.size()) % total;
        // t-th profile in bitstring order: digit k of t (from the top) is
        // player k+1's action.
        std::uint64_t code = 0;
        for (int i = 1; i <= n; ++i) {
            if ((t >> (n - i)) & 1) code |= std::uint64_t{1} << (i - 1);
        }
        return Profile(code);
    }

    Distribution output_distribution(int n, const QueryHistory& history) const override {
        if (history.empty()) return Distribution::uniform_all(n);
        std::vector<Profile> queried;
        queried.reserve(history.size());
        for (const auto& obs : history) queried.push_back(obs.profile);
        return Distribution::uniform_over(n, queried);
    }
};

class GreedyQuerier final : public QuerierStrategy {
public:
    std::string name() const override { return "greedy"; }

    Profile next_query(int n, const QueryHistory& history) const override {
        if (history.empty()) return Profile(0);
        const VertexSet seen = seen_set(n, history);
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t c = 0; c < total; ++c) {
            const Profile s(c);
            if (seen.contains(s)) continue;
            for (int i = 1; i <= n; ++i) {
                if (seen.contains(s.flip(i))) return s;
            }
        }
        return Profile(0);  // everything seen; repeats are harmless
    }

    Distribution output_distribution(int n, const QueryHistory& history) const override {
        return Distribution::point_mass(n, history.empty() ? Profile(0) : history.front().profile);
    }
};

class ScatterQuerier final : public QuerierStrategy {
public:
    static constexpr std::uint64_t kStreamSeed = 0x2545F4914F6CDD1DULL;

    std::string name() const override { return "scatter"; }

    Profile next_query(int n, const QueryHistory& history) const override {
        const std::uint64_t total = std::uint64_t{1} << n;
        const VertexSet seen = seen_set(n, history);
        if (seen.size() == total) return Profile(0);
        for (std::uint64_t k = 0;; ++k) {
            const Profile candidate(splitmix64(kStreamSeed + k) & (total - 1));
            if (!seen.contains(candidate)) return candidate;
        }
    }

    Distribution output_distribution(int n, const QueryHistory&) const override {
        return Distribution::uniform_all(n);
    }
};

class ChaserQuerier final : public QuerierStrategy {
public:
    std::string name() const override { return "chaser"; }

    Profile next_query(int n, const QueryHistory& history) const override {
        if (history.empty()) return Profile(0);
        const Profile best = best_profile(history);
        const VertexSet seen = seen_set(n, history);
        for (int i = 1; i <= n; ++i) {
            const Profile candidate = best.flip(i);
            if (!seen.contains(candidate)) return candidate;
        }
        const std::uint64_t total = std::uint64_t{1} << n;
        for (std::uint64_t c = 0; c < total; ++c) {
            if (!seen.contains(Profile(c))) return Profile(c);
        }
        return Profile(0);
    }

    Distribution output_distribution(int n, const QueryHistory& history) const override {
        return Distribution::point_mass(n, history.empty() ? Profile(0) : best_profile(history));
    }

private:
    // Highest total utility over players; the latest observation wins ties.
    static Profile best_profile(const QueryHistory& history) {
        Profile best = history.front().profile;
        Rational best_value;
        bool first = true;
        for (const auto& obs : history) {
            Rational value(0);
            for (const auto& u : obs.utilities) value += u;
            if (first || value >= best_value) {
                best = obs.profile;
                best_value = value;
                first = false;
            }
        }
        return best;
    }
};

Rational positive_part(const Rational& v) {
    return v > 0 ? v : Rational(0);
}

}  // namespace

std::vector<std::unique_ptr<QuerierStrategy>> builtin_queriers() {
    std::vector<std::unique_ptr<QuerierStrategy>> out;
    out.push_back(std::make_unique<LexQuerier>());
    out.push_back(std::make_unique<GreedyQuerier>());
    out.push_back(std::make_unique<ScatterQuerier>());
    out.push_back(std::make_unique<ChaserQuerier>());
    return out;
}

std::vector<std::string> builtin_querier_names() {
    return {"lex", "greedy", "scatter", "chaser"};
}

std::unique_ptr<QuerierStrategy> make_querier(const std::string& name) {
    if (name == "lex") return std::make_unique<LexQuerier>();
    if (name == "greedy") return std::make_unique<GreedyQuerier>();
    if (name == "scatter") return std::make_unique<ScatterQuerier>();
    if (name == "chaser") return std::make_unique<ChaserQuerier>();
    throw Error("unknown querier \"" + name + "\"; valid names: lex, greedy, scatter, chaser");
}

DuelResult run_duel(const QuerierStrategy& querier, int n, int budget) {
    if (budget < 0) throw Error("budget must be nonnegative, got " + std::to_string(budget));
    Adversary adversary(n);
    QueryHistory history;
    history.reserve(static_cast<std::size_t>(budget));
    for (int t = 0; t < budget; ++t) {
        const Profile q = querier.next_query(n, history);
        auto utilities = adversary.process_query(q);
        history.push_back({q, std::move(utilities)});
    }
    Distribution output = querier.output_distribution(n, history);
    FinalizeResult completed = adversary.finalize(output);
    auto verifier_certificate = is_correlated_equilibrium(completed.game, output);
    return DuelResult{querier.name(),
                      n,
                      budget,
                      static_cast<int>(history.size()),
                      completed.case_taken,
                      completed.certificate,
                      verifier_certificate.has_value(),
                      verifier_certificate,
                      completed.case1_root,
                      std::move(completed.game),
                      std::move(output),
                      adversary.transcript()};
}

RegretReport regret_matching(const GameTable& game, int rounds, std::uint64_t seed) {
    if (rounds < 1) throw Error("regret matching needs at least one round");
    if (!game.binary()) throw Error("regret matching supports binary games only");
    if (auto missing = game.first_missing()) {
        throw Error("game is incomplete: player " + std::to_string(missing->first) +
                    " at profile " + game.profile_string(missing->second) + " is unassigned");
    }
    const int n = game.players();

    std::mt19937_64 rng(seed);
    const auto draw_unit = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    // switch_regret[i][a] accumulates, over rounds where player i played a,
    // the utility gain it would have had from playing the other action.
    std::vector<std::array<Rational, 2>> switch_regret(static_cast<std::size_t>(n) + 1);
    std::map<Profile, std::int64_t> visits;

    for (int t = 0; t < rounds; ++t) {
        std::uint64_t code = 0;
        for (int i = 1; i <= n; ++i) {
            const auto& cr = switch_regret[static_cast<std::size_t>(i)];
            // Playing action a is weighted by the regret for not having
            // switched the other action to a.
            const Rational w0 = positive_part(cr[1]);
            const Rational w1 = positive_part(cr[0]);
            const Rational total = w0 + w1;
            const double r = draw_unit();
            int action;
            if (total == 0) {
                action = r < 0.5 ? 0 : 1;
            } else {
                action = r < to_double(w0 / total) ? 0 : 1;
            }
            if (action == 1) code |= std::uint64_t{1} << (i - 1);
        }
        const Profile played(code);
        ++visits[played];
        for (int i = 1; i <= n; ++i) {
            const Rational gain = game.utility(i, played.flip(i)) - game.utility(i, played);
            switch_regret[static_cast<std::size_t>(i)][static_cast<std::size_t>(played.bit(i))] +=
                gain;
        }
    }

    std::map<Profile, Rational> support;
    for (const auto& [s, count] : visits) {
        support[s] = make_rational(Int(count), Int(rounds));
    }
    Distribution empirical(n, std::move(support));

    Rational epsilon(0);
    std::vector<Rational> per_player;
    per_player.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        Rational worst(0);
        for (int a = 0; a <= 1; ++a) {
            const Rational average =
                positive_part(switch_regret[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]) /
                rounds;
            if (average > worst) worst = average;
        }
        per_player.push_back(worst);
        if (worst > epsilon) epsilon = worst;
    }

    return RegretReport{rounds, std::move(empirical), epsilon, std::move(per_player)};
}

namespace {

void check_weights(const std::vector<Rational>& y, int n) {
    if (static_cast<int>(y.size()) != n) {
        throw Error("weight vector has " + std::to_string(y.size()) + " entries, expected " +
                    std::to_string(n));
    }
    bool nonzero = false;
    for (const auto& w : y) {
        if (w < 0) throw Error("weights must be nonnegative, got " + to_fraction(w));
        if (w != 0) nonzero = true;
    }
    if (!nonzero) throw Error("weight vector must not be all zero");
}

}  // namespace

std::optional<Profile> solve_reduced(const ReducedInstance& inst) {
    const int n = inst.diff.players();
    check_weights(inst.y, n);
    if (auto gap = inst.diff.first_unassigned()) {
        throw Error("difference table is incomplete: d_" + std::to_string(gap->first) + "(" +
                    gap->second.bitstring(n) + ") is unassigned");
    }
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t c = 0; c < total; ++c) {
        const Profile s(c);
        Rational value(0);
        for (int i = 1; i <= n; ++i) {
            value += inst.y[static_cast<std::size_t>(i - 1)] * inst.diff.get(i, s);
        }
        if (value > 0) return s;
    }
    return std::nullopt;
}

bool reduced_necessity_check(const Transcript& transcript, const std::vector<Rational>& y) {
    const int n = transcript.n;
    if (n < 1 || n > 30) {
        throw Error("malformed transcript: player count " + std::to_string(n));
    }
    check_weights(y, n);

    DifferenceTable diff(n);
    for (const auto& record : transcript.queries) {
        for (const auto& entry : record.newly_assigned) {
            if (entry.player < 1 || entry.player > n ||
                entry.profile.code() >= (std::uint64_t{1} << n)) {
                throw Error("malformed transcript: assignment to d_" +
                            std::to_string(entry.player) + " at code " +
                            std::to_string(entry.profile.code()));
            }
            if (diff.is_assigned(entry.player, entry.profile)) {
                throw Error("malformed transcript: d_" + std::to_string(entry.player) + "(" +
                            entry.profile.bitstring(n) + ") assigned twice");
            }
            diff.set(entry.player, entry.profile, entry.value);
        }
    }

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t c = 0; c < total; ++c) {
        const Profile s(c);
        if (!diff.fully_assigned(s)) continue;
        Rational value(0);
        for (int i = 1; i <= n; ++i) {
            value += y[static_cast<std::size_t>(i - 1)] * diff.get(i, s);
        }
        if (value > 0) return false;
    }
    return true;
}

}  // namespace ceq
