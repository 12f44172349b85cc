#include "doctest.h"

#include "ceq/dynamics.hpp"
#include "ceq/json_io.hpp"
#include "ceq/lp.hpp"

#include <cstdint>
#include <vector>

using namespace ceq;

namespace {

QueryHistory synthetic_history(int n, const std::vector<std::uint64_t>& codes) {
    QueryHistory h;
    for (auto c : codes) {
        h.push_back(QueryObservation{Profile(c), std::vector<Rational>(n, Rational(0))});
    }
    return h;
}

}  // namespace

TEST_CASE("builtin querier registry") {
    auto names = builtin_querier_names();
    REQUIRE(names.size() == 4);
    CHECK(names[0] == "lex");
    CHECK(names[1] == "greedy");
    CHECK(names[2] == "scatter");
    CHECK(names[3] == "chaser");
    for (const auto& name : names) CHECK(make_querier(name)->name() == name);
    CHECK_THROWS_AS(make_querier("nope"), Error);
}

TEST_CASE("lex walks bitstring order with player 1 as the top digit") {
    auto lex = make_querier("lex");
    std::vector<std::uint64_t> expected{0, 4, 2, 6, 1, 5, 3, 7};
    QueryHistory h;
    for (std::uint64_t want : expected) {
        Profile q = lex->next_query(3, h);
        CHECK(q.code() == want);
        h.push_back(QueryObservation{q, std::vector<Rational>(3, Rational(0))});
    }
    // First three queries spelled out: 000, 001, 010.
    CHECK(Profile(expected[0]).bitstring(3) == "000");
    CHECK(Profile(expected[1]).bitstring(3) == "001");
    CHECK(Profile(expected[2]).bitstring(3) == "010");

    CHECK(lex->output_distribution(3, {}).probability(Profile(5)) == make_rational(1, 8));
    auto out = lex->output_distribution(3, synthetic_history(3, {0, 4}));
    CHECK(out.probability(Profile(0)) == make_rational(1, 2));
    CHECK(out.probability(Profile(4)) == make_rational(1, 2));
    CHECK(out.probability(Profile(1)) == Rational(0));
}

TEST_CASE("greedy keeps its query set connected") {
    auto greedy = make_querier("greedy");
    CHECK(greedy->next_query(8, {}) == Profile(0));
    auto h = synthetic_history(8, {0});
    CHECK(greedy->next_query(8, h) == Profile(1));
    h = synthetic_history(8, {0, 1});
    CHECK(greedy->next_query(8, h) == Profile(2));
    // Output: point mass on its first query.
    CHECK(greedy->output_distribution(8, h).probability(Profile(0)) == Rational(1));

    // Connectivity holds from any seen set: next query is adjacent to a
    // previous one.
    h = synthetic_history(8, {17});
    Profile q = greedy->next_query(8, h);
    bool adjacent = false;
    for (int i = 1; i <= 8; ++i) adjacent = adjacent || q.flip(i) == Profile(17);
    CHECK(adjacent);
}

TEST_CASE("scatter is deterministic and avoids repeats") {
    auto scatter = make_querier("scatter");
    Profile first = scatter->next_query(6, {});
    CHECK(scatter->next_query(6, {}) == first);
    auto h = synthetic_history(6, {first.code()});
    Profile second = scatter->next_query(6, h);
    CHECK(second != first);
    // Output is uniform over the whole cube regardless of history.
    CHECK(scatter->output_distribution(6, h).probability(Profile(63)) == make_rational(1, 64));
}

TEST_CASE("chaser pursues the highest observed total utility") {
    auto chaser = make_querier("chaser");
    QueryHistory h;
    h.push_back(QueryObservation{Profile(5), {Rational(3), Rational(0), Rational(0)}});
    h.push_back(QueryObservation{Profile(2), {Rational(1), Rational(0), Rational(0)}});
    Profile q = chaser->next_query(3, h);
    bool adjacent_to_best = false;
    for (int i = 1; i <= 3; ++i) adjacent_to_best = adjacent_to_best || q.flip(i) == Profile(5);
    CHECK(adjacent_to_best);
    CHECK(chaser->output_distribution(3, h).probability(Profile(5)) == Rational(1));

    // Ties go to the latest observation.
    h.clear();
    h.push_back(QueryObservation{Profile(1), {Rational(2), Rational(0), Rational(0)}});
    h.push_back(QueryObservation{Profile(6), {Rational(2), Rational(0), Rational(0)}});
    CHECK(chaser->output_distribution(3, h).probability(Profile(6)) == Rational(1));
}

TEST_CASE("duels certify within budget for every builtin querier") {
    for (int n : {6, 8}) {
        for (const auto& querier : builtin_queriers()) {
            auto result = run_duel(*querier, n, max_budget(n));
            CHECK(result.verifier_agreement);
            CHECK((result.case_taken == 1 || result.case_taken == 2));
            CHECK(result.certificate.value < Rational(0));
            CHECK(result.queries_used <= max_budget(n));
            REQUIRE(result.verifier_certificate.has_value());
            CHECK(result.verifier_certificate->value < Rational(0));
            if (result.case_taken == 1) CHECK(result.case1_root.has_value());
        }
    }
}

TEST_CASE("a zero-budget duel still loses to the adversary") {
    auto lex = make_querier("lex");
    auto result = run_duel(*lex, 6, 0);
    CHECK(result.queries_used == 0);
    CHECK(result.case_taken == 2);  // uniform output: untouched mass is 1
    CHECK(result.verifier_agreement);
}

TEST_CASE("replaying a duel reproduces the transcript byte for byte") {
    auto scatter = make_querier("scatter");
    auto a = run_duel(*scatter, 8, 3);
    auto b = run_duel(*scatter, 8, 3);
    CHECK(transcript_to_jsonl(a.transcript) == transcript_to_jsonl(b.transcript));
    CHECK(a.certificate.value == b.certificate.value);
}

TEST_CASE("regret matching on a constant game accrues no regret") {
    GameTable g(2);
    for (std::uint32_t c = 0; c < 4; ++c) {
        g.set_utility_at(1, c, Rational(1));
        g.set_utility_at(2, c, Rational(1));
    }
    auto report = regret_matching(g, 64, 99);
    CHECK(report.rounds == 64);
    CHECK(report.epsilon == Rational(0));
    REQUIRE(report.per_player.size() == 2);
    CHECK(report.per_player[0] == Rational(0));
    CHECK(report.per_player[1] == Rational(0));
}

TEST_CASE("regret matching converges on a dominant-action game") {
    // Both players strictly prefer action 1 everywhere; the only correlated
    // equilibrium is the point mass the LP solver finds.
    GameTable g(2);
    for (std::uint32_t c = 0; c < 4; ++c) {
        Profile s(c);
        g.set_utility_at(1, c, s.bit(1) == 1 ? Rational(1) : Rational(0));
        g.set_utility_at(2, c, s.bit(2) == 1 ? Rational(1) : Rational(0));
    }
    auto lp = find_exact_ce(g);
    CHECK(lp.probability(Profile(3)) == Rational(1));

    auto report = regret_matching(g, 4000, 7);
    CHECK(report.epsilon < make_rational(1, 10));
    CHECK(report.empirical.probability(Profile(3)) > make_rational(9, 10));
}

TEST_CASE("the empirical distribution is an epsilon coarse equilibrium") {
    GameTable g(2);
    g.set_utility(1, Profile::from_bitstring("00"), Rational(3));
    g.set_utility(1, Profile::from_bitstring("10"), Rational(0));
    g.set_utility(1, Profile::from_bitstring("01"), Rational(0));
    g.set_utility(1, Profile::from_bitstring("11"), Rational(1));
    g.set_utility(2, Profile::from_bitstring("00"), Rational(2));
    g.set_utility(2, Profile::from_bitstring("10"), Rational(0));
    g.set_utility(2, Profile::from_bitstring("01"), Rational(1));
    g.set_utility(2, Profile::from_bitstring("11"), Rational(3));
    auto report = regret_matching(g, 2000, 11);
    auto violation = is_coarse_ce(g, report.empirical);
    if (violation) {
        CHECK(-violation->value <= report.epsilon);
    }
    for (const auto& r : report.per_player) CHECK(r <= report.epsilon);
}

TEST_CASE("solve_reduced finds the smallest positive-sum profile") {
    DifferenceTable t(1);
    t.assign_pair(1, Profile(0), Rational(-1));
    ReducedInstance inst{{Rational(1)}, t};
    auto hit = solve_reduced(inst);
    REQUIRE(hit.has_value());
    CHECK(*hit == Profile(1));

    DifferenceTable zero(1);
    zero.assign_pair(1, Profile(0), Rational(0));
    CHECK(!solve_reduced(ReducedInstance{{Rational(1)}, zero}).has_value());

    CHECK_THROWS_AS(solve_reduced(ReducedInstance{{Rational(-1)}, t}), Error);
    CHECK_THROWS_AS(solve_reduced(ReducedInstance{{Rational(0)}, zero}), Error);
    CHECK_THROWS_AS(solve_reduced(ReducedInstance{{Rational(1), Rational(1)}, t}), Error);
}

TEST_CASE("solve_reduced on a completed case-1 duel returns the root") {
    auto greedy = make_querier("greedy");
    auto result = run_duel(*greedy, 8, 3);
    REQUIRE(result.case_taken == 1);
    REQUIRE(result.case1_root.has_value());
    auto diff = differences_from_utilities(result.game);
    ReducedInstance inst{std::vector<Rational>(8, Rational(1)), diff};
    auto hit = solve_reduced(inst);
    REQUIRE(hit.has_value());
    CHECK(*hit == *result.case1_root);
}

TEST_CASE("query transcripts never certify a positive weighted sum") {
    for (const auto& querier : builtin_queriers()) {
        auto result = run_duel(*querier, 8, 3);
        CHECK(reduced_necessity_check(result.transcript, std::vector<Rational>(8, Rational(1))));
        CHECK(reduced_necessity_check(result.transcript, std::vector<Rational>(8, Rational(3))));
    }
}

TEST_CASE("reduced_necessity_check validates its inputs") {
    auto lex = make_querier("lex");
    auto result = run_duel(*lex, 6, 1);
    CHECK_THROWS_AS(reduced_necessity_check(result.transcript, std::vector<Rational>(5, Rational(1))),
                    Error);
    Transcript doubled = result.transcript;
    doubled.queries.insert(doubled.queries.end(), result.transcript.queries.begin(),
                           result.transcript.queries.end());
    CHECK_THROWS_AS(reduced_necessity_check(doubled, std::vector<Rational>(6, Rational(1))), Error);
}
