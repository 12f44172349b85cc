#include "ceq/adversary.hpp"
#include "ceq/difference.hpp"
#include "ceq/dynamics.hpp"
#include "ceq/error.hpp"
#include "ceq/game.hpp"
#include "ceq/hypercube.hpp"
#include "ceq/json_io.hpp"
#include "ceq/lp.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::ordered_json;

std::string read_input(const std::string& path) {
    std::ostringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path);
    if (!in) throw ceq::ParseError("cannot open \"" + path + "\"");
    buffer << in.rdbuf();
    return buffer.str();
}

ordered_json read_json_file(const std::string& path) {
    try {
        return ordered_json::parse(read_input(path));
    } catch (const nlohmann::json::exception& e) {
        throw ceq::ParseError("\"" + path + "\": " + e.what());
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw ceq::Error("cannot write \"" + path + "\"");
    out << content;
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buffer;
}

bool adversary_debug_log() {
    const char* level = std::getenv("CE_ADVERSARY_LOG");
    return level != nullptr && std::string(level) == "debug";
}

std::vector<ceq::Rational> parse_weights(const std::string& text, int n) {
    if (text.empty()) return std::vector<ceq::Rational>(static_cast<std::size_t>(n), ceq::Rational(1));
    std::vector<ceq::Rational> weights;
    std::istringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        weights.push_back(ceq::parse_rational(item));
    }
    if (static_cast<int>(weights.size()) != n) {
        throw ceq::ParseError("--y has " + std::to_string(weights.size()) + " entries, expected " +
                              std::to_string(n));
    }
    return weights;
}

void add_float_fields(ordered_json& j) {
    if (j.contains("certificate") && j["certificate"].is_object()) {
        j["certificate"]["value_decimal"] =
            ceq::to_double(ceq::parse_rational(j["certificate"]["value"].get<std::string>()));
    }
    if (j.contains("verifier_certificate") && j["verifier_certificate"].is_object()) {
        j["verifier_certificate"]["value_decimal"] = ceq::to_double(
            ceq::parse_rational(j["verifier_certificate"]["value"].get<std::string>()));
    }
}

struct DuelConfig {
    int n = 6;
    std::string querier = "lex";
    bool all_queriers = false;
    int budget = -1;
    bool force = false;
    bool reproducible = false;
    bool with_float = false;
    std::string out;
    std::string transcript_path;
    std::string game_out;
    std::string dist_out;
};

int cmd_duel(const DuelConfig& config) {
    const int budget = config.budget < 0 ? ceq::max_budget(config.n) : config.budget;
    if (budget > ceq::max_budget(config.n)) {
        if (!config.force) {
            std::cerr << "budget " << budget << " exceeds max_budget(" << config.n
                      << ") = " << ceq::max_budget(config.n)
                      << "; the certificate guarantee does not apply. Pass --force to run anyway.\n";
            return 2;
        }
        std::cerr << "warning: budget " << budget << " exceeds max_budget(" << config.n
                  << ") = " << ceq::max_budget(config.n)
                  << "; certificate production is best effort only\n";
    }

    std::vector<std::unique_ptr<ceq::QuerierStrategy>> queriers;
    if (config.all_queriers) {
        if (!config.transcript_path.empty() || !config.game_out.empty() ||
            !config.dist_out.empty()) {
            std::cerr << "--transcript/--game-out/--dist-out need a single querier\n";
            return 2;
        }
        queriers = ceq::builtin_queriers();
    } else {
        bool known = false;
        for (const auto& name : ceq::builtin_querier_names()) {
            if (name == config.querier) known = true;
        }
        if (!known) {
            std::cerr << "unknown querier \"" << config.querier
                      << "\"; valid names: lex, greedy, scatter, chaser\n";
            return 2;
        }
        queriers.push_back(ceq::make_querier(config.querier));
    }

    std::vector<std::optional<ceq::DuelResult>> results(queriers.size());
    std::vector<std::exception_ptr> failures(queriers.size());
    if (queriers.size() == 1) {
        results[0] = ceq::run_duel(*queriers[0], config.n, budget);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(queriers.size());
        for (std::size_t k = 0; k < queriers.size(); ++k) {
            workers.emplace_back([&, k]() {
                try {
                    results[k] = ceq::run_duel(*queriers[k], config.n, budget);
                } catch (...) {
                    failures[k] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
        for (const auto& failure : failures) {
            if (failure) std::rethrow_exception(failure);
        }
    }

    if (adversary_debug_log()) {
        for (const auto& result : results) {
            for (const auto& record : result->transcript.queries) {
                std::cerr << "[" << result->querier << "] t=" << record.t
                          << " profile=" << record.profile.bitstring(result->n)
                          << " new_assignments=" << record.newly_assigned.size() << "\n";
            }
        }
    }

    bool all_verified = true;
    ordered_json out_json;
    if (config.all_queriers) {
        out_json = ordered_json::array();
        for (const auto& result : results) {
            ordered_json j = ceq::duel_result_to_json(*result);
            if (config.with_float) add_float_fields(j);
            out_json.push_back(std::move(j));
            all_verified = all_verified && result->verifier_agreement;
        }
        if (!config.reproducible) {
            out_json = ordered_json{{"timestamp", iso_timestamp()}, {"duels", std::move(out_json)}};
        } else {
            out_json = ordered_json{{"duels", std::move(out_json)}};
        }
    } else {
        const ceq::DuelResult& result = *results[0];
        out_json = ceq::duel_result_to_json(result);
        if (config.with_float) add_float_fields(out_json);
        if (!config.reproducible) out_json["timestamp"] = iso_timestamp();
        all_verified = result.verifier_agreement;
        if (!config.transcript_path.empty()) {
            write_output(config.transcript_path, ceq::transcript_to_jsonl(result.transcript));
        }
        if (!config.game_out.empty()) {
            write_output(config.game_out, ceq::game_to_json(result.game).dump(2) + "\n");
        }
        if (!config.dist_out.empty()) {
            write_output(config.dist_out,
                         ceq::distribution_to_json(result.output).dump(2) + "\n");
        }
    }
    write_output(config.out, out_json.dump(2));
    return all_verified ? 0 : 1;
}

struct VerifyConfig {
    std::string game_path;
    std::string dist_path;
    bool coarse = false;
    bool with_float = false;
};

int cmd_verify(const VerifyConfig& config) {
    const ceq::GameTable game = ceq::game_from_json(read_json_file(config.game_path));
    const ceq::Distribution dist =
        ceq::distribution_from_json(read_json_file(config.dist_path), &game);
    ordered_json j;
    if (config.coarse) {
        const auto verdict = ceq::is_coarse_ce(game, dist);
        if (!verdict) {
            j["verdict"] = "ok";
            write_output("", j.dump(2));
            return 0;
        }
        j["verdict"] = "not-cce";
        j["violation"] = ceq::coarse_violation_to_json(*verdict);
        if (config.with_float) {
            j["violation"]["value_decimal"] = ceq::to_double(verdict->value);
        }
        write_output("", j.dump(2));
        return 1;
    }
    const auto verdict = ceq::is_correlated_equilibrium(game, dist);
    if (!verdict) {
        j["verdict"] = "ok";
        write_output("", j.dump(2));
        return 0;
    }
    j["verdict"] = "not-ce";
    j["certificate"] = ceq::certificate_to_json(*verdict);
    if (config.with_float) {
        j["certificate"]["value_decimal"] = ceq::to_double(verdict->value);
    }
    write_output("", j.dump(2));
    return 1;
}

struct LemmaConfig {
    int n = 10;
    int trials = 100;
    int set_size = -1;
    std::uint64_t seed = 12345;
};

int cmd_lemma(const LemmaConfig& config) {
    // Largest size with |S| strictly below 2^n/(n^2+1); same arithmetic as
    // the adversary's budget.
    const int max_size = ceq::max_budget(config.n);
    const int size = config.set_size < 0 ? max_size : config.set_size;
    if (config.set_size > max_size) {
        std::cerr << "warning: |S| = " << config.set_size
                  << " is outside the guaranteed regime (largest guaranteed size " << max_size
                  << ")\n";
    }
    std::mt19937_64 rng(config.seed);
    const std::uint64_t total = std::uint64_t{1} << config.n;
    int violations = 0;
    for (int t = 0; t < config.trials; ++t) {
        ceq::VertexSet removed(config.n);
        while (removed.size() < static_cast<std::uint64_t>(size)) {
            removed.insert(ceq::Profile(rng() % total));
        }
        if (!ceq::giant_component_holds(config.n, removed)) ++violations;
    }
    ordered_json j;
    j["n"] = config.n;
    j["trials"] = config.trials;
    j["set_size"] = size;
    j["violations"] = violations;
    write_output("", j.dump(2));
    return violations == 0 ? 0 : 1;
}

struct RmConfig {
    std::string game_path;
    int rounds = 10000;
    std::uint64_t seed = 1;
    bool reproducible = false;
    bool with_float = false;
};

int cmd_rm(const RmConfig& config) {
    const ceq::GameTable game = ceq::game_from_json(read_json_file(config.game_path));
    const ceq::RegretReport report = ceq::regret_matching(game, config.rounds, config.seed);
    ordered_json j = ceq::regret_report_to_json(report);
    if (config.with_float) {
        j["epsilon_decimal"] = ceq::to_double(report.epsilon);
        ordered_json decimals = ordered_json::array();
        for (const auto& r : report.per_player) decimals.push_back(ceq::to_double(r));
        j["per_player_decimal"] = std::move(decimals);
    }
    if (!config.reproducible) j["timestamp"] = iso_timestamp();
    write_output("", j.dump(2));
    return 0;
}

struct ReduceConfig {
    std::string game_path;
    std::string transcript_path;
    std::string weights;
};

int cmd_reduce(const ReduceConfig& config) {
    if (config.game_path.empty() == config.transcript_path.empty()) {
        std::cerr << "pass exactly one of --game or --transcript\n";
        return 2;
    }
    if (!config.transcript_path.empty()) {
        const ceq::Transcript transcript =
            ceq::transcript_from_jsonl(read_input(config.transcript_path));
        const auto y = parse_weights(config.weights, transcript.n);
        const bool necessity = ceq::reduced_necessity_check(transcript, y);
        ordered_json j;
        j["necessity"] = necessity;
        write_output("", j.dump(2));
        return necessity ? 0 : 1;
    }
    const ceq::GameTable game = ceq::game_from_json(read_json_file(config.game_path));
    const auto y = parse_weights(config.weights, game.players());
    ceq::ReducedInstance instance{y, ceq::differences_from_utilities(game)};
    const auto solution = ceq::solve_reduced(instance);
    ordered_json j;
    if (solution) {
        j["solution"] = solution->bitstring(game.players());
        ceq::Rational value(0);
        for (int i = 1; i <= game.players(); ++i) {
            value += y[static_cast<std::size_t>(i - 1)] * instance.diff.get(i, *solution);
        }
        j["value"] = ceq::to_fraction(value);
    } else {
        j["solution"] = nullptr;
    }
    write_output("", j.dump(2));
    return solution ? 0 : 1;
}

struct SolveConfig {
    std::string game_path;
    std::string out;
};

int cmd_solve(const SolveConfig& config) {
    const ceq::GameTable game = ceq::game_from_json(read_json_file(config.game_path));
    const ceq::Distribution ce = ceq::find_exact_ce(game);
    write_output(config.out, ceq::distribution_to_json(ce).dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"query-complexity toolkit for correlated equilibria in binary-action games"};
    app.require_subcommand(1);

    DuelConfig duel_config;
    auto* duel = app.add_subcommand(
        "duel", "run a querier against the hiding adversary and verify its certificate");
    duel->add_option("--n", duel_config.n, "player count")->required()->check(CLI::Range(2, 20));
    duel->add_option("--querier", duel_config.querier, "querier name (lex|greedy|scatter|chaser)");
    duel->add_flag("--all-queriers", duel_config.all_queriers, "run every built-in querier");
    duel->add_option("--budget", duel_config.budget, "query budget (default max_budget(n))");
    duel->add_flag("--force", duel_config.force, "allow budgets beyond the guarantee");
    duel->add_flag("--reproducible", duel_config.reproducible, "omit the timestamp field");
    duel->add_flag("--float", duel_config.with_float, "add decimal approximations");
    duel->add_option("--out", duel_config.out, "result path (default stdout)");
    duel->add_option("--transcript", duel_config.transcript_path, "write the transcript (JSONL)");
    duel->add_option("--game-out", duel_config.game_out, "write the completed game");
    duel->add_option("--dist-out", duel_config.dist_out, "write the submitted distribution");

    VerifyConfig verify_config;
    auto* verify =
        app.add_subcommand("verify", "check a distribution against a game's CE constraints");
    verify->add_option("--game", verify_config.game_path, "game file")->required();
    verify->add_option("--dist", verify_config.dist_path, "distribution file (- for stdin)")
        ->required();
    verify->add_flag("--coarse", verify_config.coarse,
                     "check coarse (fixed-deviation) constraints instead");
    verify->add_flag("--float", verify_config.with_float, "add decimal approximations");

    LemmaConfig lemma_config;
    auto* lemma = app.add_subcommand(
        "lemma", "sample random removed sets and test the giant-component guarantee");
    lemma->add_option("--n", lemma_config.n, "cube dimension")->required()->check(CLI::Range(2, 20));
    lemma->add_option("--trials", lemma_config.trials, "number of random sets")
        ->check(CLI::PositiveNumber);
    lemma->add_option("--size", lemma_config.set_size, "removed-set size (default: largest guaranteed)");
    lemma->add_option("--seed", lemma_config.seed, "sampling seed");

    RmConfig rm_config;
    auto* rm = app.add_subcommand("rm", "run regret matching on a game");
    rm->add_option("--game", rm_config.game_path, "game file")->required();
    rm->add_option("--T", rm_config.rounds, "rounds")->check(CLI::PositiveNumber);
    rm->add_option("--seed", rm_config.seed, "sampling seed");
    rm->add_flag("--reproducible", rm_config.reproducible, "omit the timestamp field");
    rm->add_flag("--float", rm_config.with_float, "add decimal approximations");

    ReduceConfig reduce_config;
    auto* reduce = app.add_subcommand(
        "reduce", "solve the weighted-difference problem, or audit a transcript with --transcript");
    reduce->add_option("--game", reduce_config.game_path, "game file");
    reduce->add_option("--transcript", reduce_config.transcript_path, "transcript file (JSONL)");
    reduce->add_option("--y", reduce_config.weights, "comma-separated weights (default all 1)");

    SolveConfig solve_config;
    auto* solve = app.add_subcommand("solve", "compute a correlated equilibrium exactly");
    solve->add_option("--game", solve_config.game_path, "game file")->required();
    solve->add_option("--out", solve_config.out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (duel->parsed()) return cmd_duel(duel_config);
        if (verify->parsed()) return cmd_verify(verify_config);
        if (lemma->parsed()) return cmd_lemma(lemma_config);
        if (rm->parsed()) return cmd_rm(rm_config);
        if (reduce->parsed()) return cmd_reduce(reduce_config);
        if (solve->parsed()) return cmd_solve(solve_config);
    } catch (const ceq::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ceq::GuaranteeError& e) {
        std::cerr << "guarantee failure: " << e.what() << "\n";
        return 1;
    } catch (const ceq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
