#include "ceq/json_io.hpp"

#include "ceq/error.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ceq {

namespace {

using nlohmann::ordered_json;

const ordered_json& require(const ordered_json& j, const char* key, const char* context) {
    if (!j.is_object()) {
        throw ParseError(std::string(context) + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string(context) + ": missing key \"" + key + "\"");
    }
    return *it;
}

int require_int(const ordered_json& j, const char* key, const char* context) {
    const auto& v = require(j, key, context);
    if (!v.is_number_integer()) {
        throw ParseError(std::string(context) + ": key \"" + key + "\" must be an integer");
    }
    return v.get<int>();
}

std::string require_string(const ordered_json& j, const char* key, const char* context) {
    const auto& v = require(j, key, context);
    if (!v.is_string()) {
        throw ParseError(std::string(context) + ": key \"" + key + "\" must be a string");
    }
    return v.get<std::string>();
}

Rational rational_field(const ordered_json& v, const char* context) {
    if (!v.is_string()) {
        throw ParseError(std::string(context) + ": rationals must be \"num/den\" strings");
    }
    return parse_rational(v.get<std::string>());
}

int parse_player_key(const std::string& key, int n, const char* context) {
    for (char c : key) {
        if (c < '0' || c > '9') {
            throw ParseError(std::string(context) + ": player key \"" + key +
                             "\" is not a number");
        }
    }
    if (key.empty() || key.size() > 9) {
        throw ParseError(std::string(context) + ": player key \"" + key + "\" out of range");
    }
    const int player = std::stoi(key);
    if (player < 1 || player > n) {
        throw ParseError(std::string(context) + ": player key \"" + key + "\" out of range 1.." +
                         std::to_string(n));
    }
    return player;
}

}  // namespace

nlohmann::ordered_json game_to_json(const GameTable& game) {
    ordered_json j;
    j["n"] = game.players();
    ordered_json actions = ordered_json::array();
    for (int i = 1; i <= game.players(); ++i) actions.push_back(game.actions(i));
    j["actions"] = std::move(actions);

    ordered_json utilities = ordered_json::object();
    for (int i = 1; i <= game.players(); ++i) {
        ordered_json row = ordered_json::object();
        for (std::uint64_t idx = 0; idx < game.table_size(); ++idx) {
            if (game.has_utility_at(i, idx)) {
                row[game.profile_string(idx)] = to_fraction(game.utility_at(i, idx));
            }
        }
        utilities[std::to_string(i)] = std::move(row);
    }
    j["utilities"] = std::move(utilities);
    return j;
}

GameTable game_from_json(const nlohmann::ordered_json& j) {
    const int n = require_int(j, "n", "game");
    if (n < 1 || n > 63) throw ParseError("game: n out of range");

    std::vector<int> actions(static_cast<std::size_t>(n), 2);
    if (j.contains("actions")) {
        const auto& arr = j.at("actions");
        if (!arr.is_array() || static_cast<int>(arr.size()) != n) {
            throw ParseError("game: \"actions\" must be an array of n integers");
        }
        for (int i = 0; i < n; ++i) {
            if (!arr[static_cast<std::size_t>(i)].is_number_integer()) {
                throw ParseError("game: \"actions\" entries must be integers");
            }
            actions[static_cast<std::size_t>(i)] = arr[static_cast<std::size_t>(i)].get<int>();
        }
    }
    GameTable game(actions);

    const auto& utilities = require(j, "utilities", "game");
    if (!utilities.is_object()) throw ParseError("game: \"utilities\" must be an object");
    for (const auto& [player_key, row] : utilities.items()) {
        const int player = parse_player_key(player_key, n, "game utilities");
        if (!row.is_object()) {
            throw ParseError("game utilities: player \"" + player_key +
                             "\" must map profiles to rationals");
        }
        for (const auto& [profile_key, value] : row.items()) {
            std::uint64_t index;
            try {
                index = game.parse_profile(profile_key);
            } catch (const ParseError& e) {
                throw ParseError("game utilities, player " + player_key + ": " + e.what());
            }
            game.set_utility_at(player, index,
                                rational_field(value, "game utilities"));
        }
    }
    return game;
}

nlohmann::ordered_json distribution_to_json(const Distribution& dist, const GameTable* shape) {
    ordered_json support = ordered_json::object();
    for (const auto& [s, p] : dist.support()) {
        const std::string key =
            shape ? shape->profile_string(s.code()) : s.bitstring(dist.players());
        support[key] = to_fraction(p);
    }
    ordered_json j;
    j["n"] = dist.players();
    j["support"] = std::move(support);
    return j;
}

Distribution distribution_from_json(const nlohmann::ordered_json& j, const GameTable* shape) {
    const int n = require_int(j, "n", "distribution");
    if (n < 1 || n > 63) throw ParseError("distribution: n out of range");
    if (shape && shape->players() != n) {
        throw ParseError("distribution: n does not match the game's player count");
    }
    const auto& support_json = require(j, "support", "distribution");
    if (!support_json.is_object()) {
        throw ParseError("distribution: \"support\" must be an object");
    }
    std::map<Profile, Rational> support;
    for (const auto& [key, value] : support_json.items()) {
        std::uint64_t code;
        try {
            code = shape ? shape->parse_profile(key) : Profile::from_bitstring(key).code();
        } catch (const ParseError& e) {
            throw ParseError(std::string("distribution support: ") + e.what());
        }
        if (shape == nullptr && static_cast<int>(key.size()) != n) {
            throw ParseError("distribution support: profile \"" + key + "\" has " +
                             std::to_string(key.size()) + " digits, expected " +
                             std::to_string(n));
        }
        support[Profile(code)] = rational_field(value, "distribution support");
    }
    try {
        return Distribution(n, std::move(support), shape ? shape->table_size() : 0);
    } catch (const Error& e) {
        throw ParseError(std::string("distribution: ") + e.what());
    }
}

nlohmann::ordered_json certificate_to_json(const Certificate& certificate) {
    ordered_json j;
    j["player"] = certificate.player;
    j["action"] = certificate.action;
    j["value"] = to_fraction(certificate.value);
    j["kind"] = certificate.kind;
    return j;
}

Certificate certificate_from_json(const nlohmann::ordered_json& j) {
    Certificate c;
    c.player = require_int(j, "player", "certificate");
    c.action = require_int(j, "action", "certificate");
    c.value = rational_field(require(j, "value", "certificate"), "certificate");
    c.kind = require_string(j, "kind", "certificate");
    if (c.kind != "definition-violation" && c.kind != "remark1") {
        throw ParseError("certificate: unknown kind \"" + c.kind + "\"");
    }
    return c;
}

nlohmann::ordered_json coarse_violation_to_json(const CoarseViolation& violation) {
    ordered_json j;
    j["player"] = violation.player;
    j["deviation"] = violation.deviation;
    j["value"] = to_fraction(violation.value);
    return j;
}

namespace {

ordered_json query_record_to_json(const QueryRecord& record, int n) {
    ordered_json j;
    j["t"] = record.t;
    j["profile"] = record.profile.bitstring(n);
    ordered_json utilities = ordered_json::array();
    for (const auto& u : record.returned_utilities) utilities.push_back(to_fraction(u));
    j["returned_utilities"] = std::move(utilities);
    ordered_json assigned = ordered_json::array();
    for (const auto& entry : record.newly_assigned) {
        assigned.push_back(
            ordered_json::array({entry.player, entry.profile.bitstring(n), to_fraction(entry.value)}));
    }
    j["newly_assigned"] = std::move(assigned);
    return j;
}

QueryRecord query_record_from_json(const ordered_json& j, int n) {
    QueryRecord record;
    record.t = require_int(j, "t", "transcript query");
    const std::string profile_key = require_string(j, "profile", "transcript query");
    if (profile_key.size() != static_cast<std::size_t>(n)) {
        throw ParseError("transcript query: profile \"" + profile_key + "\" has " +
                         std::to_string(profile_key.size()) + " digits, expected " +
                         std::to_string(n));
    }
    record.profile = Profile::from_bitstring(profile_key);
    const auto& utilities = require(j, "returned_utilities", "transcript query");
    if (!utilities.is_array()) {
        throw ParseError("transcript query: \"returned_utilities\" must be an array");
    }
    for (const auto& u : utilities) {
        record.returned_utilities.push_back(rational_field(u, "transcript query"));
    }
    const auto& assigned = require(j, "newly_assigned", "transcript query");
    if (!assigned.is_array()) {
        throw ParseError("transcript query: \"newly_assigned\" must be an array");
    }
    for (const auto& entry : assigned) {
        if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
            !entry[1].is_string()) {
            throw ParseError(
                "transcript query: assignments must be [player, profile, value] triples");
        }
        AssignmentRecord a{entry[0].get<int>(),
                           Profile::from_bitstring(entry[1].get<std::string>()),
                           rational_field(entry[2], "transcript assignment")};
        if (entry[1].get<std::string>().size() != static_cast<std::size_t>(n)) {
            throw ParseError("transcript query: assignment profile length mismatch");
        }
        record.newly_assigned.push_back(std::move(a));
    }
    return record;
}

ordered_json final_record_to_json(const FinalizeRecord& record) {
    ordered_json j;
    j["case"] = record.case_taken;
    j["certificate"] = certificate_to_json(record.certificate);
    ordered_json sizes;
    sizes["assigned"] = record.assigned_size;
    sizes["frontier"] = record.frontier_size;
    sizes["untouched"] = record.untouched_size;
    j["region_sizes"] = std::move(sizes);
    return j;
}

FinalizeRecord final_record_from_json(const ordered_json& j) {
    FinalizeRecord record;
    record.case_taken = require_int(j, "case", "transcript final record");
    if (record.case_taken != 1 && record.case_taken != 2) {
        throw ParseError("transcript final record: case must be 1 or 2");
    }
    record.certificate =
        certificate_from_json(require(j, "certificate", "transcript final record"));
    const auto& sizes = require(j, "region_sizes", "transcript final record");
    record.assigned_size =
        static_cast<std::uint64_t>(require_int(sizes, "assigned", "region_sizes"));
    record.frontier_size =
        static_cast<std::uint64_t>(require_int(sizes, "frontier", "region_sizes"));
    record.untouched_size =
        static_cast<std::uint64_t>(require_int(sizes, "untouched", "region_sizes"));
    return record;
}

}  // namespace

std::string transcript_to_jsonl(const Transcript& transcript) {
    std::string out;
    for (const auto& record : transcript.queries) {
        out += query_record_to_json(record, transcript.n).dump();
        out += '\n';
    }
    if (transcript.final_record) {
        out += final_record_to_json(*transcript.final_record).dump();
        out += '\n';
    }
    return out;
}

Transcript transcript_from_jsonl(const std::string& text) {
    std::vector<std::pair<int, ordered_json>> lines;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            lines.emplace_back(line_number, ordered_json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("transcript line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    if (lines.empty()) throw ParseError("transcript is empty");

    const auto at_line = [](int number, const std::string& what) {
        return ParseError("transcript line " + std::to_string(number) + ": " + what);
    };

    // Player count: from a query's profile string, or from the region sizes
    // of a query-free transcript (they sum to 2^n).
    int n = 0;
    try {
        const auto& first = lines.front().second;
        if (first.contains("t")) {
            n = static_cast<int>(require_string(first, "profile", "transcript query").size());
        } else {
            const auto& sizes = require(first, "region_sizes", "transcript final record");
            std::uint64_t total = 0;
            for (const char* key : {"assigned", "frontier", "untouched"}) {
                total += static_cast<std::uint64_t>(require_int(sizes, key, "region_sizes"));
            }
            while ((std::uint64_t{1} << n) < total && n < 63) ++n;
            if ((std::uint64_t{1} << n) != total) {
                throw ParseError("region sizes do not sum to a power of two");
            }
        }
        if (n < 1 || n > 63) throw ParseError("could not infer a valid player count");
    } catch (const ParseError& e) {
        throw at_line(lines.front().first, e.what());
    }

    Transcript transcript;
    transcript.n = n;
    for (const auto& [number, j] : lines) {
        try {
            if (j.contains("t")) {
                if (transcript.final_record) {
                    throw ParseError("query record after the final record");
                }
                auto record = query_record_from_json(j, n);
                if (record.profile.code() >= (std::uint64_t{1} << n)) {
                    throw ParseError("query profile out of range");
                }
                transcript.queries.push_back(std::move(record));
            } else {
                if (transcript.final_record) {
                    throw ParseError("more than one final record");
                }
                transcript.final_record = final_record_from_json(j);
            }
        } catch (const ParseError& e) {
            const std::string what = e.what();
            if (what.rfind("transcript line ", 0) == 0) throw;
            throw at_line(number, what);
        }
    }
    return transcript;
}

nlohmann::ordered_json duel_result_to_json(const DuelResult& result) {
    ordered_json j;
    j["querier"] = result.querier;
    j["n"] = result.n;
    j["budget"] = result.budget;
    j["queries_used"] = result.queries_used;
    j["case"] = result.case_taken;
    j["certificate"] = certificate_to_json(result.certificate);
    j["verifier_agreement"] = result.verifier_agreement;
    if (result.verifier_certificate) {
        j["verifier_certificate"] = certificate_to_json(*result.verifier_certificate);
    } else {
        j["verifier_certificate"] = nullptr;
    }
    if (result.case1_root) {
        j["case1_root"] = result.case1_root->bitstring(result.n);
    } else {
        j["case1_root"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json regret_report_to_json(const RegretReport& report) {
    ordered_json j;
    j["rounds"] = report.rounds;
    j["epsilon"] = to_fraction(report.epsilon);
    ordered_json per_player = ordered_json::array();
    for (const auto& r : report.per_player) per_player.push_back(to_fraction(r));
    j["per_player"] = std::move(per_player);
    j["empirical"] = distribution_to_json(report.empirical);
    return j;
}

}  // namespace ceq
