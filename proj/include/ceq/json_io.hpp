#pragma once

#include "ceq/adversary.hpp"
#include "ceq/dynamics.hpp"
#include "ceq/game.hpp"

#include "json.hpp"

#include <string>

namespace ceq {

// All rationals in wire formats are "num/den" strings in lowest terms.
// Serializers emit keys in a fixed order and iterate in deterministic
// (ascending index) order, so equal values produce byte-identical JSON.

/// { "n": int, "actions": [int...],
///   "utilities": { "<player>": { "<profile>": "num/den", ... }, ... } }
/// Unassigned entries are omitted; parsing accepts partial tables.
nlohmann::ordered_json game_to_json(const GameTable& game);
GameTable game_from_json(const nlohmann::ordered_json& j);

/// { "n": int, "support": { "<profile>": "num/den", ... } }
/// Pass `shape` to resolve profile strings of a non-binary game.
nlohmann::ordered_json distribution_to_json(const Distribution& dist,
                                            const GameTable* shape = nullptr);
Distribution distribution_from_json(const nlohmann::ordered_json& j,
                                    const GameTable* shape = nullptr);

/// { "player": int, "action": int, "value": "num/den", "kind": string }
nlohmann::ordered_json certificate_to_json(const Certificate& certificate);
Certificate certificate_from_json(const nlohmann::ordered_json& j);

/// { "player": int, "deviation": int, "value": "num/den" }
nlohmann::ordered_json coarse_violation_to_json(const CoarseViolation& violation);

/// JSON lines: one object per query
///   { "t", "profile", "returned_utilities", "newly_assigned": [[player,
///     profile, value], ...] }
/// and, when finalized, a closing object
///   { "case", "certificate", "region_sizes": { "assigned", "frontier",
///     "untouched" } }.
std::string transcript_to_jsonl(const Transcript& transcript);
/// The player count is recovered from the profile strings (or the region
/// sizes when there are no queries).
Transcript transcript_from_jsonl(const std::string& text);

/// Duel metadata and certificates; the game, output distribution, and
/// transcript are serialized separately by their own functions.
nlohmann::ordered_json duel_result_to_json(const DuelResult& result);

nlohmann::ordered_json regret_report_to_json(const RegretReport& report);

}  // namespace ceq
