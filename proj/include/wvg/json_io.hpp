#pragma once

#include "wvg/control.hpp"
#include "wvg/gadgets.hpp"
#include "wvg/game.hpp"
#include "wvg/reductions.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace wvg {

// All big integers serialize as decimal strings and rationals as "num/den"
// strings; weights routinely exceed any native integer width. Object key
// order is insertion order (deterministic byte-for-byte output).
using Json = nlohmann::ordered_json;

Json game_to_json(const Game& game);
Game game_from_json(const Json& j);

Json gadget_to_json(const GadgetWeights& gadget);

Json instance_to_json(const ControlInstance& instance);
ControlInstance instance_from_json(const Json& j);

Json decision_to_json(const ControlDecision& decision);
Json sat_decision_to_json(const SatDecision& decision);
Json validation_to_json(const InstanceValidation& validation);
Json verification_to_json(const ReductionVerification& verification);
Json bijection_report_to_json(const BijectionReport& report);

std::string dump_pretty(const Json& j);

} // namespace wvg
