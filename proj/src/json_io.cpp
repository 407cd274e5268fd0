#include "wvg/json_io.hpp"

#include "wvg/errors.hpp"

#include <nlohmann/json.hpp>

namespace wvg {

namespace {

Json weights_to_json(const std::vector<Weight>& weights) {
    Json arr = Json::array();
    for (const Weight& w : weights)
        arr.push_back(w.str());
    return arr;
}

std::vector<Weight> weights_from_json(const Json& arr) {
    std::vector<Weight> out;
    out.reserve(arr.size());
    for (const auto& item : arr)
        out.push_back(Weight::from_decimal(item.get<std::string>()));
    return out;
}

Json constant_to_json(const ConstantValue& v) {
    if (const BigInt* i = std::get_if<BigInt>(&v))
        return i->str();
    if (const BigRat* r = std::get_if<BigRat>(&v))
        return to_fraction(*r);
    Json arr = Json::array();
    for (const BigInt& x : std::get<std::vector<BigInt>>(v))
        arr.push_back(x.str());
    return arr;
}

} // namespace

Json game_to_json(const Game& game) {
    Json j;
    j["weights"] = weights_to_json(game.weights());
    j["quota"] = game.quota().str();
    return j;
}

Game game_from_json(const Json& j) {
    return Game(weights_from_json(j.at("weights")),
                parse_decimal(j.at("quota").get<std::string>()));
}

Json gadget_to_json(const GadgetWeights& gadget) {
    Json j;
    j["set_id"] = gadget.set_id;
    j["n"] = gadget.n;
    j["m"] = gadget.m;
    j["k"] = gadget.k;
    j["r"] = gadget.r;
    j["t"] = gadget.t;
    if (gadget.has_c_prime())
        j["t_prime"] = gadget.t_prime;
    j["q_target"] = gadget.q_target.str();
    Json players = Json::array();
    for (int pos = 1; pos <= gadget.universe_size(); ++pos) {
        Json p;
        p["label"] = gadget.universe_label(pos);
        p["weight"] = gadget.universe_weight(pos).str();
        players.push_back(std::move(p));
    }
    j["players"] = std::move(players);
    return j;
}

Json instance_to_json(const ControlInstance& instance) {
    Json j;
    j["theorem"] = instance.constants.theorem();
    j["game"] = game_to_json(instance.game);
    j["addable"] = weights_to_json(instance.addable);
    j["distinguished"] = instance.distinguished;
    j["budget"] = instance.budget;
    j["goal"] = to_string(instance.goal);
    j["index"] = to_string(instance.index_kind);
    Json groups;
    for (const auto& [label, members] : instance.groups)
        groups[label] = members;
    j["groups"] = std::move(groups);
    Json constants;
    for (const auto& [name, value] : instance.constants.entries())
        constants[name] = constant_to_json(value);
    j["constants"] = std::move(constants);
    return j;
}

ControlInstance instance_from_json(const Json& j) {
    ReductionConstants constants(j.value("theorem", std::string()));
    if (j.contains("constants"))
        for (const auto& [name, value] : j.at("constants").items()) {
            if (value.is_array()) {
                std::vector<BigInt> seq;
                for (const auto& item : value)
                    seq.push_back(parse_decimal(item.get<std::string>()));
                constants.put(name, std::move(seq));
            } else {
                const std::string text = value.get<std::string>();
                if (text.find('/') != std::string::npos)
                    constants.put(name, parse_fraction(text));
                else
                    constants.put(name, parse_decimal(text));
            }
        }
    std::vector<std::pair<std::string, std::vector<int>>> groups;
    if (j.contains("groups"))
        for (const auto& [label, members] : j.at("groups").items())
            groups.emplace_back(label, members.get<std::vector<int>>());

    ControlInstance instance{game_from_json(j.at("game")),
                             weights_from_json(j.at("addable")),
                             j.at("distinguished").get<int>(),
                             j.at("budget").get<int>(),
                             goal_from_string(j.at("goal").get<std::string>()),
                             index_kind_from_string(j.at("index").get<std::string>()),
                             std::move(groups),
                             std::move(constants)};
    return instance;
}

Json decision_to_json(const ControlDecision& decision) {
    Json j;
    j["answer"] = decision.yes ? "yes" : "no";
    j["witness"] = decision.witness ? Json(*decision.witness) : Json(nullptr);
    j["before"] = decision.before.str();
    j["after"] = decision.after.str();
    if (decision.extremal)
        j["extremal_candidate"] = *decision.extremal;
    return j;
}

Json sat_decision_to_json(const SatDecision& decision) {
    Json j;
    j["answer"] = decision.yes ? "yes" : "no";
    if (decision.witness) {
        Json bits = Json::array();
        for (bool b : decision.witness->values)
            bits.push_back(b ? 1 : 0);
        j["witness"] = std::move(bits);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json validation_to_json(const InstanceValidation& validation) {
    Json j;
    j["passed"] = validation.all_passed();
    j["failure_count"] = validation.failure_count();
    Json checks = Json::array();
    for (const CheckResult& c : validation.checks) {
        Json item;
        item["name"] = c.name;
        item["passed"] = c.passed;
        if (!c.detail.empty())
            item["detail"] = c.detail;
        checks.push_back(std::move(item));
    }
    j["checks"] = std::move(checks);
    return j;
}

Json verification_to_json(const ReductionVerification& verification) {
    Json j;
    j["theorem"] = verification.theorem;
    j["sat_problem"] = verification.sat_problem;
    j["sat"] = sat_decision_to_json(verification.sat);
    j["control"] =
        verification.control ? decision_to_json(*verification.control) : Json(nullptr);
    j["structural_only"] = verification.structural_only;
    j["agree"] = verification.agree ? Json(*verification.agree) : Json(nullptr);
    j["structural"] = validation_to_json(verification.structural);
    j["ok"] = verification.ok();
    return j;
}

Json bijection_report_to_json(const BijectionReport& report) {
    Json j;
    j["set_id"] = report.set_id;
    j["k"] = report.k;
    j["coalition_count"] = report.coalition_count.str();
    j["model_count"] = report.model_count.str();
    j["counts_equal"] = report.counts_equal;
    j["round_trips_ok"] = report.round_trips_ok;
    j["ok"] = report.ok();
    j["failures"] = report.failures;
    return j;
}

std::string dump_pretty(const Json& j) {
    return j.dump(2) + "\n";
}

} // namespace wvg
