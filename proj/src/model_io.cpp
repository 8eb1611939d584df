#include "sgsmc/model_io.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace sgsmc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
    throw ModelError(ModelError::Kind::Semantic, msg);
}

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail("unknown key \"" + it.key() + "\" in " + where);
    }
    for (const char* k : allowed)
        if (!obj.contains(k)) fail("missing key \"" + std::string(k) + "\" in " + where);
}

struct ParsedProb {
    double value;
    std::optional<Rational> exact;
};

ParsedProb parse_prob(const json& v, const std::string& where) {
    if (v.is_string()) {
        Rational r;
        try {
            r = Rational::parse(v.get<std::string>());
        } catch (const std::exception&) {
            fail("malformed fraction \"" + v.get<std::string>() + "\" in " + where);
        }
        return {r.to_double(), r};
    }
    if (v.is_number()) {
        const double d = v.get<double>();
        // Integral literals (0, 1) stay exact; other numbers are binary64 only.
        if (d == std::floor(d) && std::abs(d) < (1LL << 53))
            return {d, Rational(static_cast<std::int64_t>(d))};
        return {d, std::nullopt};
    }
    fail("probability must be a number or a fraction string in " + where);
}

StochasticGame parse_impl(const std::string& text, bool checked) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ModelError(ModelError::Kind::Syntax,
                         "syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) fail("top level must be an object");
    require_keys(doc, {"type", "pmin", "initial", "goal", "states"}, "model");
    if (!doc["type"].is_string() || doc["type"].get<std::string>() != "sg")
        fail("\"type\" must be \"sg\"");

    const ParsedProb pmin = parse_prob(doc["pmin"], "pmin");

    if (!doc["states"].is_array() || doc["states"].empty()) fail("\"states\" must be a non-empty array");

    std::vector<GameState> states;
    std::unordered_map<std::string, StateId> index;
    for (const auto& js : doc["states"]) {
        if (!js.is_object()) fail("state entries must be objects");
        require_keys(js, {"name", "player", "actions"}, "state");
        GameState st;
        st.name = js["name"].get<std::string>();
        if (index.count(st.name)) fail("duplicate state name \"" + st.name + "\"");
        const std::string player = js["player"].get<std::string>();
        if (player == "max") st.player = Player::Maximizer;
        else if (player == "min") st.player = Player::Minimizer;
        else fail("player of \"" + st.name + "\" must be \"max\" or \"min\"");
        index.emplace(st.name, static_cast<StateId>(states.size()));
        states.push_back(std::move(st));
    }

    // Second pass resolves successor references now that all names are known.
    StateId si = 0;
    for (const auto& js : doc["states"]) {
        GameState& st = states[si++];
        if (!js["actions"].is_array()) fail("\"actions\" of " + st.name + " must be an array");
        std::unordered_set<std::string> action_names;
        for (const auto& ja : js["actions"]) {
            if (!ja.is_object()) fail("action entries must be objects");
            require_keys(ja, {"name", "to"}, "action of " + st.name);
            GameAction act;
            act.name = ja["name"].get<std::string>();
            if (!action_names.insert(act.name).second)
                fail("duplicate action name \"" + act.name + "\" in state " + st.name);
            if (!ja["to"].is_object() || ja["to"].empty())
                fail("\"to\" of " + st.name + "/" + act.name + " must be a non-empty object");
            for (auto it = ja["to"].begin(); it != ja["to"].end(); ++it) {
                const auto target = index.find(it.key());
                if (target == index.end())
                    fail("unresolved state reference \"" + it.key() + "\" in " + st.name + "/" +
                         act.name);
                const ParsedProb p = parse_prob(it.value(), st.name + "/" + act.name);
                act.dist.entries.push_back(TransitionEntry{target->second, p.value, p.exact});
            }
            st.actions.push_back(std::move(act));
        }
    }

    if (!doc["initial"].is_string()) fail("\"initial\" must be a state name");
    const auto init = index.find(doc["initial"].get<std::string>());
    if (init == index.end()) fail("unresolved initial state");

    if (!doc["goal"].is_array()) fail("\"goal\" must be an array of state names");
    std::vector<StateId> goal;
    std::unordered_set<StateId> goal_seen;
    for (const auto& jg : doc["goal"]) {
        const auto g = index.find(jg.get<std::string>());
        if (g == index.end()) fail("unresolved goal state \"" + jg.get<std::string>() + "\"");
        if (!goal_seen.insert(g->second).second)
            fail("duplicate goal entry \"" + jg.get<std::string>() + "\"");
        goal.push_back(g->second);
    }

    try {
        if (checked)
            return StochasticGame::build(std::move(states), init->second, std::move(goal),
                                         pmin.value, pmin.exact);
        return StochasticGame::build_unchecked(std::move(states), init->second, std::move(goal),
                                               pmin.value, pmin.exact);
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

json prob_to_json(double value, const std::optional<Rational>& exact) {
    if (exact) {
        if (exact->den() == 1) return json(exact->num());
        return json(exact->str());
    }
    return json(value);
}

}  // namespace

StochasticGame parse_model(const std::string& text) { return parse_impl(text, true); }

StochasticGame parse_model_unchecked(const std::string& text) { return parse_impl(text, false); }

std::string serialize_model(const StochasticGame& game) {
    json doc;
    doc["type"] = "sg";
    doc["pmin"] = prob_to_json(game.p_min_declared(), game.p_min_exact());
    doc["initial"] = game.state(game.initial()).name;
    json goal = json::array();
    for (StateId g : game.goal()) goal.push_back(game.state(g).name);
    doc["goal"] = std::move(goal);
    json states = json::array();
    for (const auto& st : game.states()) {
        json js;
        js["name"] = st.name;
        js["player"] = st.player == Player::Maximizer ? "max" : "min";
        json actions = json::array();
        for (const auto& act : st.actions) {
            json ja;
            ja["name"] = act.name;
            json to;
            for (const auto& e : act.dist.entries)
                to[game.state(e.target).name] = prob_to_json(e.prob, e.exact);
            ja["to"] = std::move(to);
            actions.push_back(std::move(ja));
        }
        js["actions"] = std::move(actions);
        states.push_back(std::move(js));
    }
    doc["states"] = std::move(states);
    return doc.dump(2);
}

}  // namespace sgsmc
