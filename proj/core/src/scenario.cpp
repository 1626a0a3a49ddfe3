#include "timepref/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace timepref {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw ScenarioParseError("schema violation at " + path + ": " + what);
}

const json& require_field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) schema_error(path + "." + key, "missing");
    return obj.at(key);
}

Real as_number(const json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    return v.get<Real>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) schema_error(path, "expected an integer");
    return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) schema_error(path, "expected a string");
    return v.get<std::string>();
}

std::map<std::string, Real> as_weight_map(const json& v, const std::string& path) {
    if (!v.is_object()) schema_error(path, "expected an object of weights");
    std::map<std::string, Real> out;
    for (const auto& [k, val] : v.items()) out[k] = as_number(val, path + "." + k);
    return out;
}

std::map<std::string, std::map<std::string, Real>> as_nested_table(const json& v,
                                                                   const std::string& path) {
    if (!v.is_object()) schema_error(path, "expected a state table");
    std::map<std::string, std::map<std::string, Real>> out;
    for (const auto& [state, inner] : v.items()) {
        if (!inner.is_object()) schema_error(path + "." + state, "expected an action table");
        for (const auto& [action, val] : inner.items())
            out[state][action] = as_number(val, path + "." + state + "." + action);
    }
    return out;
}

} // namespace

ScenarioDoc parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) schema_error("$", "expected an object");

    ScenarioDoc doc;
    doc.version = as_int(require_field(root, "version", "$"), "version");
    if (root.contains("name")) doc.name = as_string(root.at("name"), "name");

    const json& states = require_field(root, "states", "$");
    if (!states.is_array() || states.empty()) schema_error("states", "expected a nonempty array");
    for (size_t i = 0; i < states.size(); ++i)
        doc.states.push_back(as_string(states[i], "states[" + std::to_string(i) + "]"));

    const json& actions = require_field(root, "actions", "$");
    if (!actions.is_array() || actions.empty())
        schema_error("actions", "expected a nonempty array");
    for (size_t i = 0; i < actions.size(); ++i)
        doc.actions.push_back(as_string(actions[i], "actions[" + std::to_string(i) + "]"));

    doc.start = root.contains("start") ? as_string(root.at("start"), "start") : doc.states[0];

    const json& transitions = require_field(root, "transitions", "$");
    if (!transitions.is_object()) schema_error("transitions", "expected an object");
    for (const auto& [state, per_action] : transitions.items()) {
        if (!per_action.is_object())
            schema_error("transitions." + state, "expected an action map");
        for (const auto& [action, target] : per_action.items()) {
            const std::string path = "transitions." + state + "." + action;
            std::map<std::string, Real> dist;
            if (target.is_string()) {
                dist[target.get<std::string>()] = 1.0; // point-mass sugar
            } else if (target.is_object()) {
                for (const auto& [next, p] : target.items())
                    dist[next] = as_number(p, path + "." + next);
            } else {
                schema_error(path, "expected a state name or a distribution");
            }
            doc.transitions[state][action] = std::move(dist);
        }
    }

    const json& objectives = require_field(root, "objectives", "$");
    if (!objectives.is_array() || objectives.empty())
        schema_error("objectives", "expected a nonempty array");
    for (size_t i = 0; i < objectives.size(); ++i) {
        const std::string path = "objectives[" + std::to_string(i) + "]";
        const json& jo = objectives[i];
        if (!jo.is_object()) schema_error(path, "expected an object");
        ObjectiveDoc od;
        od.name = as_string(require_field(jo, "name", path), path + ".name");
        if (jo.contains("rewards")) od.rewards = as_nested_table(jo.at("rewards"), path + ".rewards");
        const json& disc = require_field(jo, "discount", path);
        if (disc.is_number()) {
            od.discount_constant = true;
            od.discount_value = disc.get<Real>();
        } else if (disc.is_object()) {
            od.discount_constant = false;
            od.discount_table = as_nested_table(disc, path + ".discount");
        } else {
            schema_error(path + ".discount", "expected a number or a state table");
        }
        if (jo.contains("initial_weight"))
            od.initial_weight = as_number(jo.at("initial_weight"), path + ".initial_weight");
        if (jo.contains("window")) {
            const json& jw = jo.at("window");
            WindowRuleDoc wr;
            wr.n = as_int(require_field(jw, "n", path + ".window"), path + ".window.n");
            wr.trigger = as_string(require_field(jw, "trigger", path + ".window"),
                                   path + ".window.trigger");
            wr.reward = as_number(require_field(jw, "reward", path + ".window"),
                                  path + ".window.reward");
            od.window = wr;
        }
        doc.objectives.push_back(std::move(od));
    }

    if (root.contains("aggregation")) {
        const json& ja = root.at("aggregation");
        if (!ja.is_object()) schema_error("aggregation", "expected an object");
        if (ja.contains("gamma_sigma"))
            doc.aggregation.gamma_sigma =
                as_string(ja.at("gamma_sigma"), "aggregation.gamma_sigma");
        if (ja.contains("constant"))
            doc.aggregation.constant = as_number(ja.at("constant"), "aggregation.constant");
        if (ja.contains("allow_negative_weights")) {
            if (!ja.at("allow_negative_weights").is_boolean())
                schema_error("aggregation.allow_negative_weights", "expected a boolean");
            doc.aggregation.allow_negative_weights = ja.at("allow_negative_weights").get<bool>();
        }
    }

    if (root.contains("intertemporal")) {
        const json& ji = root.at("intertemporal");
        if (!ji.is_object()) schema_error("intertemporal", "expected an object");
        if (ji.contains("mode"))
            doc.intertemporal.mode = as_string(ji.at("mode"), "intertemporal.mode");
        if (ji.contains("eta"))
            doc.intertemporal.eta = as_number(ji.at("eta"), "intertemporal.eta");
        if (ji.contains("n")) doc.intertemporal.n = as_int(ji.at("n"), "intertemporal.n");
        if (ji.contains("schedule")) {
            const json& js = ji.at("schedule");
            ScheduleDoc sd;
            sd.w_start = as_weight_map(require_field(js, "w_start", "intertemporal.schedule"),
                                       "intertemporal.schedule.w_start");
            sd.w_end = as_weight_map(require_field(js, "w_end", "intertemporal.schedule"),
                                     "intertemporal.schedule.w_end");
            sd.t = as_int(require_field(js, "t", "intertemporal.schedule"),
                          "intertemporal.schedule.t");
            doc.intertemporal.schedule = std::move(sd);
        }
    }

    if (root.contains("planner")) {
        const json& jp = root.at("planner");
        if (!jp.is_object()) schema_error("planner", "expected an object");
        if (jp.contains("horizon"))
            doc.planner.horizon = as_int(jp.at("horizon"), "planner.horizon");
        if (jp.contains("max_cycle_period"))
            doc.planner.max_cycle_period =
                as_int(jp.at("max_cycle_period"), "planner.max_cycle_period");
    }

    return doc;
}

std::string serialize_scenario(const ScenarioDoc& doc) {
    json root;
    root["version"] = doc.version;
    if (!doc.name.empty()) root["name"] = doc.name;
    root["states"] = doc.states;
    root["actions"] = doc.actions;
    root["start"] = doc.start;
    json jt = json::object();
    for (const auto& [state, per_action] : doc.transitions) {
        for (const auto& [action, dist] : per_action) {
            json jd = json::object();
            for (const auto& [next, p] : dist) jd[next] = p;
            jt[state][action] = jd;
        }
    }
    root["transitions"] = jt;
    json jobjs = json::array();
    for (const ObjectiveDoc& od : doc.objectives) {
        json jo;
        jo["name"] = od.name;
        json jr = json::object();
        for (const auto& [state, per_action] : od.rewards) {
            for (const auto& [action, r] : per_action) jr[state][action] = r;
        }
        jo["rewards"] = jr;
        if (od.discount_constant) {
            jo["discount"] = od.discount_value;
        } else {
            json jd = json::object();
            for (const auto& [state, per_action] : od.discount_table)
                for (const auto& [action, g] : per_action) jd[state][action] = g;
            jo["discount"] = jd;
        }
        jo["initial_weight"] = od.initial_weight;
        if (od.window) {
            jo["window"] = {{"n", od.window->n},
                            {"trigger", od.window->trigger},
                            {"reward", od.window->reward}};
        }
        jobjs.push_back(jo);
    }
    root["objectives"] = jobjs;
    root["aggregation"] = {{"gamma_sigma", doc.aggregation.gamma_sigma},
                           {"constant", doc.aggregation.constant},
                           {"allow_negative_weights", doc.aggregation.allow_negative_weights}};
    json ji = {{"mode", doc.intertemporal.mode},
               {"eta", doc.intertemporal.eta},
               {"n", doc.intertemporal.n}};
    if (doc.intertemporal.schedule) {
        json js;
        js["w_start"] = doc.intertemporal.schedule->w_start;
        js["w_end"] = doc.intertemporal.schedule->w_end;
        js["t"] = doc.intertemporal.schedule->t;
        ji["schedule"] = js;
    }
    root["intertemporal"] = ji;
    root["planner"] = {{"horizon", doc.planner.horizon},
                       {"max_cycle_period", doc.planner.max_cycle_period}};
    return root.dump(2) + "\n";
}

namespace {

int index_or_throw(const std::vector<std::string>& names, const std::string& key,
                   const std::string& what) {
    const auto it = std::find(names.begin(), names.end(), key);
    if (it == names.end())
        throw ScenarioSemanticError("unknown " + what + " name '" + key + "'");
    return static_cast<int>(it - names.begin());
}

} // namespace

WeightState CompiledScenario::weight_state() const {
    WeightState ws = WeightState::initial(initial_weights, harsanyi_constant);
    return ws;
}

std::vector<std::string> CompiledScenario::objective_names() const {
    std::vector<std::string> names;
    for (const Objective& o : objectives.objectives()) names.push_back(o.name);
    return names;
}

CompiledScenario compile_scenario(ScenarioDoc doc) {
    CompiledScenario out;

    const int S = static_cast<int>(doc.states.size());
    const int A = static_cast<int>(doc.actions.size());

    {
        auto dup = [](std::vector<std::string> v) {
            std::sort(v.begin(), v.end());
            return std::adjacent_find(v.begin(), v.end()) != v.end();
        };
        if (dup(doc.states)) throw ScenarioSemanticError("duplicate state names");
        if (dup(doc.actions)) throw ScenarioSemanticError("duplicate action names");
    }

    // shared kernel
    std::vector<std::vector<Real>> kernel(static_cast<size_t>(S) * A);
    for (int s = 0; s < S; ++s) {
        const auto state_it = doc.transitions.find(doc.states[s]);
        if (state_it == doc.transitions.end())
            throw ScenarioSemanticError("transitions missing for state '" + doc.states[s] + "'");
        for (int a = 0; a < A; ++a) {
            const auto action_it = state_it->second.find(doc.actions[a]);
            if (action_it == state_it->second.end())
                throw ScenarioSemanticError("transitions missing for (" + doc.states[s] + ", " +
                                            doc.actions[a] + ")");
            std::vector<Real> row(S, 0.0);
            for (const auto& [next, p] : action_it->second)
                row[index_or_throw(doc.states, next, "state")] = p;
            kernel[static_cast<size_t>(s) * A + a] = std::move(row);
        }
    }
    for (const auto& [state, per_action] : doc.transitions) {
        index_or_throw(doc.states, state, "state");
        for (const auto& [action, _] : per_action) index_or_throw(doc.actions, action, "action");
    }

    auto table_from = [&](const std::map<std::string, std::map<std::string, Real>>& tbl,
                          Real missing, const std::string& what,
                          bool require_all) {
        std::vector<Real> out_tbl(static_cast<size_t>(S) * A, missing);
        for (const auto& [state, per_action] : tbl) {
            const int s = index_or_throw(doc.states, state, "state");
            for (const auto& [action, v] : per_action) {
                const int a = index_or_throw(doc.actions, action, "action");
                out_tbl[static_cast<size_t>(s) * A + a] = v;
            }
        }
        if (require_all) {
            for (int s = 0; s < S; ++s)
                for (int a = 0; a < A; ++a) {
                    const auto st = tbl.find(doc.states[s]);
                    if (st == tbl.end() || st->second.find(doc.actions[a]) == st->second.end())
                        throw ScenarioSemanticError(what + " table missing entry for (" +
                                                    doc.states[s] + ", " + doc.actions[a] + ")");
                }
        }
        return out_tbl;
    };

    // objectives on the base space
    std::vector<Objective> base_objectives;
    std::optional<WindowCounterObjective> window_rule;
    int window_index = -1;
    for (size_t i = 0; i < doc.objectives.size(); ++i) {
        const ObjectiveDoc& od = doc.objectives[i];
        if (od.window) {
            if (window_rule)
                throw ScenarioSemanticError("at most one objective may carry a window rule");
            if (od.window->n < 1)
                throw ScenarioSemanticError("window n must be >= 1");
            if (!od.discount_constant)
                throw ScenarioSemanticError("a windowed objective needs a constant discount");
            WindowCounterObjective w;
            w.name = od.name;
            w.window = od.window->n;
            w.trigger = index_or_throw(doc.actions, od.window->trigger, "action");
            w.reward_value = od.window->reward;
            w.discount = od.discount_value;
            window_rule = w;
            window_index = static_cast<int>(i);
            continue;
        }
        GeneralizedMdp mdp;
        mdp.num_states = S;
        mdp.num_actions = A;
        mdp.transition = kernel;
        mdp.reward = table_from(od.rewards, 0.0, "reward", false);
        mdp.discount = od.discount_constant
                           ? std::vector<Real>(static_cast<size_t>(S) * A, od.discount_value)
                           : table_from(od.discount_table, 0.0, "discount", true);
        base_objectives.push_back({od.name, std::move(mdp)});
    }
    if (base_objectives.empty())
        throw ScenarioSemanticError("at least one non-window objective is required");

    ObjectiveSet base(std::move(base_objectives));
    for (const Objective& o : base.objectives()) {
        const auto report = validate_mdp(o.mdp);
        if (!report.valid)
            throw ScenarioSemanticError("objective '" + o.name +
                                        "' invalid: " + report.issues.front());
    }

    const State base_start = index_or_throw(doc.states, doc.start, "state");

    if (window_rule) {
        out.lift = lift_window_counter(*window_rule, base);
        // restore document order: the lift appends the window objective last
        std::vector<Objective> ordered;
        const auto& lifted = out.lift->lifted().objectives();
        int base_pos = 0;
        for (size_t i = 0; i < doc.objectives.size(); ++i) {
            if (static_cast<int>(i) == window_index)
                ordered.push_back(lifted.back());
            else
                ordered.push_back(lifted[base_pos++]);
        }
        out.objectives = ObjectiveSet(std::move(ordered));
        out.start_state = out.lift->initial_state(base_start);
    } else {
        out.objectives = std::move(base);
        out.start_state = base_start;
    }

    // weights
    bool negative = false;
    for (const ObjectiveDoc& od : doc.objectives) {
        out.initial_weights.push_back(od.initial_weight);
        if (od.initial_weight < 0.0) negative = true;
    }
    if (negative && !doc.aggregation.allow_negative_weights)
        throw ScenarioSemanticError(
            "negative initial weights need aggregation.allow_negative_weights = true");
    out.harsanyi_constant = doc.aggregation.constant;

    // gamma_sigma strategy
    const std::string& gs = doc.aggregation.gamma_sigma;
    if (gs == "max") {
        out.strategy = GammaSigmaStrategy::max_individual();
    } else if (gs == "normalize") {
        out.strategy = GammaSigmaStrategy::weight_normalizing();
    } else if (gs.rfind("const:", 0) == 0) {
        Real v = 0.0;
        try {
            v = std::stod(gs.substr(6));
        } catch (...) {
            throw ScenarioSemanticError("bad gamma_sigma constant '" + gs + "'");
        }
        if (v <= 0.0) throw ScenarioSemanticError("gamma_sigma constant must be positive");
        out.strategy = GammaSigmaStrategy::constant(v);
    } else {
        throw ScenarioSemanticError("unknown gamma_sigma strategy '" + gs + "'");
    }

    // intertemporal config + schedule; eta and n are carried for every mode
    // so a CLI mode override still uses the scenario's parameters
    const std::string& mode = doc.intertemporal.mode;
    if (mode == "none") {
        out.intertemporal.mode = IntertemporalConfig::Mode::None;
    } else if (mode == "n-step" || mode == "nstep") {
        out.intertemporal.mode = IntertemporalConfig::Mode::NStep;
    } else if (mode == "historical") {
        out.intertemporal.mode = IntertemporalConfig::Mode::Historical;
    } else {
        throw ScenarioSemanticError("unknown intertemporal mode '" + mode + "'");
    }
    if (doc.intertemporal.n < 1) throw ScenarioSemanticError("intertemporal.n must be >= 1");
    if (doc.intertemporal.eta < 0.0 || doc.intertemporal.eta > 1.0)
        throw ScenarioSemanticError("intertemporal.eta must lie in [0, 1]");
    out.intertemporal.commit_steps = doc.intertemporal.n;
    out.intertemporal.eta = doc.intertemporal.eta;

    if (doc.intertemporal.schedule) {
        const ScheduleDoc& sd = *doc.intertemporal.schedule;
        if (sd.t < 1) throw ScenarioSemanticError("schedule window t must be >= 1");
        std::vector<Real> w_start, w_end;
        for (const ObjectiveDoc& od : doc.objectives) {
            const auto s_it = sd.w_start.find(od.name);
            const auto e_it = sd.w_end.find(od.name);
            if (s_it == sd.w_start.end() || e_it == sd.w_end.end())
                throw ScenarioSemanticError("schedule missing objective '" + od.name + "'");
            w_start.push_back(s_it->second);
            w_end.push_back(e_it->second);
        }
        for (const auto& [name, _] : sd.w_start) {
            bool known = false;
            for (const ObjectiveDoc& od : doc.objectives) known |= (od.name == name);
            if (!known) throw ScenarioSemanticError("schedule names unknown objective '" + name + "'");
        }
        out.schedule = linear_schedule(std::move(w_start), std::move(w_end), sd.t);
    } else {
        out.schedule = PreferenceSchedule::constant(out.initial_weights);
    }

    if (doc.planner.horizon < 0) throw ScenarioSemanticError("planner.horizon must be >= 0");
    if (doc.planner.max_cycle_period < 1)
        throw ScenarioSemanticError("planner.max_cycle_period must be >= 1");
    out.plan_config.horizon = doc.planner.horizon;
    out.plan_config.max_cycle_period = doc.planner.max_cycle_period;

    out.doc = std::move(doc);
    return out;
}

CompiledScenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioParseError("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return compile_scenario(parse_scenario(buffer.str()));
}

} // namespace timepref
