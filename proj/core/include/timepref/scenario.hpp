#pragma once

#include "timepref/aggregation.hpp"
#include "timepref/augmentation.hpp"
#include "timepref/intertemporal.hpp"
#include "timepref/planning.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace timepref {

/// JSON parse failures and schema violations (exit code 2). The message
/// names the offending field path, e.g. "objectives[0].discount".
class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed documents that fail semantic validation (exit code 3):
/// unresolved names, bad row sums, negative weights without the opt-in flag.
class ScenarioSemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WindowRuleDoc {
    int n = 1;
    std::string trigger;
    Real reward = 0.0;
};

struct ObjectiveDoc {
    std::string name;
    // state -> action -> reward; missing entries are 0
    std::map<std::string, std::map<std::string, Real>> rewards;
    bool discount_constant = true;
    Real discount_value = 0.0;
    std::map<std::string, std::map<std::string, Real>> discount_table;
    Real initial_weight = 1.0;
    std::optional<WindowRuleDoc> window;
};

struct AggregationDoc {
    std::string gamma_sigma = "max"; // "max" | "const:<v>" | "normalize"
    Real constant = 0.0;
    bool allow_negative_weights = false;
};

struct ScheduleDoc {
    std::map<std::string, Real> w_start; // objective name -> weight
    std::map<std::string, Real> w_end;
    int t = 1;
};

struct IntertemporalDoc {
    std::string mode = "none"; // "none" | "n-step" | "historical"
    Real eta = 1.0;
    int n = 1;
    std::optional<ScheduleDoc> schedule;
};

struct PlannerDoc {
    int horizon = 8;
    int max_cycle_period = 12;
};

/// On-disk description of one scenario: shared dynamics, objectives with
/// their weights, aggregation settings, the preference schedule, and planner
/// limits. Exactly one scenario per file; the "version" field is required.
struct ScenarioDoc {
    int version = 1;
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> actions;
    std::string start; // defaults to the first state
    // state -> action -> distribution over state names (point masses allowed)
    std::map<std::string, std::map<std::string, std::map<std::string, Real>>> transitions;
    std::vector<ObjectiveDoc> objectives;
    AggregationDoc aggregation;
    IntertemporalDoc intertemporal;
    PlannerDoc planner;
};

/// A loaded scenario compiled into domain objects. When an objective carries
/// a window rule, the planning set lives on the (state, counter) expansion
/// and `lift` maps between the spaces; otherwise the planning set is the
/// base set.
struct CompiledScenario {
    ScenarioDoc doc;
    ObjectiveSet objectives;          // in document order, lifted when windowed
    std::optional<WindowLift> lift;   // engaged when a window rule is present
    State start_state = 0;            // in planning space
    std::vector<Real> initial_weights;
    Real harsanyi_constant = 0.0;
    GammaSigmaStrategy strategy;
    PreferenceSchedule schedule;      // constant(initial weights) when absent
    IntertemporalConfig intertemporal;
    PlanConfig plan_config;

    WeightState weight_state() const;
    std::vector<std::string> objective_names() const;
};

ScenarioDoc parse_scenario(const std::string& json_text);
std::string serialize_scenario(const ScenarioDoc& doc);

CompiledScenario compile_scenario(ScenarioDoc doc);

/// Reads, parses, and compiles a scenario file. Throws ScenarioParseError /
/// ScenarioSemanticError.
CompiledScenario load_scenario(const std::string& path);

} // namespace timepref
