#include "timepref/commands.hpp"

#include "timepref/format.hpp"
#include "timepref/impossibility.hpp"
#include "timepref/trajectory_text.hpp"
#include "timepref/valuation.hpp"

#include <future>
#include <ostream>
#include <sstream>

namespace timepref::cli {

namespace {

PlanConfig plan_config_for(const CompiledScenario& sc, const CommandOptions& opt) {
    PlanConfig cfg = sc.plan_config;
    if (opt.horizon) cfg.horizon = *opt.horizon;
    return cfg;
}

void emit_rows(const std::vector<std::vector<std::string>>& rows, const CommandOptions& opt,
               std::ostream& out) {
    if (opt.format == "csv") {
        for (const auto& row : rows) out << csv_row(row);
    } else {
        out << render_table(rows);
    }
}

int cmd_validate(const CompiledScenario& sc, std::ostream& out) {
    bool any_invalid = false;
    for (const Objective& o : sc.objectives.objectives()) {
        const auto report = validate_mdp(o.mdp);
        if (!report.valid) any_invalid = true;
        out << "objective " << o.name << ": "
            << (report.valid ? (report.finite_horizon_only ? "valid (finite-horizon only)"
                                                           : "valid")
                             : "invalid")
            << "\n";
        for (const auto& issue : report.issues) out << "  - " << issue << "\n";
    }
    return any_invalid ? kExitSemantic : kExitOk;
}

int cmd_value(const CompiledScenario& sc, const CommandOptions& opt, std::ostream& out) {
    if (opt.trajectory.empty())
        throw TrajectoryTextError("value needs --trajectory");
    if (!sc.objectives.dynamics().deterministic())
        throw ScenarioSemanticError(
            "trajectory valuation needs deterministic dynamics to determine states");
    const auto pattern = parse_action_pattern(opt.trajectory, sc.doc.actions);
    const auto traj =
        realize_action_pattern(sc.objectives.dynamics(), sc.start_state, pattern);
    if (auto err = check_trajectory(sc.objectives.dynamics(), traj))
        throw ScenarioSemanticError("trajectory invalid: " + *err);

    const auto returns = objective_returns(sc.objectives, traj);
    const WeightState ws = sc.weight_state();
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"objective", "return"});
    for (int i = 0; i < sc.objectives.size(); ++i)
        rows.push_back({sc.objectives.objective(i).name, format_fixed(returns[i], opt.digits)});
    rows.push_back({"aggregate", format_fixed(harsanyi_value(ws, returns), opt.digits)});
    emit_rows(rows, opt, out);
    return kExitOk;
}

int cmd_plan(const CompiledScenario& sc, const CommandOptions& opt, std::ostream& out,
             std::ostream& err) {
    const PlanConfig cfg = plan_config_for(sc, opt);
    const WeightState ws = sc.weight_state();
    const PlanResult result = plan_prefix_tail(sc.objectives, ws, sc.start_state, cfg,
                                               /*consistent=*/!opt.naive, sc.strategy);
    err << "# gamma_sigma=" << sc.strategy.label() << " horizon=" << cfg.horizon
        << " max_cycle_period=" << cfg.max_cycle_period
        << (opt.naive ? " scoring=naive" : " scoring=consistent") << "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"trajectory", "value"});
    rows.push_back({format_action_pattern(result.trajectory, sc.doc.actions),
                    format_fixed(result.value, opt.digits)});
    emit_rows(rows, opt, out);
    return kExitOk;
}

int cmd_simulate(const CompiledScenario& sc, const CommandOptions& opt, std::ostream& out,
                 std::ostream& err) {
    const PlanConfig cfg = plan_config_for(sc, opt);
    if (opt.steps < 1) throw ScenarioSemanticError("--steps must be >= 1");

    TrajectorySpec traj;
    Real v1 = 0.0;
    if (opt.mode == "myopic" || opt.mode == "consistent") {
        const auto result =
            myopic_replan_simulate(sc.objectives, sc.weight_state(), sc.start_state,
                                   opt.steps, cfg, /*propagate=*/opt.mode == "consistent");
        traj = result.trajectory;
        v1 = result.realized_value;
    } else if (opt.mode == "historical" || opt.mode == "nstep") {
        IntertemporalConfig icfg = sc.intertemporal;
        icfg.mode = opt.mode == "historical" ? IntertemporalConfig::Mode::Historical
                                             : IntertemporalConfig::Mode::NStep;
        if (opt.eta) icfg.eta = *opt.eta;
        if (icfg.eta < 0.0 || icfg.eta > 1.0)
            throw ScenarioSemanticError("eta must lie in [0, 1]");
        const auto result = simulate_generations(sc.objectives, sc.schedule, icfg,
                                                 sc.strategy, sc.start_state, opt.steps, cfg);
        traj = result.trajectory;
        v1 = result.v1;
    } else {
        throw ScenarioSemanticError("unknown simulate mode '" + opt.mode + "'");
    }

    err << "# mode=" << opt.mode << " steps=" << opt.steps << " gamma_sigma="
        << sc.strategy.label() << " horizon=" << cfg.horizon << "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"trajectory", "v1"});
    rows.push_back({format_action_pattern(traj, sc.doc.actions), format_fixed(v1, opt.digits)});
    emit_rows(rows, opt, out);
    return kExitOk;
}

int cmd_sweep_eta(const CompiledScenario& sc, const CommandOptions& opt, std::ostream& out,
                  std::ostream& err) {
    const PlanConfig cfg = plan_config_for(sc, opt);
    if (opt.steps < 1) throw ScenarioSemanticError("--steps must be >= 1");

    struct Row {
        std::string trajectory;
        Real v1;
    };
    // one simulation per eta, fanned out; rows are emitted in flag order
    std::vector<std::future<Row>> futures;
    for (Real eta : opt.eta_values) {
        if (eta < 0.0 || eta > 1.0)
            throw ScenarioSemanticError("eta values must lie in [0, 1]");
        futures.push_back(std::async(std::launch::async, [&, eta]() -> Row {
            IntertemporalConfig icfg;
            icfg.mode = IntertemporalConfig::Mode::Historical;
            icfg.eta = eta;
            const auto result = simulate_generations(sc.objectives, sc.schedule, icfg,
                                                     sc.strategy, sc.start_state, opt.steps,
                                                     cfg);
            return Row{format_action_pattern(result.trajectory, sc.doc.actions), result.v1};
        }));
    }

    err << "# sweep-eta steps=" << opt.steps << " gamma_sigma=" << sc.strategy.label()
        << " horizon=" << cfg.horizon << " max_cycle_period=" << cfg.max_cycle_period << "\n";
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"eta", "trajectory", "v1"});
    for (size_t i = 0; i < futures.size(); ++i) {
        const Row row = futures[i].get();
        rows.push_back({format_fixed(opt.eta_values[i], opt.digits), row.trajectory,
                        format_fixed(row.v1, opt.digits)});
    }
    emit_rows(rows, opt, out);
    return kExitOk;
}

int cmd_impossibility(const CommandOptions& opt, std::ostream& out) {
    const auto inst = ImpossibilityInstance::make(opt.gamma1, opt.gamma2);
    const auto report = impossibility_check(inst);
    if (report.consistent) {
        out << "consistent, gamma_sigma=" << format_fixed(report.gamma_sigma, opt.digits)
            << "\n";
    } else {
        out << "contradiction: gamma_sigma would need to equal "
            << format_fixed(report.implied_from_beta1, opt.digits) << " and "
            << format_fixed(report.implied_from_beta2, opt.digits) << " simultaneously\n";
    }
    return kExitOk;
}

} // namespace

int run_command(const std::string& command, const CompiledScenario* scenario,
                const CommandOptions& options, std::ostream& out, std::ostream& err) {
    if (options.format != "table" && options.format != "csv")
        throw ScenarioSemanticError("unknown format '" + options.format + "'");
    if (command == "impossibility") return cmd_impossibility(options, out);
    if (scenario == nullptr)
        throw ScenarioSemanticError("command '" + command + "' needs a scenario file");
    if (command == "validate") return cmd_validate(*scenario, out);
    if (command == "value") return cmd_value(*scenario, options, out);
    if (command == "plan") return cmd_plan(*scenario, options, out, err);
    if (command == "simulate") return cmd_simulate(*scenario, options, out, err);
    if (command == "sweep-eta") return cmd_sweep_eta(*scenario, options, out, err);
    throw ScenarioSemanticError("unknown command '" + command + "'");
}

int run_cli(const std::string& command, const std::string& scenario_path,
            const CommandOptions& options, std::ostream& out, std::ostream& err) {
    try {
        std::optional<CompiledScenario> scenario;
        if (command != "impossibility") scenario = load_scenario(scenario_path);
        return run_command(command, scenario ? &*scenario : nullptr, options, out, err);
    } catch (const ScenarioParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const TrajectoryTextError& e) {
        err << "error: " << e.what() << "\n";
        return kExitTrajectory;
    } catch (const PlannerCapError& e) {
        err << "error: " << e.what() << "\n";
        return kExitPlannerCap;
    } catch (const ScenarioSemanticError& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
}

} // namespace timepref::cli
