#include "timepref/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

namespace {

void add_common(CLI::App* cmd, std::string* scenario, timepref::cli::CommandOptions* opt,
                bool needs_scenario = true) {
    if (needs_scenario)
        cmd->add_option("scenario", *scenario, "scenario JSON file")->required();
    cmd->add_option("--digits", opt->digits, "decimal places (round half-even)")
        ->check(CLI::Range(0, 12));
    cmd->add_option("--format", opt->format, "output format")
        ->check(CLI::IsMember({"table", "csv"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"valuation, aggregation and planning over objectives with "
                 "diverse time preferences"};
    app.require_subcommand(1);

    std::string scenario;
    timepref::cli::CommandOptions opt;

    auto* validate = app.add_subcommand("validate", "check a scenario file");
    add_common(validate, &scenario, &opt);

    auto* value = app.add_subcommand("value", "value a trajectory per objective");
    add_common(value, &scenario, &opt);
    value->add_option("--trajectory", opt.trajectory, "trajectory, e.g. \"p,w*\"")->required();

    auto* plan = app.add_subcommand("plan", "optimal prefix+tail trajectory");
    add_common(plan, &scenario, &opt);
    plan->add_option("--horizon", [&opt](const CLI::results_t& r) {
        try {
            opt.horizon = std::stoi(r[0]);
        } catch (const std::exception&) {
            return false;
        }
        return true;
    }, "override the planner horizon");
    plan->add_flag("--naive", opt.naive, "score with the common-discount aggregate");

    auto* simulate = app.add_subcommand("simulate", "replanning simulation");
    add_common(simulate, &scenario, &opt);
    simulate->add_option("--mode", opt.mode, "myopic | consistent | historical | nstep")
        ->check(CLI::IsMember({"myopic", "consistent", "historical", "nstep"}));
    simulate->add_option("--steps", opt.steps, "environment steps")->check(CLI::PositiveNumber);
    simulate->add_option("--eta", [&opt](const CLI::results_t& r) {
        try {
            opt.eta = std::stod(r[0]);
        } catch (const std::exception&) {
            return false;
        }
        return true;
    }, "override the historical discounting rate");
    simulate->add_option("--horizon", [&opt](const CLI::results_t& r) {
        try {
            opt.horizon = std::stoi(r[0]);
        } catch (const std::exception&) {
            return false;
        }
        return true;
    }, "override the planner horizon");

    auto* sweep = app.add_subcommand("sweep-eta", "historical-discounting sweep");
    add_common(sweep, &scenario, &opt);
    sweep->add_option("--values", [&opt](const CLI::results_t& r) {
        opt.eta_values.clear();
        std::stringstream ss(r[0]);
        std::string tok;
        try {
            while (std::getline(ss, tok, ',')) opt.eta_values.push_back(std::stod(tok));
        } catch (const std::exception&) {
            return false;
        }
        return !opt.eta_values.empty();
    }, "comma-separated eta values");
    sweep->add_option("--steps", opt.steps, "environment steps per run")
        ->check(CLI::PositiveNumber);

    auto* impossibility =
        app.add_subcommand("impossibility", "Markovian-aggregate discount check");
    add_common(impossibility, &scenario, &opt, /*needs_scenario=*/false);
    impossibility->add_option("--gamma1", opt.gamma1, "first objective discount")->required();
    impossibility->add_option("--gamma2", opt.gamma2, "second objective discount")->required();

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    return timepref::cli::run_cli(command, scenario, opt, std::cout, std::cerr);
}
