#include "timepref/commands.hpp"

#include "timepref/format.hpp"

#include <doctest.h>

#include <sstream>

#ifndef TIMEPREF_SCENARIO_DIR
#define TIMEPREF_SCENARIO_DIR "scenarios"
#endif

using namespace timepref;
using namespace timepref::cli;

namespace {

const std::string kPeril = std::string(TIMEPREF_SCENARIO_DIR) + "/peril.json";
const std::string kPerilPlayn = std::string(TIMEPREF_SCENARIO_DIR) + "/peril_playn.json";

struct RunOutput {
    int code;
    std::string out;
    std::string err;
};

RunOutput run(const std::string& command, const std::string& path,
              const CommandOptions& opt) {
    std::ostringstream out, err;
    const int code = run_cli(command, path, opt, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("fixed-point formatting rounds half to even") {
    CHECK(format_fixed(3.2, 3) == "3.200");
    CHECK(format_fixed(2.6345, 3) == "2.634");
    CHECK(format_fixed(2.6355, 3) == "2.636");
    CHECK(format_fixed(-2.6345, 3) == "-2.634");
    CHECK(format_fixed(0.0005, 3) == "0.000");
    CHECK(format_fixed(0.0015, 3) == "0.002");
    CHECK(format_fixed(1.0, 0) == "1");
    CHECK(format_fixed(-1.5, 0) == "-2");
    CHECK(format_fixed(-2.5, 0) == "-2");
    CHECK(format_fixed(0.125, 2) == "0.12");
    CHECK(format_fixed(0.135, 2) == "0.14");
}

TEST_CASE("csv fields quote commas") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

TEST_CASE("value command prints per-objective and aggregate returns") {
    CommandOptions opt;
    opt.trajectory = "p,w*";
    const auto r = run("value", kPeril, opt);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("play") != std::string::npos);
    CHECK(r.out.find("0.500") != std::string::npos);
    CHECK(r.out.find("2.700") != std::string::npos);
    CHECK(r.out.find("aggregate") != std::string::npos);
    CHECK(r.out.find("3.200") != std::string::npos);

    opt.format = "csv";
    const auto csv = run("value", kPeril, opt);
    CHECK(csv.out == "objective,return\nplay,0.500\nwork,2.700\naggregate,3.200\n");
}

TEST_CASE("unknown trajectory tokens exit with code 4") {
    CommandOptions opt;
    opt.trajectory = "p,q*";
    const auto r = run("value", kPeril, opt);
    CHECK(r.code == kExitTrajectory);
    CHECK(r.err.find("unknown trajectory token") != std::string::npos);
}

TEST_CASE("missing scenario files exit with code 2") {
    CommandOptions opt;
    const auto r = run("validate", "no_such_file.json", opt);
    CHECK(r.code == kExitParse);
}

TEST_CASE("plan prints the one-play optimum") {
    CommandOptions opt;
    const auto r = run("plan", kPeril, opt);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("p,w*") != std::string::npos);
    CHECK(r.out.find("3.200") != std::string::npos);
}

TEST_CASE("simulate myopic collapses to constant play") {
    CommandOptions opt;
    opt.mode = "myopic";
    opt.steps = 20;
    const auto r = run("simulate", kPeril, opt);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("p*") != std::string::npos);
    CHECK(r.out.find("1.000") != std::string::npos);
}

TEST_CASE("simulate consistent keeps the one-shot plan") {
    CommandOptions opt;
    opt.mode = "consistent";
    opt.steps = 20;
    const auto r = run("simulate", kPeril, opt);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("p,w*") != std::string::npos);
    CHECK(r.out.find("3.200") != std::string::npos);
}

TEST_CASE("sweep-eta emits the reference column for the default eta grid") {
    CommandOptions opt;
    opt.format = "csv";
    opt.steps = 100;
    const auto r = run("sweep-eta", kPerilPlayn, opt);
    CHECK(r.code == kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "eta,trajectory,v1");
    const std::vector<std::string> expected = {
        "0.000,\"p5,(w9,p)*\",2.635",  "0.300,\"p5,(w9,p)*\",2.635",
        "0.500,\"p3,(w9,p)*\",2.932",  "0.900,\"p,w14,(p,w9)*\",3.105",
        "0.950,\"p,w23,(p,w9)*\",3.163", "0.980,\"p,w50,(p,w9)*\",3.198",
        "1.000,\"p,w*\",3.200"};
    for (const std::string& want : expected) {
        REQUIRE(std::getline(lines, line));
        CHECK(line == want);
    }
}

TEST_CASE("unknown simulate modes exit with code 3") {
    CommandOptions opt;
    opt.mode = "oracle";
    const auto r = run("simulate", kPeril, opt);
    CHECK(r.code == kExitSemantic);
}

TEST_CASE("stochastic scenarios cannot value action trajectories") {
    const std::string text = R"({
      "version": 1,
      "states": ["s", "t"],
      "actions": ["a"],
      "transitions": {"s": {"a": {"s": 0.5, "t": 0.5}}, "t": {"a": "t"}},
      "objectives": [{"name": "x", "rewards": {"s": {"a": 1.0}}, "discount": 0.5}]
    })";
    const auto sc = compile_scenario(parse_scenario(text));
    CommandOptions opt;
    opt.trajectory = "a,a*";
    std::ostringstream out, err;
    int code = kExitOk;
    try {
        code = run_command("value", &sc, opt, out, err);
    } catch (const ScenarioSemanticError&) {
        code = kExitSemantic;
    }
    CHECK(code == kExitSemantic);
}

TEST_CASE("impossibility verdicts") {
    CommandOptions opt;
    opt.gamma1 = 0.7;
    opt.gamma2 = 0.7;
    auto r = run("impossibility", "", opt);
    CHECK(r.code == kExitOk);
    CHECK(r.out == "consistent, gamma_sigma=0.700\n");

    opt.gamma1 = 0.5;
    opt.gamma2 = 0.9;
    r = run("impossibility", "", opt);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("contradiction") != std::string::npos);
    CHECK(r.out.find("0.900") != std::string::npos);
    CHECK(r.out.find("0.500") != std::string::npos);
}

TEST_CASE("command output is byte-identical across runs") {
    CommandOptions opt;
    opt.mode = "historical";
    opt.steps = 60;
    opt.eta = 0.9;
    const auto a = run("simulate", kPerilPlayn, opt);
    const auto b = run("simulate", kPerilPlayn, opt);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);

    CommandOptions sweep;
    sweep.steps = 60;
    sweep.eta_values = {0.0, 0.5};
    const auto c = run("sweep-eta", kPerilPlayn, sweep);
    const auto d = run("sweep-eta", kPerilPlayn, sweep);
    CHECK(c.out == d.out);
}

TEST_CASE("a reloaded scenario produces identical command output") {
    const auto sc = load_scenario(kPeril);
    const auto text = serialize_scenario(sc.doc);
    const auto reloaded = compile_scenario(parse_scenario(text));

    CommandOptions opt;
    opt.trajectory = "p,w*";
    std::ostringstream out1, err1, out2, err2;
    run_command("value", &sc, opt, out1, err1);
    run_command("value", &reloaded, opt, out2, err2);
    CHECK(out1.str() == out2.str());
}

TEST_CASE("planner caps surface as exit code 5") {
    // a tiny node budget cannot even cover the root scan
    const auto sc = load_scenario(kPeril);
    CompiledScenario tight = sc;
    tight.plan_config.node_budget = 0;
    CommandOptions opt;
    std::ostringstream out, err;
    int code;
    try {
        code = run_command("plan", &tight, opt, out, err);
    } catch (const PlannerCapError&) {
        code = kExitPlannerCap;
    }
    CHECK(code == kExitPlannerCap);
}

TEST_CASE("validate reports the lifted objectives") {
    CommandOptions opt;
    const auto r = run("validate", kPerilPlayn, opt);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("playn") != std::string::npos);
    CHECK(r.out.find("valid") != std::string::npos);
}
