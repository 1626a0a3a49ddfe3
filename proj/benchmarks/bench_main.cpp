#include "timepref/intertemporal.hpp"
#include "timepref/planning.hpp"
#include "timepref/scenario.hpp"
#include "timepref/valuation.hpp"

#include <benchmark/benchmark.h>

#include <random>

#ifndef TIMEPREF_SCENARIO_DIR
#define TIMEPREF_SCENARIO_DIR "scenarios"
#endif

using namespace timepref;

namespace {

GeneralizedMdp random_mdp(std::mt19937_64& rng, int states, int actions) {
    GeneralizedMdp mdp;
    mdp.num_states = states;
    mdp.num_actions = actions;
    std::uniform_real_distribution<Real> unit(0.05, 1.0);
    std::uniform_real_distribution<Real> rew(-1.0, 1.0);
    for (int i = 0; i < states * actions; ++i) {
        std::vector<Real> row(states);
        Real sum = 0.0;
        for (Real& p : row) sum += (p = unit(rng));
        for (Real& p : row) p /= sum;
        mdp.transition.push_back(std::move(row));
        mdp.reward.push_back(rew(rng));
        mdp.discount.push_back(0.95);
    }
    return mdp;
}

void BM_EvaluateStationary(benchmark::State& state) {
    std::mt19937_64 rng(11);
    const int n = static_cast<int>(state.range(0));
    const auto mdp = random_mdp(rng, n, 2);
    const auto pi = PolicySpec::constant(n, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_stationary(mdp, pi));
    }
}
BENCHMARK(BM_EvaluateStationary)->Arg(8)->Arg(32)->Arg(128);

void BM_TrajectoryReturn(benchmark::State& state) {
    std::mt19937_64 rng(12);
    const auto mdp = random_mdp(rng, 4, 2);
    TrajectorySpec traj;
    State s = 0;
    for (int t = 0; t < static_cast<int>(state.range(0)); ++t) {
        traj.prefix.push_back({s, 0});
        s = mdp.successor(s, 0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(return_of_trajectory(mdp, traj));
    }
}
BENCHMARK(BM_TrajectoryReturn)->Arg(64)->Arg(1024);

void BM_PlannerBuild(benchmark::State& state) {
    const auto sc = load_scenario(std::string(TIMEPREF_SCENARIO_DIR) + "/peril_playn.json");
    PlanConfig cfg = sc.plan_config;
    cfg.max_cycle_period = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Planner planner(sc.objectives, cfg);
        benchmark::DoNotOptimize(&planner);
    }
}
BENCHMARK(BM_PlannerBuild)->Arg(6)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PlanStep(benchmark::State& state) {
    const auto sc = load_scenario(std::string(TIMEPREF_SCENARIO_DIR) + "/peril_playn.json");
    PlanConfig cfg = sc.plan_config;
    cfg.horizon = static_cast<int>(state.range(0));
    Planner planner(sc.objectives, cfg);
    WeightState ws;
    ws.weights = {0.3, 0.6, 1.0};
    ws.factors = {1.0, 1.0, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(planner.plan(ws, sc.start_state));
    }
}
BENCHMARK(BM_PlanStep)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_GenerationSimulation(benchmark::State& state) {
    const auto sc = load_scenario(std::string(TIMEPREF_SCENARIO_DIR) + "/peril_playn.json");
    IntertemporalConfig cfg = sc.intertemporal;
    cfg.eta = 0.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_generations(sc.objectives, sc.schedule, cfg,
                                                      sc.strategy, sc.start_state,
                                                      static_cast<int>(state.range(0)),
                                                      sc.plan_config));
    }
}
BENCHMARK(BM_GenerationSimulation)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
