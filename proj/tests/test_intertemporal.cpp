#include "timepref/intertemporal.hpp"

#include "oracles.hpp"
#include "test_helpers.hpp"
#include "timepref/trajectory_text.hpp"

#include <doctest.h>

#include <random>

using namespace timepref;
using namespace fixtures;

TEST_CASE("n-step reset snaps factors to one at window boundaries") {
    const std::vector<Real> y{0.1, 0.9};
    const std::vector<Real> w0{1.0, 1.0};
    CHECK(nstep_reset(y, 10, 10, w0) == std::vector<Real>{1.0, 1.0});
    CHECK(nstep_reset(y, 7, 10, w0) == y);
    CHECK(nstep_reset(y, 0, 10, w0) == y); // t = 0 is not a boundary
    for (int t = 1; t <= 5; ++t) CHECK(nstep_reset(y, t, 1, w0) == std::vector<Real>{1.0, 1.0});
}

TEST_CASE("historical update interpolates between propagation and the schedule") {
    const auto objs = peril_objectives();
    const auto strategy = GammaSigmaStrategy::max_individual();
    const std::vector<Real> y{1.0, 1.0};
    const std::vector<Real> wn{1.0, 1.0};

    SUBCASE("eta = 1 is the plain factor update") {
        const auto a = historical_update(y, 0, kPlay, objs, strategy, 1.0, wn);
        const auto b = y_update(y, 0, kPlay, objs, strategy, peril_weights());
        CHECK(a == b);
    }
    SUBCASE("eta = 0 forgets the past") {
        const std::vector<Real> other{0.25, 4.0};
        const auto a = historical_update(other, 0, kPlay, objs, strategy, 0.0, wn);
        CHECK(a == wn);
    }
    SUBCASE("eta = 0.9 blends as written") {
        const auto a = historical_update(y, 0, kPlay, objs, strategy, 0.9, wn);
        CHECK(a[0] == doctest::Approx(0.6).epsilon(1e-12));  // 0.9*(5/9) + 0.1
        CHECK(a[1] == doctest::Approx(1.0).epsilon(1e-12));  // 0.9*1 + 0.1
    }
    SUBCASE("stepwise accumulation oracle over a longer run") {
        std::mt19937_64 rng(7601);
        std::uniform_real_distribution<Real> unit(0.0, 1.0);
        std::uniform_int_distribution<int> act(0, 1);
        const Real eta = 0.7;
        std::vector<Real> cur{1.0, 1.0};
        std::vector<Real> expect{1.0, 1.0};
        for (int t = 0; t < 30; ++t) {
            const Action a = act(rng);
            cur = historical_update(cur, 0, a, objs, strategy, eta, wn);
            for (int i = 0; i < 2; ++i) {
                const Real ratio = objs.objective(i).mdp.discount_at(0, a) / 0.9;
                expect[i] = eta * expect[i] * ratio + (1 - eta) * wn[i];
            }
            CHECK(cur[0] == doctest::Approx(expect[0]).epsilon(1e-12));
            CHECK(cur[1] == doctest::Approx(expect[1]).epsilon(1e-12));
        }
    }
}

TEST_CASE("linear schedule endpoints and midpoint") {
    const auto sched = linear_schedule({1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, 10);
    CHECK(sched.weights_at(0) == std::vector<Real>{1.0, 0.0, 1.0});
    CHECK(sched.weights_at(10) == std::vector<Real>{0.0, 1.0, 1.0});
    CHECK(sched.weights_at(25) == std::vector<Real>{0.0, 1.0, 1.0});
    const auto mid = sched.weights_at(5);
    CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mid[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mid[2] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(linear_schedule({1.0}, {0.0}, 0), std::invalid_argument);
}

namespace {

// the three-objective shifting scenario on the lifted space
struct ShiftFixture {
    ObjectiveSet objs;
    State start;
    PreferenceSchedule schedule;
    PlanConfig plan;

    ShiftFixture() : objs(make_objs()), start(9), schedule(make_schedule()) {
        plan.horizon = 30;
        plan.max_cycle_period = 12;
    }

    static ObjectiveSet make_objs() {
        WindowCounterObjective playn;
        playn.name = "playn";
        playn.window = 10;
        playn.trigger = kPlay;
        playn.reward_value = 0.5;
        playn.discount = 0.9;
        const auto lift = lift_window_counter(playn, peril_objectives());
        // document order: play, playn, work
        const auto& l = lift.lifted().objectives();
        return ObjectiveSet({l[0], l[2], l[1]});
    }

    static PreferenceSchedule make_schedule() {
        return linear_schedule({1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}, 10);
    }

    TrajectorySpec lift_pattern(const std::vector<Action>& prefix,
                                const std::vector<Action>& cycle) const {
        ActionPattern pattern{prefix, cycle};
        return realize_action_pattern(objs.dynamics(), start, pattern);
    }
};

std::vector<Action> actions_of(const std::vector<Step>& steps) {
    std::vector<Action> out;
    for (const Step& st : steps) out.push_back(st.action);
    return out;
}

} // namespace

TEST_CASE("first-generation values of the shifted-scenario trajectories") {
    const ShiftFixture fx;
    const std::vector<Real> w0{1.0, 0.0, 1.0};

    // play once then work forever
    auto traj = fx.lift_pattern({kPlay}, {kWork});
    CHECK(v1_of_trajectory(fx.objs, w0, traj) == doctest::Approx(3.200).epsilon(1e-9));

    // five plays, then play every ten starting at t = 14
    std::vector<Action> prefix(5, kPlay);
    prefix.insert(prefix.end(), 9, kWork);
    std::vector<Action> cyc{kPlay};
    cyc.insert(cyc.end(), 9, kWork);
    traj = fx.lift_pattern(prefix, cyc);
    CHECK(v1_of_trajectory(fx.objs, w0, traj) == doctest::Approx(2.635).epsilon(5e-4));

    // play, work 23, then play every ten
    prefix.assign(1, kPlay);
    prefix.insert(prefix.end(), 23, kWork);
    traj = fx.lift_pattern(prefix, cyc);
    CHECK(v1_of_trajectory(fx.objs, w0, traj) == doctest::Approx(3.163).epsilon(5e-4));
}

TEST_CASE("v1 closed forms agree with long stepwise accumulation") {
    const ShiftFixture fx;
    const std::vector<Real> w0{1.0, 0.0, 1.0};
    std::vector<Action> prefix(3, kPlay);
    prefix.insert(prefix.end(), 9, kWork);
    std::vector<Action> cyc{kPlay};
    cyc.insert(cyc.end(), 9, kWork);
    const auto traj = fx.lift_pattern(prefix, cyc);
    const Real closed = v1_of_trajectory(fx.objs, w0, traj);
    const Real stepped = oracles::stepwise_weighted_sum(fx.objs, w0, 0.0, traj, 2000);
    CHECK(closed == doctest::Approx(stepped).epsilon(1e-9));
}

TEST_CASE("historical eta = 1 reproduces the propagated replanner on the plain pair") {
    const auto objs = peril_objectives();
    PlanConfig plan;
    plan.horizon = 4;
    plan.max_cycle_period = 3;
    IntertemporalConfig cfg;
    cfg.mode = IntertemporalConfig::Mode::Historical;
    cfg.eta = 1.0;
    const auto sim = simulate_generations(objs, PreferenceSchedule::constant({1.0, 1.0}), cfg,
                                          GammaSigmaStrategy::max_individual(), 0, 20, plan);
    const auto replay = myopic_replan_simulate(objs, peril_weights(), 0, 20, plan, true);
    CHECK(actions_of(sim.realized) == actions_of(replay.realized));
    CHECK(sim.v1 == doctest::Approx(3.20).epsilon(1e-9));
}

TEST_CASE("historical eta = 0 with a constant schedule is memoryless replanning") {
    const auto objs = peril_objectives();
    PlanConfig plan;
    plan.horizon = 4;
    plan.max_cycle_period = 3;
    IntertemporalConfig cfg;
    cfg.mode = IntertemporalConfig::Mode::Historical;
    cfg.eta = 0.0;
    const auto sim = simulate_generations(objs, PreferenceSchedule::constant({1.0, 1.0}), cfg,
                                          GammaSigmaStrategy::max_individual(), 0, 20, plan);
    const auto myopic = myopic_replan_simulate(objs, peril_weights(), 0, 20, plan, false);
    CHECK(actions_of(sim.realized) == actions_of(myopic.realized));
    for (const Step& st : sim.realized) CHECK(st.action == kPlay);
}

TEST_CASE("mode none matches historical discounting at eta = 1") {
    const auto objs = peril_objectives();
    PlanConfig plan;
    plan.horizon = 3;
    plan.max_cycle_period = 3;
    IntertemporalConfig none;
    none.mode = IntertemporalConfig::Mode::None;
    IntertemporalConfig full;
    full.mode = IntertemporalConfig::Mode::Historical;
    full.eta = 1.0;
    const auto schedule = PreferenceSchedule::constant({1.0, 1.0});
    const auto strategy = GammaSigmaStrategy::max_individual();
    const auto a = simulate_generations(objs, schedule, none, strategy, 0, 15, plan);
    const auto b = simulate_generations(objs, schedule, full, strategy, 0, 15, plan);
    CHECK(actions_of(a.realized) == actions_of(b.realized));
    CHECK(a.v1 == b.v1);
}

TEST_CASE("n-step commitment plays at every window boundary") {
    const auto objs = peril_objectives();
    PlanConfig plan;
    plan.horizon = 4;
    plan.max_cycle_period = 3;
    IntertemporalConfig cfg;
    cfg.mode = IntertemporalConfig::Mode::NStep;
    cfg.commit_steps = 10;
    const auto sim = simulate_generations(objs, PreferenceSchedule::constant({1.0, 1.0}), cfg,
                                          GammaSigmaStrategy::max_individual(), 0, 25, plan);
    for (int t = 0; t < 25; ++t) {
        const bool boundary = t % 10 == 0;
        CHECK(sim.realized[t].action == (boundary ? kPlay : kWork));
    }
}

TEST_CASE("n-step commitment on the shifted scenario settles on the ten-step cycle") {
    const ShiftFixture fx;
    IntertemporalConfig cfg;
    cfg.mode = IntertemporalConfig::Mode::NStep;
    cfg.commit_steps = 10;
    const auto sim = simulate_generations(fx.objs, fx.schedule, cfg,
                                          GammaSigmaStrategy::max_individual(), fx.start, 40,
                                          fx.plan);
    // each window dictator plays immediately, then commits to working
    for (int t = 0; t < 40; ++t)
        CHECK(sim.realized[t].action == (t % 10 == 0 ? kPlay : kWork));
    CHECK(sim.v1 == doctest::Approx(3.040).epsilon(1e-3));
}

TEST_CASE("the generation simulator reproduces the shifted-scenario extremes") {
    const ShiftFixture fx;
    IntertemporalConfig cfg;
    cfg.mode = IntertemporalConfig::Mode::Historical;

    SUBCASE("eta = 1: play once then work forever") {
        cfg.eta = 1.0;
        const auto sim = simulate_generations(fx.objs, fx.schedule, cfg,
                                              GammaSigmaStrategy::max_individual(), fx.start,
                                              60, fx.plan);
        CHECK(sim.realized[0].action == kPlay);
        for (size_t t = 1; t < sim.realized.size(); ++t)
            CHECK(sim.realized[t].action == kWork);
        CHECK(sim.v1 == doctest::Approx(3.200).epsilon(1e-9));
    }
    SUBCASE("eta = 0: five plays then the ten-step equilibrium") {
        cfg.eta = 0.0;
        const auto sim = simulate_generations(fx.objs, fx.schedule, cfg,
                                              GammaSigmaStrategy::max_individual(), fx.start,
                                              60, fx.plan);
        const auto acts = actions_of(sim.realized);
        for (int t = 0; t < 5; ++t) CHECK(acts[t] == kPlay);
        for (int t = 5; t < 60; ++t) {
            const bool play_step = (t >= 14) && ((t - 14) % 10 == 0);
            CHECK(acts[t] == (play_step ? kPlay : kWork));
        }
        CHECK(sim.v1 == doctest::Approx(2.635).epsilon(5e-4));
    }
}

TEST_CASE("tail anonymity: the realized trajectory is eventually ten-periodic") {
    const ShiftFixture fx;
    for (Real eta : {0.0, 0.3, 0.5, 0.9, 0.95, 0.98}) {
        IntertemporalConfig cfg;
        cfg.mode = IntertemporalConfig::Mode::Historical;
        cfg.eta = eta;
        const auto sim = simulate_generations(fx.objs, fx.schedule, cfg,
                                              GammaSigmaStrategy::max_individual(), fx.start,
                                              90, fx.plan);
        REQUIRE_FALSE(sim.trajectory.cycle.empty());
        CHECK(sim.trajectory.cycle.size() == 10);
        int plays = 0;
        for (const Step& st : sim.trajectory.cycle) plays += st.action == kPlay ? 1 : 0;
        CHECK(plays == 1);
    }
}
