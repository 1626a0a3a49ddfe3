// Acceptance suite: one line per criterion, [PASS]/[FAIL], nonzero exit on
// any failure. Everything runs from the two bundled scenario files plus
// randomized instances with fixed seeds.
#include "timepref/augmentation.hpp"
#include "timepref/boltzmann.hpp"
#include "timepref/commands.hpp"
#include "timepref/impossibility.hpp"
#include "timepref/intertemporal.hpp"
#include "timepref/planning.hpp"
#include "timepref/scenario.hpp"
#include "timepref/trajectory_text.hpp"
#include "timepref/valuation.hpp"

#include "oracles.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#ifndef TIMEPREF_SCENARIO_DIR
#define TIMEPREF_SCENARIO_DIR "scenarios"
#endif

using namespace timepref;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

bool near(Real a, Real b, Real tol) { return std::abs(a - b) <= tol; }

const std::string kPerilPath = std::string(TIMEPREF_SCENARIO_DIR) + "/peril.json";
const std::string kPlaynPath = std::string(TIMEPREF_SCENARIO_DIR) + "/peril_playn.json";

std::string fmt(Real v) {
    std::ostringstream oss;
    oss.precision(10);
    oss << v;
    return oss.str();
}

// 1. closed-form trajectory values 1.00 / 3.00 / 3.20 / 3.18
void criterion_1(const CompiledScenario& peril) {
    const WeightState ws = peril.weight_state();
    const std::vector<std::pair<std::string, Real>> rows = {
        {"p*", 1.00}, {"w*", 3.00}, {"p,w*", 3.20}, {"p,p,w*", 3.18}};
    bool ok = true;
    std::string detail;
    for (const auto& [text, expected] : rows) {
        const auto traj = realize_action_pattern(
            peril.objectives.dynamics(), peril.start_state,
            parse_action_pattern(text, peril.doc.actions));
        const Real v = aggregate_trajectory_value(peril.objectives, ws, traj);
        if (!near(v, expected, 1e-9)) {
            ok = false;
            detail += text + " -> " + fmt(v) + " != " + fmt(expected) + "; ";
        }
    }
    report(1, "trajectory value table 1.00 / 3.00 / 3.20 / 3.18", ok, detail);
}

// 2. myopic replanning collapses to constant play worth 1.00
void criterion_2(const CompiledScenario& peril) {
    const auto result = myopic_replan_simulate(peril.objectives, peril.weight_state(),
                                               peril.start_state, 20, peril.plan_config,
                                               /*propagate=*/false);
    bool all_play = true;
    for (const Step& st : result.realized) all_play &= (st.action == 1);
    const bool ok = all_play && near(result.realized_value, 1.00, 1e-9);
    report(2, "myopic replanning realizes constant play at value 1.00", ok,
           all_play ? "value " + fmt(result.realized_value) : "a non-play step appeared");
}

// 3. weight propagation fixes the inconsistency, action-for-action
void criterion_3(const CompiledScenario& peril) {
    const auto sim = myopic_replan_simulate(peril.objectives, peril.weight_state(),
                                            peril.start_state, 20, peril.plan_config,
                                            /*propagate=*/true);
    const auto once = plan_prefix_tail(peril.objectives, peril.weight_state(),
                                       peril.start_state, peril.plan_config);
    bool ok = sim.realized[0].action == 1;
    for (size_t t = 1; t < sim.realized.size(); ++t) ok &= (sim.realized[t].action == 0);
    for (size_t t = 0; t < sim.realized.size(); ++t)
        ok &= (sim.realized[t].action == once.trajectory.at(t).action);
    report(3, "propagated weights play once then work, matching the one-shot plan", ok);
}

// 4. one play step maps unit weights to (0.5, 0.9) exactly
void criterion_4(const CompiledScenario& peril) {
    const auto next =
        propagate_weights(peril.weight_state(), peril.start_state, 1, peril.objectives);
    const bool ok = next.weights[0] == 0.5 && next.weights[1] == 0.9;
    report(4, "weight propagation maps (1, 1) to (0.5, 0.9) exactly", ok,
           "got (" + fmt(next.weights[0]) + ", " + fmt(next.weights[1]) + ")");
}

// 5. augmented return identity on 200 random instances
void criterion_5() {
    std::mt19937_64 rng(90051);
    oracles::RandomMdpSpec spec;
    spec.num_states = 3;
    spec.num_actions = 2;
    spec.discount_lo = 0.1;
    spec.discount_hi = 0.95;
    std::uniform_real_distribution<Real> wgt(0.1, 2.0);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        const auto objs = oracles::random_objective_set(rng, spec, 2);
        const WeightState ws = WeightState::initial({wgt(rng), wgt(rng)}, wgt(rng));
        const auto aug = build_augmented_mdp(objs, ws, GammaSigmaStrategy::max_individual());
        const auto traj = oracles::random_trajectory(rng, objs.dynamics(), 50);
        const Real augmented = aug.discounted_return(traj, 50);
        Real direct = ws.constant;
        for (int i = 0; i < 2; ++i)
            direct += ws.weights[i] * truncated_return(objs.objective(i).mdp, traj, 50);
        if (!near(augmented, direct, 1e-9)) {
            ok = false;
            detail = "trial " + std::to_string(trial) + ": " + fmt(augmented) +
                     " != " + fmt(direct);
        }
    }
    report(5, "augmented return equals the weighted objective sum on 200 random instances",
           ok, detail);
}

// 6. the seven shifted-scenario trajectories value to the published column
void criterion_6(const CompiledScenario& playn) {
    const std::vector<std::pair<std::string, Real>> rows = {
        {"p5,w9,(p,w9)*", 2.635}, {"p5,w9,(p,w9)*", 2.635}, {"p3,w9,(p,w9)*", 2.932},
        {"p,w14,(p,w9)*", 3.105}, {"p,w23,(p,w9)*", 3.163}, {"p,w50,(p,w9)*", 3.198},
        {"p,w*", 3.200}};
    const auto w0 = playn.schedule.weights_at(0);
    bool ok = true;
    std::string detail;
    for (const auto& [text, expected] : rows) {
        const auto traj = realize_action_pattern(
            playn.objectives.dynamics(), playn.start_state,
            parse_action_pattern(text, playn.doc.actions));
        const Real v1 = v1_of_trajectory(playn.objectives, w0, traj);
        if (!near(v1, expected, 1e-3)) {
            ok = false;
            detail += text + " -> " + fmt(v1) + " != " + fmt(expected) + "; ";
        }
    }
    report(6, "first-generation values of the seven reference trajectories (+/- 0.001)", ok,
           detail);
}

// 7. the generation simulator recovers the reference rows
void criterion_7(const CompiledScenario& playn) {
    struct Row {
        Real eta;
        std::string shape;
        Real v1;
    };
    const std::vector<Row> rows = {
        {0.00, "p5,(w9,p)*", 2.635}, {0.30, "p5,(w9,p)*", 2.635},
        {0.50, "p3,(w9,p)*", 2.932}, {0.90, "p,w14,(p,w9)*", 3.105},
        {0.95, "p,w23,(p,w9)*", 3.163}, {0.98, "p,w50,(p,w9)*", 3.198},
        {1.00, "p,w*", 3.200}};

    bool ok = true;
    std::string detail;
    for (const Row& row : rows) {
        IntertemporalConfig cfg;
        cfg.mode = IntertemporalConfig::Mode::Historical;
        cfg.eta = row.eta;
        const auto sim =
            simulate_generations(playn.objectives, playn.schedule, cfg, playn.strategy,
                                 playn.start_state, 100, playn.plan_config);
        const std::string shape = format_action_pattern(sim.trajectory, playn.doc.actions);
        const bool exact_row = row.eta == 0.0 || row.eta == 1.0;
        const Real tol = exact_row ? 1e-3 : 1e-2;
        if (!near(sim.v1, row.v1, tol)) {
            ok = false;
            detail += "eta " + fmt(row.eta) + ": v1 " + fmt(sim.v1) + " != " + fmt(row.v1) +
                      "; ";
        }
        if (shape != row.shape) {
            if (exact_row) {
                ok = false;
                detail += "eta " + fmt(row.eta) + ": shape " + shape +
                          " != " + row.shape + "; ";
            } else {
                g_notes.push_back("eta " + fmt(row.eta) + ": simulated shape " + shape +
                                  " deviates from the reference " + row.shape +
                                  " (v1 " + fmt(sim.v1) + ")");
            }
        }
    }
    report(7, "generation simulation recovers the reference rows "
              "(shape exact at eta 0 and 1; v1 +/- 0.01 between)",
           ok, detail);
}

// 8. Markovian-aggregate discount: contradictions and agreements
void criterion_8() {
    bool ok = true;
    std::string detail;
    const auto peril_report = impossibility_check(ImpossibilityInstance::make(0.5, 0.9));
    if (peril_report.consistent) {
        ok = false;
        detail = "(0.5, 0.9) reported consistent";
    }

    std::mt19937_64 rng(90081);
    std::uniform_real_distribution<Real> disc(0.05, 0.99);
    std::uniform_real_distribution<Real> mag(0.2, 5.0);
    int done = 0;
    while (done < 1000 && ok) {
        const Real g1 = disc(rng);
        const Real g2 = disc(rng);
        if (std::abs(g1 - g2) < 1e-3) continue;
        const auto inst =
            ImpossibilityInstance::make(g1, g2, mag(rng), mag(rng), mag(rng), mag(rng));
        if (inst.beta1 == inst.beta2) continue;
        if (impossibility_check(inst).consistent) {
            ok = false;
            detail = "unequal pair (" + fmt(g1) + ", " + fmt(g2) + ") reported consistent";
        }
        ++done;
    }
    for (int k = 0; k < 1000 && ok; ++k) {
        const Real g = disc(rng);
        const auto verdict =
            impossibility_check(ImpossibilityInstance::make(g, g, mag(rng), mag(rng),
                                                            mag(rng), mag(rng)));
        if (!verdict.consistent || !near(verdict.gamma_sigma, g, 1e-9)) {
            ok = false;
            detail = "equal pair " + fmt(g) + " mishandled";
        }
    }
    report(8, "aggregate discount contradictions for unequal pairs, agreement for equal",
           ok, detail);
}

// 9. stationary baseline: work forever at 3.00, also under the
// stationary-distribution objective
void criterion_9(const CompiledScenario& peril) {
    const auto best = best_stationary(peril.objectives, peril.weight_state(),
                                      peril.start_state);
    const PolicySpec work_forever = PolicySpec::constant(peril.objectives.num_states(), 0);
    const Real avg = avg_objective(peril.objectives, peril.weight_state(), work_forever);
    const bool ok = best.actions == std::vector<Action>{0} && near(best.value, 3.00, 1e-9) &&
                    near(avg, 3.00, 1e-9);
    report(9, "best stationary policy works forever at 3.00; its average objective is 3.00",
           ok, "best " + fmt(best.value) + ", avg " + fmt(avg));
}

// 10. property suites (>= 100 cases each)
void criterion_10(const CompiledScenario& peril) {
    std::string detail;
    bool ok = true;
    auto run_suite = [&](const std::string& name, auto&& fn) {
        try {
            if (!fn()) {
                ok = false;
                detail += name + " failed; ";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail += name + " threw (" + e.what() + "); ";
        }
    };

    run_suite("mixture linearity", [] {
        std::mt19937_64 rng(90101);
        oracles::RandomMdpSpec spec;
        std::uniform_real_distribution<Real> unit(0.05, 0.95);
        std::uniform_int_distribution<int> act(0, 1);
        for (int trial = 0; trial < 100; ++trial) {
            const auto mdp = oracles::random_mdp(rng, spec);
            const auto pi = PolicySpec::deterministic({act(rng), act(rng), act(rng)});
            const auto omega = PolicySpec::deterministic({act(rng), act(rng), act(rng)});
            const Real beta = unit(rng);
            const auto start = oracles::random_distribution(rng, mdp.num_states);
            const Real mixed = evaluate_prospect(
                mdp, Prospect{start, PolicySpec::mixture({{beta, pi}, {1 - beta, omega}})});
            const Real split = beta * evaluate_prospect(mdp, Prospect{start, pi}) +
                               (1 - beta) * evaluate_prospect(mdp, Prospect{start, omega});
            if (!near(mixed, split, 1e-9)) return false;
        }
        return true;
    });

    run_suite("Bellman consistency", [] {
        std::mt19937_64 rng(90102);
        oracles::RandomMdpSpec spec;
        std::uniform_real_distribution<Real> unit(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            const auto mdp = oracles::random_mdp(rng, spec);
            std::vector<std::vector<Real>> dists;
            for (State s = 0; s < mdp.num_states; ++s) {
                const Real x = unit(rng);
                dists.push_back({x, 1 - x});
            }
            const auto pi = PolicySpec::stochastic(dists);
            const auto v = evaluate_stationary(mdp, pi);
            for (State s = 0; s < mdp.num_states; ++s) {
                Real rhs = 0.0;
                for (Action a = 0; a < mdp.num_actions; ++a) {
                    Real ev = 0.0;
                    for (State t = 0; t < mdp.num_states; ++t)
                        ev += mdp.transition_at(s, a)[t] * v[t];
                    rhs += dists[s][a] * (mdp.reward_at(s, a) + mdp.discount_at(s, a) * ev);
                }
                if (!near(v[s], rhs, 1e-9)) return false;
            }
        }
        return true;
    });

    run_suite("ratio law", [&] {
        std::mt19937_64 rng(90103);
        oracles::RandomMdpSpec spec;
        std::uniform_real_distribution<Real> wgt(0.1, 3.0);
        std::uniform_int_distribution<int> state(0, 2), act(0, 1);
        for (int trial = 0; trial < 100; ++trial) {
            const auto objs = oracles::random_objective_set(rng, spec, 2);
            const auto ws = WeightState::initial({wgt(rng), wgt(rng)});
            const State s = state(rng);
            const Action a = act(rng);
            const auto next = propagate_weights(ws, s, a, objs);
            const Real lhs = next.weights[1] / next.weights[0];
            const Real rhs = (ws.weights[1] * objs.objective(1).mdp.discount_at(s, a)) /
                             (ws.weights[0] * objs.objective(0).mdp.discount_at(s, a));
            if (lhs != rhs) return false;
        }
        return true;
    });

    run_suite("equal-discount collapse", [] {
        std::mt19937_64 rng(90104);
        oracles::RandomMdpSpec spec;
        spec.deterministic = true;
        std::uniform_real_distribution<Real> wgt(0.1, 3.0);
        std::uniform_int_distribution<int> act(0, 1);
        for (int trial = 0; trial < 100; ++trial) {
            auto objs = oracles::random_objective_set(rng, spec, 2);
            std::vector<Objective> copy = objs.objectives();
            copy[1].mdp.discount = copy[0].mdp.discount;
            objs = ObjectiveSet(std::move(copy));
            auto ws = WeightState::initial({wgt(rng), wgt(rng)});
            const Real ratio0 = ws.weights[1] / ws.weights[0];
            State s = 0;
            for (int t = 0; t < 20; ++t) {
                const Action a = act(rng);
                ws = propagate_weights(ws, s, a, objs);
                s = objs.dynamics().successor(s, a);
                if (!near(ws.weights[1] / ws.weights[0], ratio0,
                          1e-12 * std::abs(ratio0)))
                    return false;
            }
        }
        return true;
    });

    run_suite("Luce ratio invariance", [] {
        std::mt19937_64 rng(90105);
        std::uniform_real_distribution<Real> mass(0.1, 10.0);
        for (int trial = 0; trial < 100; ++trial) {
            ChoiceMass m{{mass(rng), mass(rng), mass(rng), mass(rng)}, 1.0};
            const auto p = softmax_policy(utilities_of(m), m.temperature);
            // renormalized over the subset {0, 2}: ratios preserved
            const Real sub = p[0] + p[2];
            const Real q0 = p[0] / sub;
            const Real q2 = p[2] / sub;
            if (!near(q0 / q2, m.mass[0] / m.mass[2], 1e-9 * (m.mass[0] / m.mass[2])))
                return false;
        }
        return true;
    });

    run_suite("softmax shift invariance", [] {
        std::mt19937_64 rng(90106);
        std::uniform_real_distribution<Real> util(-5.0, 5.0);
        for (int trial = 0; trial < 100; ++trial) {
            const std::vector<Real> u{util(rng), util(rng), util(rng)};
            const Real c = util(rng);
            const auto a = softmax_policy(u, 0.7);
            const auto b = softmax_policy({u[0] + c, u[1] + c, u[2] + c}, 0.7);
            for (int i = 0; i < 3; ++i)
                if (!near(a[i], b[i], 1e-12)) return false;
        }
        return true;
    });

    (void)peril;
    report(10, "property suites: mixture linearity, Bellman, ratio law, collapse, Luce, "
               "softmax shift",
           ok, detail);
}

} // namespace

int main() {
    try {
        const auto peril = load_scenario(kPerilPath);
        const auto playn = load_scenario(kPlaynPath);

        criterion_1(peril);
        criterion_2(peril);
        criterion_3(peril);
        criterion_4(peril);
        criterion_5();
        criterion_6(playn);
        criterion_7(playn);
        criterion_8();
        criterion_9(peril);
        criterion_10(peril);
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance setup: " << e.what() << "\n";
        return 1;
    }

    for (const auto& note : g_notes) std::cout << "[NOTE] " << note << "\n";
    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " acceptance criteria failed\n";
    return 1;
}
