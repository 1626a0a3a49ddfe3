#include "timepref/intertemporal.hpp"

#include <cmath>
#include <stdexcept>

namespace timepref {

PreferenceSchedule::PreferenceSchedule(std::vector<Real> w_start, std::vector<Real> w_end,
                                       int window)
    : w_start_(std::move(w_start)), w_end_(std::move(w_end)), window_(window) {
    if (w_start_.size() != w_end_.size())
        throw std::invalid_argument("schedule endpoints have different lengths");
    if (w_start_.empty()) throw std::invalid_argument("schedule is empty");
    if (window_ < 0) throw std::invalid_argument("shift window must be >= 0");
}

PreferenceSchedule PreferenceSchedule::constant(std::vector<Real> w) {
    std::vector<Real> end = w;
    return PreferenceSchedule(std::move(w), std::move(end), 0);
}

std::vector<Real> PreferenceSchedule::weights_at(int generation) const {
    if (generation < 0) throw std::invalid_argument("generation must be >= 0");
    if (window_ == 0 || generation >= window_) return w_end_;
    std::vector<Real> w(w_start_.size());
    const Real f = static_cast<Real>(generation) / window_;
    for (size_t i = 0; i < w.size(); ++i)
        w[i] = w_start_[i] + f * (w_end_[i] - w_start_[i]);
    return w;
}

PreferenceSchedule linear_schedule(std::vector<Real> w_start, std::vector<Real> w_end, int T) {
    if (T < 1) throw std::invalid_argument("shift window must be >= 1");
    return PreferenceSchedule(std::move(w_start), std::move(w_end), T);
}

std::vector<Real> nstep_reset(const std::vector<Real>& y, int t, int N,
                              const std::vector<Real>& w0) {
    if (t < 0) throw std::invalid_argument("step index must be >= 0");
    if (N < 1) throw std::invalid_argument("commitment window must be >= 1");
    (void)w0; // the factor convention resets to ones; initial weights multiply outside
    if (t > 0 && t % N == 0) return std::vector<Real>(y.size(), 1.0);
    return y;
}

std::vector<Real> historical_update(const std::vector<Real>& y, State s, Action a,
                                    const ObjectiveSet& objs,
                                    const GammaSigmaStrategy& strategy, Real eta,
                                    const std::vector<Real>& wn) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in [0, 1]");
    if (wn.size() != y.size())
        throw std::invalid_argument("generation weights have wrong length");
    WeightState ref;
    ref.weights = y;
    ref.factors.assign(y.size(), 1.0);
    const Real gs = gamma_sigma(strategy, ref, s, a, objs);
    if (gs <= 0.0) throw std::invalid_argument("aggregate discount is zero");
    std::vector<Real> next(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        const Real ratio = objs.objective(static_cast<int>(i)).mdp.discount_at(s, a) / gs;
        next[i] = eta * y[i] * ratio + (1.0 - eta) * wn[i];
    }
    return next;
}

Real v1_of_trajectory(const ObjectiveSet& objs, const std::vector<Real>& first_step_weights,
                      const TrajectorySpec& traj) {
    if (static_cast<int>(first_step_weights.size()) != objs.size())
        throw std::invalid_argument("weight vector does not match objective set");
    Real v = 0.0;
    for (int i = 0; i < objs.size(); ++i)
        v += first_step_weights[i] * return_of_trajectory(objs.objective(i).mdp, traj);
    return v;
}

GenerationSimResult simulate_generations(const ObjectiveSet& objs,
                                         const PreferenceSchedule& schedule,
                                         const IntertemporalConfig& cfg,
                                         const GammaSigmaStrategy& strategy, State start,
                                         int steps, const PlanConfig& plan_cfg) {
    if (steps < 1) throw std::invalid_argument("steps must be >= 1");
    if (schedule.size() != objs.size())
        throw std::invalid_argument("schedule does not match objective set");
    if (cfg.mode == IntertemporalConfig::Mode::Historical &&
        (cfg.eta < 0.0 || cfg.eta > 1.0))
        throw std::invalid_argument("eta must lie in [0, 1]");
    if (cfg.mode == IntertemporalConfig::Mode::NStep && cfg.commit_steps < 1)
        throw std::invalid_argument("commitment window must be >= 1");

    Planner planner(objs, plan_cfg, /*consistent=*/true);
    const GeneralizedMdp& dyn = objs.dynamics();

    GenerationSimResult out;
    // effective weights: the y factors with the initial weights absorbed
    std::vector<Real> weights = schedule.weights_at(0);
    State s = start;
    for (int t = 0; t < steps; ++t) {
        if (cfg.mode == IntertemporalConfig::Mode::NStep && t > 0 &&
            t % cfg.commit_steps == 0) {
            // each window is one dynamically consistent generation; its first
            // period dictates with its own schedule weights
            weights = schedule.weights_at(t);
        }
        out.weight_history.push_back(weights);

        WeightState ws;
        ws.weights = weights;
        ws.factors.assign(weights.size(), 1.0);
        ws.step_index = t;
        const PlanResult plan = planner.plan(ws, s);
        const Action a = plan.trajectory.at(0).action;
        out.realized.push_back({s, a});

        const Real eta = cfg.mode == IntertemporalConfig::Mode::Historical ? cfg.eta : 1.0;
        weights = historical_update(weights, s, a, objs, strategy, eta,
                                    schedule.weights_at(t));
        s = dyn.successor(s, a);
    }

    out.trajectory = detect_eventually_periodic(out.realized, plan_cfg.max_cycle_period);
    out.v1 = v1_of_trajectory(objs, schedule.weights_at(0), out.trajectory);
    return out;
}

} // namespace timepref
