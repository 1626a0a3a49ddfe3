#pragma once

#include "timepref/aggregation.hpp"
#include "timepref/planning.hpp"

#include <optional>
#include <vector>

namespace timepref {

/// Per-generation initial weights w^n_i: linear shift over the first T
/// generations, constant afterwards. A constant schedule has T = 0.
class PreferenceSchedule {
public:
    PreferenceSchedule() = default;
    PreferenceSchedule(std::vector<Real> w_start, std::vector<Real> w_end, int window);

    static PreferenceSchedule constant(std::vector<Real> w);

    std::vector<Real> weights_at(int generation) const;
    int window() const { return window_; }
    int size() const { return static_cast<int>(w_start_.size()); }

private:
    std::vector<Real> w_start_, w_end_;
    int window_ = 0;
};

/// w^n = w_start + (n/T)(w_end - w_start) for n <= T, w_end afterwards.
PreferenceSchedule linear_schedule(std::vector<Real> w_start, std::vector<Real> w_end, int T);

struct IntertemporalConfig {
    enum class Mode { None, NStep, Historical };
    Mode mode = Mode::None;
    Real eta = 1.0;       // historical only, in [0, 1]
    int commit_steps = 1; // n-step only, >= 1
};

/// N-step commitment: factors snap back to 1 at every window boundary
/// (t mod N = 0, t > 0) and are untouched otherwise.
std::vector<Real> nstep_reset(const std::vector<Real>& y, int t, int N,
                              const std::vector<Real>& w0);

/// Historical discounting: y_i' = eta * [y_i gamma_i(s,a) / gamma_sigma(s,a)]
///                                + (1 - eta) * wn_i.
/// eta = 1 is the plain factor update; eta = 0 forgets the past entirely.
std::vector<Real> historical_update(const std::vector<Real>& y, State s, Action a,
                                    const ObjectiveSet& objs,
                                    const GammaSigmaStrategy& strategy, Real eta,
                                    const std::vector<Real>& wn);

/// Aggregate value of a trajectory under the first generation's weights:
/// sum_i w^0_i * return_i(traj).
Real v1_of_trajectory(const ObjectiveSet& objs, const std::vector<Real>& first_step_weights,
                      const TrajectorySpec& traj);

struct GenerationSimResult {
    TrajectorySpec trajectory;          // realized, periodic suffix folded
    std::vector<Step> realized;         // raw executed steps
    Real v1 = 0.0;                      // value of `trajectory` under generation-0 weights
    std::vector<std::vector<Real>> weight_history; // effective weights per step
};

/// Generation-by-generation replanning. Each step plans with the current
/// effective weight vector (the y factors with the initial weights absorbed:
/// y_0 = w^0), executes the first action, and advances the weights by the
/// configured rule. The historical blend and the n-step reset draw on the
/// schedule entry of the generation being executed; one environment step is
/// one generation.
GenerationSimResult simulate_generations(const ObjectiveSet& objs,
                                         const PreferenceSchedule& schedule,
                                         const IntertemporalConfig& cfg,
                                         const GammaSigmaStrategy& strategy, State start,
                                         int steps, const PlanConfig& plan_cfg);

} // namespace timepref
