#pragma once

#include "timepref/aggregation.hpp"

#include <vector>

namespace timepref {

/// Base state plus the accumulated per-objective factors y_i. The factors
/// make the aggregate reward Markovian: one extra parameter per objective
/// instead of the full history.
struct AugmentedState {
    State base = 0;
    std::vector<Real> y;

    static AugmentedState initial(State s, int num_objectives) {
        return AugmentedState{s, std::vector<Real>(num_objectives, 1.0)};
    }
};

/// y_i' = y_i * gamma_i(s,a) / gamma_sigma(s,a). Throws on a zero aggregate
/// discount.
std::vector<Real> y_update(const std::vector<Real>& y, State s, Action a,
                           const ObjectiveSet& objs, const GammaSigmaStrategy& strategy,
                           const WeightState& ws);

/// Markovian view of the aggregate: reward(s,y,a) = sum_i y_i w_i r_i(s,a)
/// and discount(s,y,a) = gamma_sigma(s,a). States are generated on demand
/// since y is continuous; all methods are pure, so instances may be shared
/// across threads.
class AugmentedMdp {
public:
    AugmentedMdp(ObjectiveSet objs, WeightState ws, GammaSigmaStrategy strategy);

    const ObjectiveSet& objectives() const { return objs_; }
    const WeightState& initial_weights() const { return ws_; }
    const GammaSigmaStrategy& strategy() const { return strategy_; }

    AugmentedState initial_state(State s) const {
        return AugmentedState::initial(s, objs_.size());
    }

    Real reward(const AugmentedState& aug, Action a) const;
    Real discount(const AugmentedState& aug, Action a) const;

    /// Deterministic-dynamics step (base successor plus factor update).
    AugmentedState step(const AugmentedState& aug, Action a) const;

    /// Factor update shared by step(): next y after taking a at aug.
    std::vector<Real> next_factors(const AugmentedState& aug, Action a) const;

    /// Discounted return of the first `horizon` steps of a trajectory, taken
    /// through the augmented reward and the aggregate discount. Equals
    /// c + sum_i w_i * (truncated return of objective i) by the augmentation
    /// identity Gamma_sigma(t) * y_i(t) = Gamma_i(t); underflow of every y_i
    /// below 1e-300 short-circuits the (worthless) remainder.
    Real discounted_return(const TrajectorySpec& traj, size_t horizon) const;

private:
    ObjectiveSet objs_;
    WeightState ws_;
    GammaSigmaStrategy strategy_;
};

AugmentedMdp build_augmented_mdp(ObjectiveSet objs, WeightState ws,
                                 GammaSigmaStrategy strategy);

/// A reward that pays only when the trigger action follows at least N-1
/// non-trigger steps (the counter saturates at N-1, since only the predicate
/// "counter >= N-1" matters).
struct WindowCounterObjective {
    std::string name;
    int window = 1;        // N
    Action trigger = 0;    // action that pays and resets the counter
    Real reward_value = 0; // paid when counter >= N-1 at a trigger step
    Real discount = 1.0;   // constant discount of the lifted objective
};

/// Objective set over (base state, counter) pairs: the base objectives carry
/// their rewards and discounts over unchanged, and the window objective
/// becomes Markovian. Lifted index = base * N + counter.
class WindowLift {
public:
    WindowLift(const WindowCounterObjective& rule, const ObjectiveSet& base);

    const ObjectiveSet& lifted() const { return lifted_; }
    int window() const { return rule_.window; }

    State lift_state(State base_state, int counter) const {
        return base_state * rule_.window + counter;
    }
    State base_state(State lifted_state) const { return lifted_state / rule_.window; }
    int counter(State lifted_state) const { return lifted_state % rule_.window; }

    /// Counter at t=0: N-1, because "no trigger in the last N-1 steps" is
    /// vacuously true with no history.
    int initial_counter() const { return rule_.window - 1; }
    State initial_state(State base_state) const {
        return lift_state(base_state, initial_counter());
    }

    /// Replays a base-space trajectory through the counter automaton
    /// (deterministic base dynamics required). The cycle is unrolled until
    /// the (base state, counter) orbit closes.
    TrajectorySpec lift_trajectory(const TrajectorySpec& base_traj, State start) const;

private:
    WindowCounterObjective rule_;
    ObjectiveSet lifted_;
};

/// Builds the expanded objective set for a window rule; the window objective
/// is appended after the lifted base objectives.
WindowLift lift_window_counter(const WindowCounterObjective& rule, const ObjectiveSet& base);

} // namespace timepref
