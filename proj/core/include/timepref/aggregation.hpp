#pragma once

#include "timepref/mdp.hpp"
#include "timepref/trajectory.hpp"

#include <string>
#include <vector>

namespace timepref {

/// One preference in an aggregation: its own reward and discount over the
/// shared state/action space and transition kernel.
struct Objective {
    std::string name;
    GeneralizedMdp mdp;
};

/// Objectives sharing identical state/action index sets and transition
/// kernel. Construction validates the sharing invariant.
class ObjectiveSet {
public:
    ObjectiveSet() = default;
    explicit ObjectiveSet(std::vector<Objective> objectives);

    int size() const { return static_cast<int>(objectives_.size()); }
    const Objective& objective(int i) const { return objectives_.at(i); }
    const std::vector<Objective>& objectives() const { return objectives_; }

    const GeneralizedMdp& dynamics() const { return objectives_.at(0).mdp; }
    int num_states() const { return dynamics().num_states; }
    int num_actions() const { return dynamics().num_actions; }

    int index_of(const std::string& name) const; // -1 when absent

private:
    std::vector<Objective> objectives_;
};

/// Aggregation weights w_i, accumulated factors y_i, and the Harsanyi
/// constant carried along a history. Factors start at 1.
struct WeightState {
    std::vector<Real> weights;
    std::vector<Real> factors;
    Real constant = 0.0;
    int step_index = 0;

    static WeightState initial(std::vector<Real> weights, Real constant = 0.0);

    int size() const { return static_cast<int>(weights.size()); }
};

/// How the aggregate discount is chosen. Dynamically consistent aggregation
/// fixes only the weight ratios, not the common scale per step, so the
/// choice is free and gets recorded with results.
struct GammaSigmaStrategy {
    enum class Kind { MaxIndividual, Constant, WeightNormalizing };
    Kind kind = Kind::MaxIndividual;
    Real value = 1.0; // Constant only

    static GammaSigmaStrategy max_individual() { return {Kind::MaxIndividual, 0.0}; }
    static GammaSigmaStrategy constant(Real v);
    static GammaSigmaStrategy weight_normalizing() { return {Kind::WeightNormalizing, 0.0}; }

    std::string label() const;
};

/// c + sum_i w_i v_i.
///
/// The weighted sum is the only aggregation rule offered: nonlinear families
/// (power or log transforms applied per objective) preserve orderings but
/// break the expectation-over-lotteries reading of the aggregate, so they
/// are out of scope here.
Real harsanyi_value(const WeightState& ws, const std::vector<Real>& values);

/// One step of dynamically consistent weight propagation:
/// w_i' = w_i * gamma_i(s,a). Factors, constant and step index are untouched.
WeightState propagate_weights(const WeightState& ws, State s, Action a,
                              const ObjectiveSet& objs);

/// Aggregate discount at (s,a) under the strategy:
///   max-individual     -> max_i gamma_i(s,a)
///   constant(v)        -> v
///   weight-normalizing -> sum_i w_i gamma_i(s,a) / sum_i w_i
Real gamma_sigma(const GammaSigmaStrategy& strategy, const WeightState& ws, State s,
                 Action a, const ObjectiveSet& objs);

/// c + sum_i w_i * return_of_trajectory(objective_i, traj).
Real aggregate_trajectory_value(const ObjectiveSet& objs, const WeightState& ws,
                                const TrajectorySpec& traj);

/// Per-objective returns of a trajectory, in objective order.
std::vector<Real> objective_returns(const ObjectiveSet& objs, const TrajectorySpec& traj);

} // namespace timepref
