#include "timepref/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace timepref {

ObjectiveSet::ObjectiveSet(std::vector<Objective> objectives)
    : objectives_(std::move(objectives)) {
    if (objectives_.empty()) throw std::invalid_argument("objective set is empty");
    const GeneralizedMdp& ref = objectives_.front().mdp;
    for (const Objective& o : objectives_) {
        if (o.mdp.num_states != ref.num_states || o.mdp.num_actions != ref.num_actions)
            throw std::invalid_argument("objective '" + o.name +
                                        "' does not share the state/action sets");
        if (o.mdp.transition != ref.transition)
            throw std::invalid_argument("objective '" + o.name +
                                        "' does not share the transition kernel");
    }
}

int ObjectiveSet::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (objectives_[i].name == name) return i;
    return -1;
}

WeightState WeightState::initial(std::vector<Real> weights, Real constant) {
    if (weights.empty()) throw std::invalid_argument("weight vector is empty");
    bool any_nonzero = false;
    for (Real w : weights) {
        if (!std::isfinite(w)) throw std::invalid_argument("weights must be finite");
        if (w != 0.0) any_nonzero = true;
    }
    if (!any_nonzero)
        throw std::invalid_argument("at least one weight must be nonzero");
    WeightState ws;
    ws.factors.assign(weights.size(), 1.0);
    ws.weights = std::move(weights);
    ws.constant = constant;
    return ws;
}

GammaSigmaStrategy GammaSigmaStrategy::constant(Real v) {
    if (v <= 0.0) throw std::invalid_argument("constant gamma_sigma must be positive");
    return {Kind::Constant, v};
}

std::string GammaSigmaStrategy::label() const {
    switch (kind) {
        case Kind::MaxIndividual: return "max";
        case Kind::Constant: return "const:" + std::to_string(value);
        case Kind::WeightNormalizing: return "normalize";
    }
    return "?";
}

Real harsanyi_value(const WeightState& ws, const std::vector<Real>& values) {
    if (values.size() != ws.weights.size())
        throw std::invalid_argument("value vector length does not match weights");
    Real v = ws.constant;
    for (size_t i = 0; i < values.size(); ++i) v += ws.weights[i] * values[i];
    return v;
}

WeightState propagate_weights(const WeightState& ws, State s, Action a,
                              const ObjectiveSet& objs) {
    if (ws.size() != objs.size())
        throw std::invalid_argument("weight state does not match objective set");
    WeightState next = ws;
    for (int i = 0; i < objs.size(); ++i)
        next.weights[i] = ws.weights[i] * objs.objective(i).mdp.discount_at(s, a);
    return next;
}

Real gamma_sigma(const GammaSigmaStrategy& strategy, const WeightState& ws, State s,
                 Action a, const ObjectiveSet& objs) {
    switch (strategy.kind) {
        case GammaSigmaStrategy::Kind::MaxIndividual: {
            Real g = 0.0;
            for (const Objective& o : objs.objectives())
                g = std::max(g, o.mdp.discount_at(s, a));
            return g;
        }
        case GammaSigmaStrategy::Kind::Constant:
            return strategy.value;
        case GammaSigmaStrategy::Kind::WeightNormalizing: {
            Real wsum = 0.0;
            Real gsum = 0.0;
            for (int i = 0; i < objs.size(); ++i) {
                wsum += ws.weights[i];
                gsum += ws.weights[i] * objs.objective(i).mdp.discount_at(s, a);
            }
            if (wsum == 0.0)
                throw std::invalid_argument(
                    "weight-normalizing gamma_sigma undefined: weights sum to zero");
            return gsum / wsum;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<Real> objective_returns(const ObjectiveSet& objs, const TrajectorySpec& traj) {
    std::vector<Real> returns;
    returns.reserve(objs.size());
    for (const Objective& o : objs.objectives())
        returns.push_back(return_of_trajectory(o.mdp, traj));
    return returns;
}

Real aggregate_trajectory_value(const ObjectiveSet& objs, const WeightState& ws,
                                const TrajectorySpec& traj) {
    return harsanyi_value(ws, objective_returns(objs, traj));
}

} // namespace timepref
