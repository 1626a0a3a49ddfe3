#pragma once

#include "timepref/mdp.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace timepref {

struct PolicySpec;

/// One action per state.
struct StationaryDeterministic {
    std::vector<Action> action_of_state;
};

/// One action distribution per state.
struct StationaryStochastic {
    std::vector<std::vector<Real>> dist_of_state;
};

/// Lottery over whole policies (an atom is followed forever once drawn).
struct Mixture {
    struct Component {
        Real probability;
        std::shared_ptr<const PolicySpec> policy;
    };
    std::vector<Component> components;
};

/// Fixed open-loop action sequence, then a tail policy.
struct PrefixTail {
    std::vector<Action> actions;
    std::shared_ptr<const PolicySpec> tail; // stationary or mixture
};

struct PolicySpec {
    std::variant<StationaryDeterministic, StationaryStochastic, Mixture, PrefixTail> node;

    bool stationary() const {
        return std::holds_alternative<StationaryDeterministic>(node) ||
               std::holds_alternative<StationaryStochastic>(node);
    }

    static PolicySpec constant(int num_states, Action a) {
        return PolicySpec{StationaryDeterministic{std::vector<Action>(num_states, a)}};
    }
    static PolicySpec deterministic(std::vector<Action> actions) {
        return PolicySpec{StationaryDeterministic{std::move(actions)}};
    }
    static PolicySpec stochastic(std::vector<std::vector<Real>> dists) {
        return PolicySpec{StationaryStochastic{std::move(dists)}};
    }
    static PolicySpec mixture(std::vector<std::pair<Real, PolicySpec>> parts) {
        Mixture mix;
        for (auto& [p, pol] : parts)
            mix.components.push_back({p, std::make_shared<const PolicySpec>(std::move(pol))});
        return PolicySpec{std::move(mix)};
    }
    static PolicySpec prefix_tail(std::vector<Action> actions, PolicySpec tail) {
        return PolicySpec{
            PrefixTail{std::move(actions), std::make_shared<const PolicySpec>(std::move(tail))}};
    }

    /// Action distribution at a state; defined for stationary variants only.
    std::vector<Real> action_distribution(const GeneralizedMdp& mdp, State s) const;
};

/// A start state lottery paired with a policy.
struct Prospect {
    std::vector<Real> start; // distribution over states
    PolicySpec policy;

    static Prospect at(State s, int num_states, PolicySpec policy) {
        std::vector<Real> dist(num_states, 0.0);
        dist[s] = 1.0;
        return Prospect{std::move(dist), std::move(policy)};
    }
};

} // namespace timepref
