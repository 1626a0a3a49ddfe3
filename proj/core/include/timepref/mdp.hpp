#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace timepref {

using Real = double;
using State = int;
using Action = int;

/// Raised when an infinite-horizon valuation is requested but the discounted
/// dynamics do not contract (cycle discount product >= 1, spectral radius >= 1,
/// or a singular fixed-point system).
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A finite MDP whose discount is a function of the state-action pair rather
/// than a single constant. Rewards and discounts are stored row-major as
/// [state * num_actions + action]; transition rows are probability vectors
/// over states.
struct GeneralizedMdp {
    int num_states = 0;
    int num_actions = 0;
    std::vector<std::vector<Real>> transition; // [s*A+a] -> distribution over states
    std::vector<Real> reward;                  // [s*A+a]
    std::vector<Real> discount;                // [s*A+a]

    int pair_index(State s, Action a) const { return s * num_actions + a; }

    Real reward_at(State s, Action a) const { return reward[pair_index(s, a)]; }
    Real discount_at(State s, Action a) const { return discount[pair_index(s, a)]; }
    const std::vector<Real>& transition_at(State s, Action a) const {
        return transition[pair_index(s, a)];
    }

    bool in_range(State s, Action a) const {
        return s >= 0 && s < num_states && a >= 0 && a < num_actions;
    }

    /// True when every transition row is a point mass.
    bool deterministic() const;

    /// The unique successor for deterministic rows; the argmax state otherwise.
    State successor(State s, Action a) const;
};

/// Convenience builder for an MDP with constant discount everywhere.
GeneralizedMdp make_constant_discount_mdp(int num_states, int num_actions,
                                          std::vector<std::vector<Real>> transition,
                                          std::vector<Real> reward, Real discount);

struct ValidationReport {
    bool valid = true;                 // structural invariants hold
    bool finite_horizon_only = false;  // some reachable cycle has discount product >= 1
    std::vector<std::string> issues;   // human-readable violations
};

/// Report-only check of the structural invariants: transition rows sum to 1
/// within 1e-12, discounts are nonnegative, shapes are consistent. Instances
/// whose state-action graph contains a cycle with discount product >= 1 are
/// flagged finite-horizon-only rather than rejected.
ValidationReport validate_mdp(const GeneralizedMdp& mdp);

/// True when some cycle of the positive-probability graph has a discount
/// product >= 1 (checked over closed walks up to length num_states).
bool has_non_contracting_cycle(const GeneralizedMdp& mdp);

} // namespace timepref
