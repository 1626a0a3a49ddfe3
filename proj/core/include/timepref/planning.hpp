#pragma once

#include "timepref/aggregation.hpp"
#include "timepref/policy.hpp"
#include "timepref/trajectory.hpp"

#include <optional>
#include <vector>

namespace timepref {

class PlannerCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Open-loop tail executed after a planned prefix: either a stationary
/// deterministic policy (one action per state) or a pure action cycle.
struct TailCandidate {
    enum class Kind { Stationary, Cycle };
    Kind kind = Kind::Stationary;
    std::vector<Action> actions; // per state, or the cycle body
};

struct PlanConfig {
    int horizon = 8;
    int max_cycle_period = 12;
    long long enumeration_cap = 1'000'000; // |A|^|S| cap for stationary enumeration
    long long node_budget = 20'000'000;    // search nodes per plan call
    Real tie_tolerance = 1e-9;             // values this close count as tied
    // default tail set: all deterministic stationary policies plus all
    // primitive action cycles of period <= max_cycle_period
    std::optional<std::vector<TailCandidate>> explicit_tails;
};

struct PlanResult {
    TrajectorySpec trajectory;
    Real value = 0.0;
    std::vector<Action> prefix_actions;
    int tail_index = -1;
};

/// Complete lexicographic enumeration of deterministic stationary policies.
/// Throws PlannerCapError when |A|^|S| exceeds the cap.
std::vector<PolicySpec> enumerate_stationary(const ObjectiveSet& objs,
                                             long long cap = 1'000'000);

struct BestStationaryResult {
    PolicySpec policy;
    std::vector<Action> actions;
    Real value = 0.0;
};

/// Maximizes c + sum_i w_i V_i(start, pi) over deterministic stationary
/// policies; ties broken by lexicographic action vector (enumeration order).
/// Policies whose discounted operator does not contract are skipped.
BestStationaryResult best_stationary(const ObjectiveSet& objs, const WeightState& ws,
                                     State start, long long cap = 1'000'000);

/// Exhaustive prefix+tail search over deterministic dynamics, exact values,
/// branch-and-bound pruned. Candidates are every action prefix of length
/// <= horizon crossed with every tail; with consistent=true they are scored
/// by c + sum_i w_i V_i(trajectory) (each objective discounted by its own
/// gamma_i). Ties within tie_tolerance go to the lexicographically smallest
/// realized action sequence, then the shorter prefix.
///
/// With consistent=false the score is the naive common-discount aggregate:
/// rewards summed with the current weights and discounted by the product of
/// gamma_sigma factors from `naive_strategy`.
class Planner {
public:
    Planner(const ObjectiveSet& objs, PlanConfig cfg, bool consistent = true,
            GammaSigmaStrategy naive_strategy = GammaSigmaStrategy::max_individual(),
            const WeightState* naive_weights = nullptr);

    PlanResult plan(const WeightState& ws, State start) const;

    int num_tails() const { return static_cast<int>(tails_.size()); }
    const TailCandidate& tail(int i) const { return tails_.at(i); }
    const PlanConfig& config() const { return cfg_; }

private:
    struct Realization {
        std::vector<Step> pre;
        std::vector<Step> cyc;
        const Step& at(size_t t) const {
            return t < pre.size() ? pre[t] : cyc[(t - pre.size()) % cyc.size()];
        }
    };

    struct Search; // per-call state

    Action tail_action_at(const Realization& r, size_t t) const { return r.at(t).action; }
    const Realization& realization(State s, int tail) const {
        return realizations_[static_cast<size_t>(s) * tails_.size() + tail];
    }

    const ObjectiveSet& objs_;
    PlanConfig cfg_;
    bool consistent_;
    int num_objectives_;

    // per-objective discount tables used for scoring (own gamma_i when
    // consistent; the gamma_sigma table for every objective when naive)
    std::vector<std::vector<Real>> score_discount_; // [i][s*A+a]

    std::vector<TailCandidate> tails_;
    std::vector<Realization> realizations_; // [s * T + t]
    std::vector<char> tail_valid_;          // [s * T + t]
    std::vector<Real> tail_value_;          // [(s * T + t) * I + i]
    std::vector<int> tail_rank_;            // [s * T + t]: lex rank of realization from s
    std::vector<Real> value_hi_, value_lo_; // [i * S + s]: per-objective value bounds

    friend struct Search;
};

PlanResult plan_prefix_tail(const ObjectiveSet& objs, const WeightState& ws, State start,
                            const PlanConfig& cfg, bool consistent = true,
                            GammaSigmaStrategy naive_strategy =
                                GammaSigmaStrategy::max_individual());

/// Depth-limited expectimax for stochastic dynamics; leaves are closed with
/// the best tail value. Returns the root of an action tree indexed by
/// realized next states.
struct PolicyTreeNode {
    Action action = -1;
    Real value = 0.0;
    std::vector<std::pair<State, PolicyTreeNode>> children;
};

PolicyTreeNode plan_expectimax(const ObjectiveSet& objs, const WeightState& ws, State start,
                               const PlanConfig& cfg);

struct ReplanResult {
    TrajectorySpec trajectory;       // realized steps, periodic suffix folded
    std::vector<Step> realized;      // the raw executed steps
    Real realized_value = 0.0;       // aggregate value of `trajectory` under the initial weights
};

/// Plans, executes the first action, repeats. With propagate=false the
/// weights reset to the initial WeightState before every plan (the agent
/// that keeps re-deciding from scratch); with propagate=true they advance by
/// propagate_weights. Requires deterministic dynamics.
ReplanResult myopic_replan_simulate(const ObjectiveSet& objs, const WeightState& ws,
                                    State start, int steps, const PlanConfig& cfg,
                                    bool propagate);

/// Folds a realized step sequence into prefix + repeating cycle when the
/// suffix is periodic with period <= max_period (both states and actions
/// must repeat over a window of at least two periods). The fold treats the
/// recurring suffix as continuing forever.
TrajectorySpec detect_eventually_periodic(const std::vector<Step>& realized, int max_period);

/// Unique stationary distribution of the chain induced by a stationary
/// policy, by linear solve. Requires the positive-probability graph under
/// the policy to be irreducible.
std::vector<Real> stationary_distribution(const ObjectiveSet& objs, const PolicySpec& policy);

/// J(pi) = sum_s d_pi(s) * (c + sum_i w_i V_i(s, pi)).
Real avg_objective(const ObjectiveSet& objs, const WeightState& ws, const PolicySpec& policy);

} // namespace timepref
