#include "timepref/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace timepref {

std::vector<Real> y_update(const std::vector<Real>& y, State s, Action a,
                           const ObjectiveSet& objs, const GammaSigmaStrategy& strategy,
                           const WeightState& ws) {
    const Real gs = gamma_sigma(strategy, ws, s, a, objs);
    if (gs <= 0.0)
        throw std::invalid_argument("aggregate discount is zero at the given pair");
    std::vector<Real> next(y.size());
    for (size_t i = 0; i < y.size(); ++i)
        next[i] = y[i] * objs.objective(static_cast<int>(i)).mdp.discount_at(s, a) / gs;
    return next;
}

AugmentedMdp::AugmentedMdp(ObjectiveSet objs, WeightState ws, GammaSigmaStrategy strategy)
    : objs_(std::move(objs)), ws_(std::move(ws)), strategy_(strategy) {
    if (ws_.size() != objs_.size())
        throw std::invalid_argument("weight state does not match objective set");
}

Real AugmentedMdp::reward(const AugmentedState& aug, Action a) const {
    Real r = 0.0;
    for (int i = 0; i < objs_.size(); ++i)
        r += aug.y[i] * ws_.weights[i] * objs_.objective(i).mdp.reward_at(aug.base, a);
    return r;
}

Real AugmentedMdp::discount(const AugmentedState& aug, Action a) const {
    return gamma_sigma(strategy_, ws_, aug.base, a, objs_);
}

std::vector<Real> AugmentedMdp::next_factors(const AugmentedState& aug, Action a) const {
    return y_update(aug.y, aug.base, a, objs_, strategy_, ws_);
}

AugmentedState AugmentedMdp::step(const AugmentedState& aug, Action a) const {
    return AugmentedState{objs_.dynamics().successor(aug.base, a), next_factors(aug, a)};
}

Real AugmentedMdp::discounted_return(const TrajectorySpec& traj, size_t horizon) const {
    const size_t total = traj.finite() ? std::min(horizon, traj.prefix.size()) : horizon;
    AugmentedState aug = initial_state(total > 0 ? traj.at(0).state : 0);
    Real gamma_acc = 1.0;
    Real value = ws_.constant;
    for (size_t t = 0; t < total; ++t) {
        const Step& st = traj.at(t);
        aug.base = st.state;
        value += gamma_acc * reward(aug, st.action);
        gamma_acc *= discount(aug, st.action);
        bool all_tiny = true;
        std::vector<Real> next = next_factors(aug, st.action);
        for (Real yi : next)
            if (std::abs(yi) >= 1e-300) all_tiny = false;
        if (all_tiny && gamma_acc <= 1.0) return value; // geometric decay: tail is lossless zero
        aug.y = std::move(next);
    }
    return value;
}

AugmentedMdp build_augmented_mdp(ObjectiveSet objs, WeightState ws,
                                 GammaSigmaStrategy strategy) {
    return AugmentedMdp(std::move(objs), std::move(ws), strategy);
}

namespace {

GeneralizedMdp lift_dynamics(const GeneralizedMdp& base, int window, Action trigger) {
    GeneralizedMdp lifted;
    lifted.num_states = base.num_states * window;
    lifted.num_actions = base.num_actions;
    const size_t pairs = static_cast<size_t>(lifted.num_states) * lifted.num_actions;
    lifted.transition.assign(pairs, {});
    lifted.reward.assign(pairs, 0.0);
    lifted.discount.assign(pairs, 0.0);
    for (State sb = 0; sb < base.num_states; ++sb) {
        for (int c = 0; c < window; ++c) {
            const State s = sb * window + c;
            for (Action a = 0; a < base.num_actions; ++a) {
                const int next_c = (a == trigger) ? 0 : std::min(c + 1, window - 1);
                std::vector<Real> row(lifted.num_states, 0.0);
                const auto& base_row = base.transition_at(sb, a);
                for (State tb = 0; tb < base.num_states; ++tb)
                    if (base_row[tb] > 0.0) row[tb * window + next_c] = base_row[tb];
                lifted.transition[lifted.pair_index(s, a)] = std::move(row);
            }
        }
    }
    return lifted;
}

} // namespace

WindowLift::WindowLift(const WindowCounterObjective& rule, const ObjectiveSet& base)
    : rule_(rule) {
    if (rule.window < 1) throw std::invalid_argument("window must be >= 1");
    if (rule.trigger < 0 || rule.trigger >= base.num_actions())
        throw std::invalid_argument("trigger action out of range");

    const GeneralizedMdp skeleton =
        lift_dynamics(base.dynamics(), rule.window, rule.trigger);

    std::vector<Objective> lifted;
    for (const Objective& o : base.objectives()) {
        GeneralizedMdp m = skeleton;
        for (State sb = 0; sb < base.num_states(); ++sb) {
            for (int c = 0; c < rule.window; ++c) {
                const State s = sb * rule.window + c;
                for (Action a = 0; a < base.num_actions(); ++a) {
                    m.reward[m.pair_index(s, a)] = o.mdp.reward_at(sb, a);
                    m.discount[m.pair_index(s, a)] = o.mdp.discount_at(sb, a);
                }
            }
        }
        lifted.push_back({o.name, std::move(m)});
    }

    GeneralizedMdp wm = skeleton;
    for (State sb = 0; sb < base.num_states(); ++sb) {
        for (int c = 0; c < rule.window; ++c) {
            const State s = sb * rule.window + c;
            for (Action a = 0; a < base.num_actions(); ++a) {
                const bool pays = (a == rule.trigger) && (c >= rule.window - 1);
                wm.reward[wm.pair_index(s, a)] = pays ? rule.reward_value : 0.0;
                wm.discount[wm.pair_index(s, a)] = rule.discount;
            }
        }
    }
    lifted.push_back({rule.name, std::move(wm)});
    lifted_ = ObjectiveSet(std::move(lifted));
}

TrajectorySpec WindowLift::lift_trajectory(const TrajectorySpec& base_traj,
                                           State start) const {
    TrajectorySpec out;
    int c = initial_counter();
    State s = start;
    auto push = [&](Action a, std::vector<Step>& dst) {
        const State lifted_s = lift_state(s, c);
        dst.push_back({lifted_s, a});
        const State next = lifted_.dynamics().successor(lifted_s, a);
        s = base_state(next);
        c = counter(next);
    };
    for (const Step& st : base_traj.prefix) {
        if (st.state != s)
            throw std::invalid_argument("base trajectory inconsistent with dynamics");
        push(st.action, out.prefix);
    }
    if (base_traj.cycle.empty()) return out;

    // unroll the action cycle until (base state, counter, cycle position)
    // repeats, then split the orbit into lifted prefix + lifted cycle
    struct Key {
        State s;
        int c;
        size_t pos;
        bool operator==(const Key&) const = default;
    };
    std::vector<Key> seen;
    std::vector<Step> unrolled;
    size_t pos = 0;
    while (true) {
        Key key{s, c, pos};
        auto it = std::find(seen.begin(), seen.end(), key);
        if (it != seen.end()) {
            const size_t split = static_cast<size_t>(it - seen.begin());
            out.prefix.insert(out.prefix.end(), unrolled.begin(),
                              unrolled.begin() + static_cast<long>(split));
            out.cycle.assign(unrolled.begin() + static_cast<long>(split), unrolled.end());
            return out;
        }
        seen.push_back(key);
        const Step& st = base_traj.cycle[pos];
        if (st.state != s)
            throw std::invalid_argument("base trajectory inconsistent with dynamics");
        push(st.action, unrolled);
        pos = (pos + 1) % base_traj.cycle.size();
    }
}

WindowLift lift_window_counter(const WindowCounterObjective& rule, const ObjectiveSet& base) {
    return WindowLift(rule, base);
}

} // namespace timepref
