#include "timepref/trajectory.hpp"

#include <cmath>
#include <string>

namespace timepref {

namespace {

std::optional<std::string> check_pair(const GeneralizedMdp& mdp, const Step& from,
                                      const Step& to, bool deterministic, size_t t) {
    if (!mdp.in_range(from.state, from.action))
        return "step " + std::to_string(t) + " is out of range";
    const auto& row = mdp.transition_at(from.state, from.action);
    if (row[to.state] <= 0.0)
        return "step " + std::to_string(t + 1) + " unreachable: T(" +
               std::to_string(from.state) + "," + std::to_string(from.action) + " -> " +
               std::to_string(to.state) + ") = 0";
    if (deterministic && mdp.successor(from.state, from.action) != to.state)
        return "step " + std::to_string(t + 1) +
               " inconsistent with deterministic dynamics";
    return std::nullopt;
}

} // namespace

std::optional<std::string> check_trajectory(const GeneralizedMdp& mdp,
                                            const TrajectorySpec& traj) {
    if (traj.empty()) return "trajectory is empty";
    const bool det = mdp.deterministic();
    const size_t n = traj.prefix.size();
    const size_t m = traj.cycle.size();
    for (size_t t = 0; t + 1 < n; ++t) {
        if (auto err = check_pair(mdp, traj.prefix[t], traj.prefix[t + 1], det, t)) return err;
    }
    if (m > 0) {
        if (n > 0) {
            if (auto err = check_pair(mdp, traj.prefix[n - 1], traj.cycle[0], det, n - 1))
                return err;
        }
        for (size_t t = 0; t < m; ++t) {
            if (auto err = check_pair(mdp, traj.cycle[t], traj.cycle[(t + 1) % m], det, n + t))
                return err;
        }
    } else if (n > 0) {
        // final step of a finite trajectory only needs to be in range
        const Step& last = traj.prefix[n - 1];
        if (!mdp.in_range(last.state, last.action))
            return "step " + std::to_string(n - 1) + " is out of range";
    }
    return std::nullopt;
}

Real return_of_trajectory(const GeneralizedMdp& mdp, const TrajectorySpec& traj) {
    Real value = 0.0;
    Real gamma_acc = 1.0;
    for (const Step& st : traj.prefix) {
        value += gamma_acc * mdp.reward_at(st.state, st.action);
        gamma_acc *= mdp.discount_at(st.state, st.action);
    }
    if (traj.cycle.empty()) return value;

    Real cycle_value = 0.0;
    Real cycle_gamma = 1.0;
    for (const Step& st : traj.cycle) {
        cycle_value += cycle_gamma * mdp.reward_at(st.state, st.action);
        cycle_gamma *= mdp.discount_at(st.state, st.action);
    }
    if (cycle_gamma >= 1.0)
        throw DivergenceError("cycle discount product " + std::to_string(cycle_gamma) +
                              " >= 1: trajectory return diverges");
    return value + gamma_acc * cycle_value / (1.0 - cycle_gamma);
}

Real truncated_return(const GeneralizedMdp& mdp, const TrajectorySpec& traj, size_t horizon) {
    const size_t total = traj.finite() ? std::min(horizon, traj.prefix.size()) : horizon;
    Real value = 0.0;
    Real gamma_acc = 1.0;
    for (size_t t = 0; t < total; ++t) {
        const Step& st = traj.at(t);
        value += gamma_acc * mdp.reward_at(st.state, st.action);
        gamma_acc *= mdp.discount_at(st.state, st.action);
    }
    return value;
}

} // namespace timepref
