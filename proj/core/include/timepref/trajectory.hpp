#pragma once

#include "timepref/mdp.hpp"

#include <optional>
#include <vector>

namespace timepref {

struct Step {
    State state = 0;
    Action action = 0;
    friend bool operator==(const Step&, const Step&) = default;
};

/// An eventually periodic trajectory: a finite prefix followed by a cycle
/// repeated forever. An empty cycle denotes a finite trajectory.
struct TrajectorySpec {
    std::vector<Step> prefix;
    std::vector<Step> cycle;

    bool empty() const { return prefix.empty() && cycle.empty(); }
    bool finite() const { return cycle.empty(); }

    /// Step at time t (cycle unrolled). Precondition: t < prefix length for
    /// finite trajectories.
    const Step& at(size_t t) const {
        if (t < prefix.size()) return prefix[t];
        return cycle[(t - prefix.size()) % cycle.size()];
    }

    friend bool operator==(const TrajectorySpec&, const TrajectorySpec&) = default;
};

/// Checks that consecutive steps are reachable under the dynamics; when the
/// dynamics are deterministic every consecutive pair must match the unique
/// successor. Returns an explanation for the first violation, if any.
std::optional<std::string> check_trajectory(const GeneralizedMdp& mdp,
                                            const TrajectorySpec& traj);

/// Exact discounted return of an eventually periodic trajectory. The prefix
/// is accumulated directly; the cycle part is closed via a geometric series,
/// which requires the cycle discount product to be < 1.
///
/// Throws DivergenceError when the cycle does not contract.
Real return_of_trajectory(const GeneralizedMdp& mdp, const TrajectorySpec& traj);

/// Discounted sum of the first `horizon` steps only.
Real truncated_return(const GeneralizedMdp& mdp, const TrajectorySpec& traj, size_t horizon);

} // namespace timepref
