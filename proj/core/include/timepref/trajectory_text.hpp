#pragma once

#include "timepref/trajectory.hpp"

#include <string>
#include <vector>

namespace timepref {

class TrajectoryTextError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed form of the trajectory mini-language: comma-separated action names
/// with optional repeat counts, parenthesized groups, and a single trailing
/// `*` marking where the repeating cycle starts.
///
///   "p,w*"            play once, then work forever
///   "p5,(w9,p)*"      five plays, then the ten-step cycle w..wp forever
///   "(p,w)3"          inline group repeated three times (no cycle)
struct ActionPattern {
    std::vector<Action> prefix;
    std::vector<Action> cycle;
};

/// Throws TrajectoryTextError for unknown action tokens, malformed counts,
/// or a misplaced `*`.
ActionPattern parse_action_pattern(const std::string& text,
                                   const std::vector<std::string>& action_names);

/// Walks the pattern through deterministic dynamics from `start`. The cycle
/// is unrolled until the (state, cycle position) orbit closes, so the
/// returned spec is exact even when one pass of the action cycle does not
/// return to its entry state.
TrajectorySpec realize_action_pattern(const GeneralizedMdp& dynamics, State start,
                                      const ActionPattern& pattern);

/// Renders the actions of a trajectory back into the mini-language,
/// run-length encoded ("p5,(w9,p)*"). Round-trips through
/// parse_action_pattern.
std::string format_action_pattern(const TrajectorySpec& traj,
                                  const std::vector<std::string>& action_names);

} // namespace timepref
