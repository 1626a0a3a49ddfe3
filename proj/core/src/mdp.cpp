#include "timepref/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace timepref {

namespace {
constexpr Real kRowSumTol = 1e-12;
}

bool GeneralizedMdp::deterministic() const {
    for (const auto& row : transition) {
        for (Real p : row) {
            if (p != 0.0 && p != 1.0) return false;
        }
    }
    return true;
}

State GeneralizedMdp::successor(State s, Action a) const {
    const auto& row = transition_at(s, a);
    return static_cast<State>(std::max_element(row.begin(), row.end()) - row.begin());
}

GeneralizedMdp make_constant_discount_mdp(int num_states, int num_actions,
                                          std::vector<std::vector<Real>> transition,
                                          std::vector<Real> reward, Real discount) {
    GeneralizedMdp mdp;
    mdp.num_states = num_states;
    mdp.num_actions = num_actions;
    mdp.transition = std::move(transition);
    mdp.reward = std::move(reward);
    mdp.discount.assign(static_cast<size_t>(num_states) * num_actions, discount);
    return mdp;
}

bool has_non_contracting_cycle(const GeneralizedMdp& mdp) {
    const int n = mdp.num_states;
    // max discount over actions per positive-probability edge
    std::vector<std::vector<Real>> edge(n, std::vector<Real>(n, 0.0));
    for (State s = 0; s < n; ++s) {
        for (Action a = 0; a < mdp.num_actions; ++a) {
            const auto& row = mdp.transition_at(s, a);
            const Real g = mdp.discount_at(s, a);
            for (State t = 0; t < n; ++t) {
                if (row[t] > 0.0) edge[s][t] = std::max(edge[s][t], g);
            }
        }
    }
    // A closed walk with product >= 1 exists iff a simple cycle with
    // product >= 1 exists (composite cycle products factor into simple
    // ones), so walks up to length n suffice.
    std::vector<std::vector<Real>> walk = edge;
    for (int len = 1; len <= n; ++len) {
        for (State s = 0; s < n; ++s) {
            if (walk[s][s] >= 1.0) return true;
        }
        if (len == n) break;
        std::vector<std::vector<Real>> next(n, std::vector<Real>(n, 0.0));
        for (State i = 0; i < n; ++i) {
            for (State k = 0; k < n; ++k) {
                if (walk[i][k] == 0.0) continue;
                for (State j = 0; j < n; ++j) {
                    next[i][j] = std::max(next[i][j], walk[i][k] * edge[k][j]);
                }
            }
        }
        walk = std::move(next);
    }
    return false;
}

ValidationReport validate_mdp(const GeneralizedMdp& mdp) {
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.valid = false;
        report.issues.push_back(std::move(msg));
    };

    if (mdp.num_states <= 0) fail("num_states must be positive");
    if (mdp.num_actions <= 0) fail("num_actions must be positive");
    const size_t pairs = static_cast<size_t>(mdp.num_states) * mdp.num_actions;
    if (mdp.transition.size() != pairs) fail("transition table has wrong shape");
    if (mdp.reward.size() != pairs) fail("reward table has wrong shape");
    if (mdp.discount.size() != pairs) fail("discount table has wrong shape");
    if (!report.valid) return report;

    for (State s = 0; s < mdp.num_states; ++s) {
        for (Action a = 0; a < mdp.num_actions; ++a) {
            const auto& row = mdp.transition_at(s, a);
            if (static_cast<int>(row.size()) != mdp.num_states) {
                fail("transition row (" + std::to_string(s) + "," + std::to_string(a) +
                     ") has wrong length");
                continue;
            }
            Real sum = 0.0;
            bool negative = false;
            for (Real p : row) {
                sum += p;
                if (p < 0.0) negative = true;
            }
            if (negative)
                fail("transition row (" + std::to_string(s) + "," + std::to_string(a) +
                     ") has a negative entry");
            if (std::abs(sum - 1.0) > kRowSumTol)
                fail("transition row (" + std::to_string(s) + "," + std::to_string(a) +
                     ") sums to " + std::to_string(sum) + ", expected 1");
            if (mdp.discount_at(s, a) < 0.0)
                fail("discount (" + std::to_string(s) + "," + std::to_string(a) +
                     ") is negative");
        }
    }

    if (report.valid && has_non_contracting_cycle(mdp)) {
        report.finite_horizon_only = true;
        report.issues.push_back(
            "a cycle has discount product >= 1: only finite-horizon valuation is permitted");
    }
    return report;
}

} // namespace timepref
