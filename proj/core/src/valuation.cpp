#include "timepref/valuation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace timepref {

namespace {

// Row-stochastic-with-discount operator and expected reward under pi.
void policy_operator(const GeneralizedMdp& mdp, const PolicySpec& policy,
                     Eigen::MatrixXd& M, Eigen::VectorXd& b) {
    const int n = mdp.num_states;
    M = Eigen::MatrixXd::Zero(n, n);
    b = Eigen::VectorXd::Zero(n);
    for (State s = 0; s < n; ++s) {
        const auto dist = policy.action_distribution(mdp, s);
        for (Action a = 0; a < mdp.num_actions; ++a) {
            const Real pa = dist[a];
            if (pa == 0.0) continue;
            b(s) += pa * mdp.reward_at(s, a);
            const Real g = mdp.discount_at(s, a);
            const auto& row = mdp.transition_at(s, a);
            for (State t = 0; t < n; ++t) M(s, t) += pa * g * row[t];
        }
    }
}

Real spectral_radius(const Eigen::MatrixXd& M) {
    return M.eigenvalues().cwiseAbs().maxCoeff();
}

Real max_abs_reward(const GeneralizedMdp& mdp) {
    Real r = 0.0;
    for (Real x : mdp.reward) r = std::max(r, std::abs(x));
    return r;
}

} // namespace

std::vector<Real> PolicySpec::action_distribution(const GeneralizedMdp& mdp, State s) const {
    if (const auto* det = std::get_if<StationaryDeterministic>(&node)) {
        std::vector<Real> dist(mdp.num_actions, 0.0);
        dist.at(det->action_of_state.at(s)) = 1.0;
        return dist;
    }
    if (const auto* stoch = std::get_if<StationaryStochastic>(&node)) {
        return stoch->dist_of_state.at(s);
    }
    throw std::invalid_argument("action_distribution requires a stationary policy");
}

Real discounted_spectral_radius(const GeneralizedMdp& mdp, const PolicySpec& policy) {
    Eigen::MatrixXd M;
    Eigen::VectorXd b;
    policy_operator(mdp, policy, M, b);
    return spectral_radius(M);
}

std::vector<Real> evaluate_stationary(const GeneralizedMdp& mdp, const PolicySpec& policy) {
    if (!policy.stationary())
        throw std::invalid_argument("evaluate_stationary requires a stationary policy");
    const int n = mdp.num_states;
    Eigen::MatrixXd M;
    Eigen::VectorXd b;
    policy_operator(mdp, policy, M, b);

    const Real rho = spectral_radius(M);
    if (rho >= 1.0)
        throw DivergenceError("discounted operator has spectral radius " +
                              std::to_string(rho) + " >= 1");

    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) - M;
    Eigen::VectorXd v = A.partialPivLu().solve(b);
    const Real residual = (A * v - b).norm();
    if (!v.allFinite() || residual > 1e-9 * (1.0 + b.norm()))
        throw DivergenceError("fixed-point system is singular or ill-conditioned");
    return std::vector<Real>(v.data(), v.data() + n);
}

Real evaluate_prospect(const GeneralizedMdp& mdp, const Prospect& prospect, Real tol) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    if (static_cast<int>(prospect.start.size()) != mdp.num_states)
        throw std::invalid_argument("start distribution has wrong length");
    {
        Real sum = 0.0;
        for (Real p : prospect.start) sum += p;
        if (std::abs(sum - 1.0) > 1e-9)
            throw std::invalid_argument("start distribution does not sum to 1");
    }

    const PolicySpec& pol = prospect.policy;
    if (pol.stationary()) {
        const auto values = evaluate_stationary(mdp, pol);
        Real v = 0.0;
        for (State s = 0; s < mdp.num_states; ++s) v += prospect.start[s] * values[s];
        return v;
    }
    if (const auto* mix = std::get_if<Mixture>(&pol.node)) {
        Real total_p = 0.0;
        Real v = 0.0;
        for (const auto& comp : mix->components) {
            total_p += comp.probability;
            v += comp.probability *
                 evaluate_prospect(mdp, Prospect{prospect.start, *comp.policy}, tol);
        }
        if (std::abs(total_p - 1.0) > 1e-9)
            throw std::invalid_argument("mixture probabilities do not sum to 1");
        return v;
    }
    const auto* pt = std::get_if<PrefixTail>(&pol.node);
    if (pt == nullptr) throw std::invalid_argument("unsupported policy variant");

    // phi(s) = E[Gamma(t) 1{s_t = s}]: discount-weighted state occupancy.
    // Propagating it through the prefix gives the exact expectation over all
    // stochastic branches without enumerating paths.
    std::vector<Real> phi = prospect.start;
    Real value = 0.0;
    for (Action a : pt->actions) {
        if (a < 0 || a >= mdp.num_actions) throw std::invalid_argument("prefix action out of range");
        std::vector<Real> next(mdp.num_states, 0.0);
        for (State s = 0; s < mdp.num_states; ++s) {
            if (phi[s] == 0.0) continue;
            value += phi[s] * mdp.reward_at(s, a);
            const Real g = phi[s] * mdp.discount_at(s, a);
            const auto& row = mdp.transition_at(s, a);
            for (State t = 0; t < mdp.num_states; ++t) next[t] += g * row[t];
        }
        phi = std::move(next);
    }

    Real weight = 0.0;
    for (Real w : phi) weight += w;
    if (weight == 0.0) return value; // discount hit zero; the tail is worthless

    const PolicySpec& tail = *pt->tail;
    if (tail.stationary()) {
        const auto tail_values = evaluate_stationary(mdp, tail); // throws if divergent
        for (State s = 0; s < mdp.num_states; ++s) value += phi[s] * tail_values[s];
        return value;
    }
    if (const auto* mix = std::get_if<Mixture>(&tail.node)) {
        // residual-bound guard: a non-contracting component means no finite
        // horizon reaches tol
        const Real rmax = max_abs_reward(mdp);
        for (const auto& comp : mix->components) {
            if (!comp.policy->stationary())
                throw std::invalid_argument("prefix-tail tail must be stationary or mixture");
            if (rmax > 0.0 && discounted_spectral_radius(mdp, *comp.policy) >= 1.0)
                throw DivergenceError("tail component does not contract: no finite horizon "
                                      "achieves the requested tolerance");
            const auto tail_values = evaluate_stationary(mdp, *comp.policy);
            for (State s = 0; s < mdp.num_states; ++s)
                value += comp.probability * phi[s] * tail_values[s];
        }
        return value;
    }
    throw std::invalid_argument("prefix-tail tail must be stationary or mixture");
}

} // namespace timepref
