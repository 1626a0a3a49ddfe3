#pragma once

#include "timepref/mdp.hpp"
#include "timepref/policy.hpp"

#include <vector>

namespace timepref {

inline constexpr Real kDefaultValuationTol = 1e-9;

/// Spectral radius of the discounted transition operator under a stationary
/// policy: M(s,s') = sum_a pi(a|s) gamma(s,a) T(s,a,s').
Real discounted_spectral_radius(const GeneralizedMdp& mdp, const PolicySpec& policy);

/// Solves the linear fixed point
///   V(s) = sum_a pi(a|s) [ r(s,a) + gamma(s,a) sum_{s'} T(s,a,s') V(s') ]
/// for a stationary policy.
///
/// Throws DivergenceError when the discounted operator has spectral radius
/// >= 1 or the system is singular; std::invalid_argument for non-stationary
/// policies.
std::vector<Real> evaluate_stationary(const GeneralizedMdp& mdp, const PolicySpec& policy);

/// Expected value of a prospect: expectation over the start lottery, mixtures
/// by linearity, prefix-tail policies by exact discount-weighted occupancy
/// propagation through the prefix plus a linear-solve tail.
///
/// tol must be positive; it gates the divergence guard (a non-contracting
/// tail means no finite horizon can meet the residual bound r_max * Gamma /
/// (1 - gamma_max) < tol).
Real evaluate_prospect(const GeneralizedMdp& mdp, const Prospect& prospect,
                       Real tol = kDefaultValuationTol);

} // namespace timepref
