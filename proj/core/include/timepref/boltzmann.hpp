#pragma once

#include "timepref/mdp.hpp"

#include <random>
#include <vector>

namespace timepref {

/// Bradley-Terry choice masses over an action set, with the temperature that
/// links them to utilities via V(a) = k log Omega(a).
///
/// This machinery extends the deterministic results to stochastic policies
/// on practical rather than normative grounds; it feeds no aggregate-value
/// computation elsewhere in the library.
struct ChoiceMass {
    std::vector<Real> mass; // Omega(a) > 0
    Real temperature = 1.0; // k > 0

    void validate() const;
};

/// p(a_i chosen over a_j) = Omega(a_i) / (Omega(a_i) + Omega(a_j)).
Real bt_prob(const ChoiceMass& mass, int i, int j);

/// V(a) = k log Omega(a).
std::vector<Real> utilities_of(const ChoiceMass& mass);

/// p(a) proportional to exp(V(a)/k), computed with max subtraction.
std::vector<Real> softmax_policy(const std::vector<Real>& utilities, Real k);

/// Weighted sum of utility vectors, one weight per objective. Pairs with the
/// y-factor weights from the augmentation machinery.
std::vector<Real> compose_utilities(const std::vector<std::vector<Real>>& utility_sets,
                                    const std::vector<Real>& weights);

/// Draws an action index from a distribution with a caller-owned generator;
/// no hidden global randomness.
int sample_action(const std::vector<Real>& distribution, std::mt19937_64& rng);

} // namespace timepref
