#pragma once

#include "timepref/mdp.hpp"

#include <string>
#include <vector>

namespace timepref {

/// Numeric instantiation of the two-objective conflict pattern: three
/// policies valued per objective with V_i(Lambda) = 0, opposite signs on
/// Pi/Omega, and mixture parameters beta_i chosen so objective i is
/// indifferent between Pi_{beta_i} and Lambda. beta_1 != beta_2 keeps the
/// conflict non-symmetric.
struct ImpossibilityInstance {
    Real gamma1 = 0.0;
    Real gamma2 = 0.0;
    Real v1_pi = 0.0, v1_omega = 0.0, v1_lambda = 0.0;
    Real v2_pi = 0.0, v2_omega = 0.0, v2_lambda = 0.0;
    Real beta1 = 0.0, beta2 = 0.0;
    Real w1 = 1.0, w2 = 1.0; // nonzero aggregation weights

    /// Conflict pattern with given discounts and positive magnitudes:
    /// V_1 = (a, -b, 0) and V_2 = (-c, d, 0) on (Pi, Omega, Lambda), with the
    /// betas solved from the indifference conditions.
    static ImpossibilityInstance make(Real gamma1, Real gamma2, Real a = 1.0, Real b = 1.0,
                                      Real c = 1.0, Real d = 2.0);

    std::vector<std::string> violations() const; // empty when well-formed
};

struct ImpossibilityReport {
    bool consistent = false;
    Real gamma_sigma = 0.0;          // when consistent
    Real implied_from_beta1 = 0.0;   // gamma_sigma forced by beta = beta_1
    Real implied_from_beta2 = 0.0;   // gamma_sigma forced by beta = beta_2
    std::string witness;             // human-readable contradiction, when any
};

/// Substitutes beta_1 and beta_2 into the combined two-route valuation
/// identity
///   w1 g1 V1(Pi_b) + w2 g2 V2(Pi_b) = gS [w1 V1(Pi_b) + w2 V2(Pi_b)]
/// and solves each for gS. Equal solutions mean a Markovian aggregate
/// discount exists (and is reported); unequal solutions are the
/// contradiction witness.
///
/// Throws std::invalid_argument for degenerate instances (beta_1 = beta_2 or
/// pattern violations).
ImpossibilityReport impossibility_check(const ImpossibilityInstance& inst,
                                        Real tol = 1e-9);

} // namespace timepref
