#include "timepref/impossibility.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace timepref {

ImpossibilityInstance ImpossibilityInstance::make(Real gamma1, Real gamma2, Real a, Real b,
                                                  Real c, Real d) {
    if (a <= 0 || b <= 0 || c <= 0 || d <= 0)
        throw std::invalid_argument("value magnitudes must be positive");
    ImpossibilityInstance inst;
    inst.gamma1 = gamma1;
    inst.gamma2 = gamma2;
    inst.v1_pi = a;
    inst.v1_omega = -b;
    inst.v2_pi = -c;
    inst.v2_omega = d;
    // V_i(Pi_beta) = beta V_i(Pi) + (1-beta) V_i(Omega) = 0
    inst.beta1 = b / (a + b);
    inst.beta2 = d / (c + d);
    return inst;
}

std::vector<std::string> ImpossibilityInstance::violations() const {
    std::vector<std::string> out;
    if (v1_lambda != 0.0 || v2_lambda != 0.0)
        out.push_back("V_i(Lambda) must be 0 (values are shifted so Lambda is the origin)");
    if (!(v1_pi > 0.0 && 0.0 > v1_omega))
        out.push_back("need V_1(Pi) > 0 > V_1(Omega)");
    if (!(v2_omega > 0.0 && 0.0 > v2_pi))
        out.push_back("need V_2(Omega) > 0 > V_2(Pi)");
    if (w1 == 0.0 || w2 == 0.0) out.push_back("weights must be nonzero (sensitivity)");
    auto mix = [](Real beta, Real pi, Real omega) { return beta * pi + (1 - beta) * omega; };
    if (std::abs(mix(beta1, v1_pi, v1_omega)) > 1e-9)
        out.push_back("beta_1 does not make objective 1 indifferent to Lambda");
    if (std::abs(mix(beta2, v2_pi, v2_omega)) > 1e-9)
        out.push_back("beta_2 does not make objective 2 indifferent to Lambda");
    if (beta1 <= 0.0 || beta1 >= 1.0 || beta2 <= 0.0 || beta2 >= 1.0)
        out.push_back("betas must lie strictly inside (0, 1)");
    if (beta1 == beta2) out.push_back("degenerate: beta_1 = beta_2");
    return out;
}

ImpossibilityReport impossibility_check(const ImpossibilityInstance& inst, Real tol) {
    const auto bad = inst.violations();
    if (!bad.empty()) {
        std::ostringstream oss;
        oss << "invalid impossibility instance:";
        for (const auto& v : bad) oss << " " << v << ";";
        throw std::invalid_argument(oss.str());
    }

    auto mix1 = [&](Real beta) { return beta * inst.v1_pi + (1 - beta) * inst.v1_omega; };
    auto mix2 = [&](Real beta) { return beta * inst.v2_pi + (1 - beta) * inst.v2_omega; };

    // gS = (w1 g1 V1(Pi_b) + w2 g2 V2(Pi_b)) / (w1 V1(Pi_b) + w2 V2(Pi_b))
    auto implied = [&](Real beta) {
        const Real v1 = mix1(beta);
        const Real v2 = mix2(beta);
        const Real denom = inst.w1 * v1 + inst.w2 * v2;
        if (denom == 0.0)
            throw std::invalid_argument("combined equation is degenerate at this beta");
        return (inst.w1 * inst.gamma1 * v1 + inst.w2 * inst.gamma2 * v2) / denom;
    };

    ImpossibilityReport report;
    report.implied_from_beta1 = implied(inst.beta1);
    report.implied_from_beta2 = implied(inst.beta2);
    if (std::abs(report.implied_from_beta1 - report.implied_from_beta2) <= tol) {
        report.consistent = true;
        report.gamma_sigma = report.implied_from_beta1;
    } else {
        report.consistent = false;
        std::ostringstream oss;
        oss << "gamma_sigma would need to equal " << report.implied_from_beta1
            << " (from beta_1) and " << report.implied_from_beta2
            << " (from beta_2) simultaneously";
        report.witness = oss.str();
    }
    return report;
}

} // namespace timepref
