#include "timepref/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace timepref {

void ChoiceMass::validate() const {
    if (mass.empty()) throw std::invalid_argument("choice mass is empty");
    for (Real m : mass)
        if (!(m > 0.0)) throw std::invalid_argument("choice masses must be positive");
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be positive");
}

Real bt_prob(const ChoiceMass& mass, int i, int j) {
    mass.validate();
    if (i == j) throw std::invalid_argument("pairwise choice needs distinct alternatives");
    const Real mi = mass.mass.at(i);
    const Real mj = mass.mass.at(j);
    return mi / (mi + mj);
}

std::vector<Real> utilities_of(const ChoiceMass& mass) {
    mass.validate();
    std::vector<Real> u(mass.mass.size());
    for (size_t a = 0; a < u.size(); ++a) u[a] = mass.temperature * std::log(mass.mass[a]);
    return u;
}

std::vector<Real> softmax_policy(const std::vector<Real>& utilities, Real k) {
    if (utilities.empty()) throw std::invalid_argument("utility vector is empty");
    if (!(k > 0.0)) throw std::invalid_argument("temperature must be positive");
    const Real top = *std::max_element(utilities.begin(), utilities.end());
    std::vector<Real> p(utilities.size());
    Real z = 0.0;
    for (size_t a = 0; a < p.size(); ++a) {
        p[a] = std::exp((utilities[a] - top) / k);
        z += p[a];
    }
    for (Real& x : p) x /= z;
    return p;
}

std::vector<Real> compose_utilities(const std::vector<std::vector<Real>>& utility_sets,
                                    const std::vector<Real>& weights) {
    if (utility_sets.size() != weights.size())
        throw std::invalid_argument("one weight per utility set is required");
    if (utility_sets.empty()) throw std::invalid_argument("no utility sets given");
    const size_t n = utility_sets.front().size();
    std::vector<Real> out(n, 0.0);
    for (size_t i = 0; i < utility_sets.size(); ++i) {
        if (utility_sets[i].size() != n)
            throw std::invalid_argument("utility sets cover different action sets");
        for (size_t a = 0; a < n; ++a) out[a] += weights[i] * utility_sets[i][a];
    }
    return out;
}

int sample_action(const std::vector<Real>& distribution, std::mt19937_64& rng) {
    std::uniform_real_distribution<Real> unit(0.0, 1.0);
    const Real u = unit(rng);
    Real acc = 0.0;
    for (size_t a = 0; a < distribution.size(); ++a) {
        acc += distribution[a];
        if (u < acc) return static_cast<int>(a);
    }
    return static_cast<int>(distribution.size()) - 1;
}

} // namespace timepref
