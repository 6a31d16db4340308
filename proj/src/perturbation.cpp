#include "acspin/perturbation.hpp"

#include <cmath>

namespace acspin {

PerturbativeAverages perturbative_averages(double h0, double phi, double beta, double nu,
                                           double epsilon, double omega) {
    if (!(nu > 0.0)) throw InvalidParams("perturbative_averages: nu must be positive");
    if (!(omega > 0.0)) throw InvalidParams("perturbative_averages: omega must be positive");

    const double alpha = std::sin(phi);
    const double gamma = std::cos(phi);
    const double c = 0.5 * std::tanh(0.5 * beta * h0);
    const double nu2 = nu * nu;
    const double w2 = omega * omega;
    const double h2 = h0 * h0;
    const double delta = (h2 - w2) * (h2 - w2) + nu2 * (nu2 + 2.0 * h2 + 2.0 * w2);
    const double e2 = epsilon * epsilon;

    PerturbativeAverages out;
    out.delta = delta;
    out.a0x = -e2 * alpha * gamma * c * (nu2 + w2 - h2) / (2.0 * delta);
    out.a0y = e2 * alpha * gamma * nu * h0 * c / delta;
    out.a0z = -c + e2 * alpha * alpha * c * (nu2 + w2 + h2) / (2.0 * delta);
    out.eps_small = epsilon < 0.5;
    out.eps_below_nu = epsilon < 0.5 * nu;
    return out;
}

ResonanceAverages resonance_averages(double h0, double phi, double beta, double nu,
                                     double epsilon) {
    if (!(h0 > 0.0)) throw InvalidParams("resonance_averages: h0 must be positive");
    if (!(nu > 0.0)) throw InvalidParams("resonance_averages: nu must be positive");

    const double alpha = std::sin(phi);
    const double gamma = std::cos(phi);
    const double c = 0.5 * std::tanh(0.5 * beta * h0);
    const double xi = nu / h0;
    const double common = epsilon * epsilon * alpha * gamma * c / (h0 * h0 * (4.0 + xi * xi));

    ResonanceAverages out;
    out.a0x = -0.5 * common;
    out.a0y = common / xi;
    return out;
}

}  // namespace acspin
