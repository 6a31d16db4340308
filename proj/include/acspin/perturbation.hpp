#pragma once

#include "acspin/types.hpp"

namespace acspin {

// Second-order (in the drive amplitude) closed forms for the averaged
// single-spin components under h(t) = eps cos(omega t):
//   A0x = -eps^2 alpha gamma C (nu^2 + omega^2 - h0^2) / (2 Delta)
//   A0y =  eps^2 alpha gamma nu h0 C / Delta
//   A0z = -C + eps^2 alpha^2 C (nu^2 + omega^2 + h0^2) / (2 Delta)
// with C = tanh(beta h0 / 2) / 2 and
//   Delta = (h0^2 - omega^2)^2 + nu^2 (nu^2 + 2 h0^2 + 2 omega^2).
struct PerturbativeAverages {
    double a0x = 0.0, a0y = 0.0, a0z = 0.0;
    double delta = 0.0;            // the denominator Delta
    bool eps_small = true;         // eps < 1/2
    bool eps_below_nu = true;      // eps < nu/2
    bool valid() const { return eps_small && eps_below_nu; }
};

PerturbativeAverages perturbative_averages(double h0, double phi, double beta, double nu,
                                           double epsilon, double omega);

// The omega = h0 (magnetic resonance) limit, xi = nu / h0:
//   A0x ~ -eps^2 alpha gamma C / (2 h0^2 (4 + xi^2))
//   A0y ~  eps^2 alpha gamma C / (xi h0^2 (4 + xi^2))
struct ResonanceAverages {
    double a0x = 0.0, a0y = 0.0;
};

ResonanceAverages resonance_averages(double h0, double phi, double beta, double nu,
                                     double epsilon);

}  // namespace acspin
