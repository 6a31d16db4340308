#pragma once

#include "acspin/operators.hpp"
#include "acspin/system.hpp"
#include "acspin/types.hpp"

namespace acspin {

enum class TargetMode { StaticTarget, InstantaneousTarget };

struct ThermalParams {
    double beta = 0.0;   // inverse temperature
    double nu = 0.0;     // relaxation rate
    TargetMode target_mode = TargetMode::StaticTarget;

    void validate() const {
        if (!(beta >= 0.0) || !std::isfinite(beta))
            throw InvalidParams("beta must be finite and non-negative");
        if (!(nu >= 0.0)) throw InvalidParams("nu must be non-negative");
    }
};

// rho = exp(-beta H) / Tr exp(-beta H), via eigendecomposition with the
// largest -beta*E shifted to zero before exponentiation (overflow-safe).
// beta = 0 gives the maximally mixed state 1/d.
Mat gibbs_state(const Mat& H, double beta);

// StaticTarget: rho_beta(H0), independent of t.
// InstantaneousTarget: rho_beta(H(t)).
Mat relaxation_target(const SystemSpec& spec, const ThermalParams& params, double t);

// Singlet statistical weight for isotropic exchange Jx = Jy = Jz = J:
// C1 = (2 cosh(beta h0) + 1) / (2 cosh(beta h0) + 1 + exp(-beta J)).
double singlet_weight(double beta, double h0, double J);

}  // namespace acspin
