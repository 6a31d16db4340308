#pragma once

#include "acspin/liouville.hpp"

namespace acspin {

// Direct solution of the time-periodic linear equation in Fourier space:
// expanding rho(t) = sum_n rho_n exp(i n omega t) turns the evolution into a
// block-banded linear system
//   (i n omega + nu) rho_n - i [H0, rho_n]
//       - i sum_m (eps_m/2) (e^{+i theta_m} [V, rho_{n-m}] + e^{-i theta_m} [V, rho_{n+m}])
//   = nu (rho_e)_n,
// truncated at |n| <= n_harmonics and solved with a sparse LU. Returns the
// same PeriodicSolution as steady_state without any time stepping; serves as
// a fast path and as an independent cross-check of the integrator.
//
// n_harmonics = 0 picks a truncation automatically from the spectral radius
// of H(t) and grows it until the tail blocks are negligible.
// Throws SingularSystem if the truncated operator cannot be factorized.
PeriodicSolution harmonic_balance_steady_state(const SystemSpec& spec,
                                               const ThermalParams& params,
                                               int n_harmonics = 0);

// The automatic truncation heuristic (exposed for tests).
int auto_harmonics(const SystemSpec& spec, const ThermalParams& params);

}  // namespace acspin
