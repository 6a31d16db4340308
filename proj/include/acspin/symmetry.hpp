#pragma once

#include <set>
#include <string>
#include <vector>

#include "acspin/liouville.hpp"
#include "acspin/system.hpp"
#include "acspin/thermal.hpp"

namespace acspin {

// The three protective symmetries of the driven, dissipative problem:
//   case 1: nu = 0, gamma = 0, h odd  (h(-t) = -h(t))   => Sx~ = 0
//   case 2: nu = 0, h even            (h(-t) = +h(t))   => Sy~ = 0
//   case 3: nu != 0, gamma = 0, h antiperiodic (h(t+T/2) = -h(t)) => Sx~ = Sy~ = 0
// Parity and antiperiodicity are decided syntactically on the harmonic table:
// odd <=> all theta_n = +-pi/2; even <=> all theta_n in {0, pi};
// antiperiodic <=> only odd n present. The rules apply verbatim to the pair.
struct SymmetryReport {
    bool case1 = false;
    bool case2 = false;
    bool case3 = false;
    std::set<std::string> forced_zero;              // subset of {"Sx", "Sy"}
    std::vector<std::string> map_descriptions;      // per-case component/time maps
};

SymmetryReport classify(const SystemSpec& spec, const ThermalParams& params);

// Turn the symmetry of the named case into an assertable trajectory identity
// and return its maximal violation:
//   case 3 (nu != 0): steady state; max_t |Sx(t+T/2)+Sx(t)| + |Sy(t+T/2)+Sy(t)|.
//   cases 1-2 (nu = 0): integrate forward and backward from rho_beta(H0) at
//   t = 0 over horizon_periods and return max_t of the mapped identity
//   (case 1: |Sx(t)+Sx(-t)|, case 2: |Sy(t)+Sy(-t)|).
// With enforce = true (default) throws CaseNotApplicable when classify
// disagrees; enforce = false evaluates the identity anyway (positive control
// for genuinely broken symmetries).
double verify_trajectory_symmetry(const SystemSpec& spec, const ThermalParams& params,
                                  int case_id, int horizon_periods, bool enforce = true,
                                  const SolverOptions& options = {});

}  // namespace acspin
