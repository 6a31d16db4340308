#pragma once

#include <map>
#include <array>
#include <optional>
#include <vector>

#include "acspin/operators.hpp"
#include "acspin/system.hpp"
#include "acspin/thermal.hpp"
#include "acspin/types.hpp"

namespace acspin {

// One steady-state period of the trajectory: period-averaged components,
// Fourier harmonics A_n of each component, and convergence diagnostics.
struct PeriodicSolution {
    Vec3 averages = Vec3::Zero();                      // (Sx~, Sy~, Sz~) = A_0
    std::map<int, std::array<complexd, 3>> harmonics;  // n -> (A_nx, A_ny, A_nz)
    int periods_used = 0;
    bool converged = false;
    double residual = 0.0;       // last period-to-period change (sup norm)
    double trace_drift = 0.0;    // max |Tr rho - 1| seen during the run
    double herm_drift = 0.0;     // max ||rho - rho^dag||_max seen during the run
};

struct SolverOptions {
    int steps_per_period = 256;  // RK4 steps per drive period (>= 64)
    double max_dt = 0.02;        // extra cap on the step for long periods
    double tol_ss = 1e-10;       // period-to-period convergence tolerance
    int max_periods = 20000;     // hard cap on integrated periods
    int harmonics_stored = 8;    // A_n kept for |n| <= this
};

// d(rho)/dt = +i [H(t), rho] - nu (rho - rho_e(t)).
Mat liouville_rhs(const Mat& rho, const SystemSpec& spec, const ThermalParams& params,
                  double t);

// Fixed-step RK4 from t0 to t1 with step = period / steps_per_period
// (sign taken from t1 - t0; |t1 - t0| must be a whole number of steps).
// Throws NumericalBlowup on non-finite entries.
Mat integrate(Mat rho0, const SystemSpec& spec, const ThermalParams& params, double t0,
              double t1, int steps_per_period);

// Integrate whole periods from rho_beta(H0) (or rho0 if given) until the
// per-period averaged component vector changes by less than tol_ss between
// consecutive periods, with a floor of max(20, ceil(10/(nu T))) periods and
// the max_periods cap; then sample one further period for averages and
// harmonics. Requires nu > 0 (unique attractor).
PeriodicSolution steady_state(const SystemSpec& spec, const ThermalParams& params,
                              const SolverOptions& options = {},
                              const std::optional<Mat>& rho0 = std::nullopt);

// A_n = (1/T) int_0^T f(t) exp(-i n omega t) dt for a uniformly sampled
// period (plain DFT bin; rectangle = trapezoid for periodic samples).
complexd fourier_harmonic(const std::vector<double>& series, int n);

}  // namespace acspin
