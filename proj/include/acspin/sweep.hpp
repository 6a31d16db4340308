#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acspin/liouville.hpp"
#include "acspin/system.hpp"
#include "acspin/thermal.hpp"

namespace acspin {

enum class SweepAxis { Omega, Nu, Beta };
enum class GridSpacing { Linear, Log };
enum class SolveMethod { Timestep, HarmonicBalance };

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    GridSpacing spacing = GridSpacing::Linear;

    void validate() const {
        if (points < 2) throw InvalidParams("grid needs at least 2 points");
        if (spacing == GridSpacing::Log && (start <= 0.0 || stop <= 0.0))
            throw InvalidParams("log spacing requires positive start and stop");
    }
    std::vector<double> values() const;
};

struct SolverConfig {
    SolveMethod method = SolveMethod::Timestep;
    SolverOptions options;      // steps_per_period, tolerance, max_periods, ...
    int n_harmonics = 0;        // harmonic-balance truncation, 0 = auto
};

struct SweepConfig {
    SystemSpec system;
    ThermalParams thermal;
    SweepAxis axis = SweepAxis::Omega;
    GridSpec grid;
    std::optional<std::vector<double>> explicit_grid;  // overrides grid when set
    SolverConfig solver;
    // Deterministic peak refinement (omega sweeps): after the base grid,
    // re-grid refine_points across the bracket around each of the strongest
    // refine_peaks local maxima of |Sy~|, repeated refine_passes times.
    int refine_passes = 0;
    int refine_points = 25;
    int refine_peaks = 2;
    std::string output;         // CSV path, empty = no file
    int workers = 0;            // OpenMP threads, 0 = library default
};

struct SweepRow {
    double axis = 0.0;
    double sx = 0.0, sy = 0.0, sz = 0.0;
    bool converged = false;
    int periods = 0;
    double residual = 0.0;
};

struct SweepMetrics {
    std::optional<double> i_nl;                          // percent, omega sweeps
    std::vector<std::pair<double, double>> peak_positions;  // (omega, |Sy~|), descending
};

struct SweepResult {
    std::vector<SweepRow> rows;   // sorted by axis value
    SweepMetrics metrics;
};

// Evaluate every grid point independently (OpenMP over points, dynamic
// schedule); rows are merged in grid order so the output is deterministic
// and worker-count independent.
SweepResult run_sweep(const SweepConfig& config);

// Serial reference implementation kept for testing; must produce
// bit-identical rows.
SweepResult run_sweep_serial(const SweepConfig& config);

// I_NL = max_omega |Sy~| / max_omega |Sz~| * 100%, both maxima over the same
// rows. Throws EmptySweep on fewer than 2 rows.
double inl_metric(const SweepResult& result);

// Least-squares slope of log|S_component~| vs log(nu) over rows with axis in
// [lo, hi]. Throws InsufficientPoints on fewer than 4 rows in range.
double fit_scaling_exponent(const SweepResult& result, Axis component, double lo, double hi);

// Default omega grid for I_NL runs: 200 log-spaced points on [0.05, 8] plus
// 100 linear points across each detected resonance window (omega within
// +-10% of h0 and, for the pair, of the level spacings found at the
// minimum-gap point of the two lowest frozen levels).
std::vector<double> default_inl_grid(const SystemSpec& spec);

}  // namespace acspin
