#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acspin/system.hpp"
#include "acspin/types.hpp"

namespace acspin {

// Frozen-field level scan: eigenvalues of H0 + h V on a grid of frozen drive
// values h (adiabatic picture).
struct LevelScan {
    std::vector<double> h_values;               // sorted
    std::vector<std::vector<double>> levels;    // ascending eigenvalues per h
    std::optional<int> singlet_index;           // index of the flat singlet branch
};

// Eigenvalues of H0 + h V, ascending.
std::vector<double> frozen_levels(const SystemSpec& spec, double h);

// Closed-form isotropic-exchange levels with a = h0 + gamma h, c = alpha h / 2:
// E0 = 3J/4 (singlet), E1 = -J/4 + sqrt(a^2 + 4c^2), E2 = -J/4,
// E3 = -J/4 - sqrt(a^2 + 4c^2).
std::array<double, 4> isotropic_levels(double J, double h0, double phi, double h);

// Scan levels[j] - levels[i] over h in [h_range.first, h_range.second] on a
// coarse grid (resolution points, >= 100), then refine the minimum by golden
// section to |dh| <= 1e-6. Returns (h_star, gap).
// Throws RangeTooNarrow if the minimum sits at a range endpoint.
std::pair<double, double> min_gap_scan(const SystemSpec& spec, std::pair<int, int> level_pair,
                                       std::pair<double, double> h_range, int resolution);

// Singlet combination (|ud> - |du>)/sqrt(2) and the 3x3 restriction of
// H(t) = H0 + h V to the triplet subspace (as the pair of restricted H0, V).
// The off-block coupling vanishes for any exchange tensor: both the exchange
// and the site-symmetric drive preserve the total-spin parity.
struct TripletSingletSplit {
    Eigen::Vector4cd singlet_vector;
    Eigen::Matrix3cd triplet_h0;
    Eigen::Matrix3cd triplet_v;
    double singlet_energy = 0.0;            // <s|H0|s>, h-independent
    double max_offblock_coupling = 0.0;     // numerically asserted decoupling
};

TripletSingletSplit triplet_singlet_split(const SystemSpec& spec);

// Scan helper used by the `levels` CLI subcommand.
LevelScan level_scan(const SystemSpec& spec, double h_start, double h_stop, int points);

}  // namespace acspin
