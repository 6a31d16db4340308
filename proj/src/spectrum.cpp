#include "acspin/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "acspin/operators.hpp"

namespace acspin {

namespace {

std::vector<double> sorted_eigenvalues(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<double> frozen_levels(const SystemSpec& spec, double h) {
    spec.validate();
    return sorted_eigenvalues(build_static_hamiltonian(spec) + h * build_drive_coupling(spec));
}

std::array<double, 4> isotropic_levels(double J, double h0, double phi, double h) {
    const double a = h0 + std::cos(phi) * h;
    const double c = 0.5 * std::sin(phi) * h;
    const double b = std::sqrt(a * a + 4.0 * c * c);  // total frozen field strength
    std::array<double, 4> out = {0.75 * J, -0.25 * J + b, -0.25 * J, -0.25 * J - b};
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<double, double> min_gap_scan(const SystemSpec& spec, std::pair<int, int> level_pair,
                                       std::pair<double, double> h_range, int resolution) {
    spec.validate();
    const int d = spec.dim();
    const auto [i, j] = level_pair;
    if (i < 0 || j < 0 || i >= d || j >= d || i == j)
        throw InvalidParams("min_gap_scan: level indices must be distinct and in [0, dim)");
    if (resolution < 100) throw InvalidParams("min_gap_scan: resolution must be >= 100");
    if (!(h_range.second > h_range.first))
        throw InvalidParams("min_gap_scan: empty h range");

    const int lo = std::min(i, j);
    const int hi = std::max(i, j);
    auto gap = [&](double h) {
        const auto e = frozen_levels(spec, h);
        return e[hi] - e[lo];
    };

    int best = 0;
    double best_gap = gap(h_range.first);
    const double step = (h_range.second - h_range.first) / (resolution - 1);
    for (int k = 1; k < resolution; ++k) {
        const double g = gap(h_range.first + k * step);
        if (g < best_gap) {
            best_gap = g;
            best = k;
        }
    }
    if (best == 0 || best == resolution - 1)
        throw RangeTooNarrow("min_gap_scan: minimum sits at an endpoint of the h range");

    // Golden-section on the bracketing interval.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = h_range.first + (best - 1) * step;
    double b = h_range.first + (best + 1) * step;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = gap(x1);
    double f2 = gap(x2);
    while (b - a > 1e-6) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = gap(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = gap(x2);
        }
    }
    const double h_star = 0.5 * (a + b);
    return {h_star, gap(h_star)};
}

TripletSingletSplit triplet_singlet_split(const SystemSpec& spec) {
    spec.validate();
    if (spec.kind != SpinKind::SpinPair)
        throw InvalidParams("triplet_singlet_split: needs a spin pair");

    // Basis |uu>, |ud>, |du>, |dd>; triplet columns t_+, t_0, t_-.
    Eigen::Matrix<complexd, 4, 3> triplet = Eigen::Matrix<complexd, 4, 3>::Zero();
    triplet(0, 0) = 1.0;
    triplet(1, 1) = triplet(2, 1) = 1.0 / std::sqrt(2.0);
    triplet(3, 2) = 1.0;
    Eigen::Vector4cd singlet = Eigen::Vector4cd::Zero();
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);

    const Mat h0 = build_static_hamiltonian(spec);
    const Mat v = build_drive_coupling(spec);

    TripletSingletSplit out;
    out.singlet_vector = singlet;
    out.triplet_h0 = triplet.adjoint() * h0 * triplet;
    out.triplet_v = triplet.adjoint() * v * triplet;
    out.singlet_energy = (singlet.adjoint() * h0 * singlet)(0).real();
    const Eigen::Vector3cd ch = triplet.adjoint() * (h0 * singlet);
    const Eigen::Vector3cd cv = triplet.adjoint() * (v * singlet);
    out.max_offblock_coupling = std::max(ch.cwiseAbs().maxCoeff(), cv.cwiseAbs().maxCoeff());
    return out;
}

LevelScan level_scan(const SystemSpec& spec, double h_start, double h_stop, int points) {
    spec.validate();
    if (points < 2) throw InvalidParams("level_scan: needs at least 2 points");
    LevelScan scan;
    scan.h_values.reserve(points);
    scan.levels.reserve(points);
    for (int k = 0; k < points; ++k) {
        const double h = h_start + (h_stop - h_start) * k / (points - 1);
        scan.h_values.push_back(h);
        scan.levels.push_back(frozen_levels(spec, h));
    }
    if (spec.kind == SpinKind::SpinPair) {
        const double es = 0.25 * (spec.exchange->jx + spec.exchange->jy + spec.exchange->jz);
        const auto& first = scan.levels.front();
        int idx = 0;
        double best = std::abs(first[0] - es);
        for (int k = 1; k < 4; ++k)
            if (std::abs(first[k] - es) < best) {
                best = std::abs(first[k] - es);
                idx = k;
            }
        scan.singlet_index = idx;
    }
    return scan;
}

}  // namespace acspin
