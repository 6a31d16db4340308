#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "acspin/operators.hpp"
#include "acspin/system.hpp"
#include "acspin/thermal.hpp"
#include "acspin/types.hpp"

namespace acspin::testing {

inline SystemSpec single_spec(double h0, double phi, double eps, double omega) {
    return SystemSpec::single_spin(h0, phi, DriveWaveform::single_cosine(eps, omega));
}

inline SystemSpec pair_spec(double h0, double phi, double jx, double jy, double jz,
                            double eps, double omega) {
    return SystemSpec::spin_pair(h0, phi, {jx, jy, jz},
                                 DriveWaveform::single_cosine(eps, omega));
}

inline ThermalParams thermal(double beta, double nu,
                             TargetMode mode = TargetMode::StaticTarget) {
    ThermalParams p;
    p.beta = beta;
    p.nu = nu;
    p.target_mode = mode;
    return p;
}

inline double expval(const Mat& op, const Mat& rho) { return (op * rho).trace().real(); }

inline double maxdiff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

inline Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

inline Mat random_hermitian(std::mt19937& rng, int d, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat a(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) a(r, c) = complexd(u(rng), u(rng));
    return scale * 0.5 * (a + a.adjoint().eval());
}

// Positive, Hermitian, unit-trace (a legitimate mixed state).
inline Mat random_density(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = complexd(u(rng), u(rng));
    Mat rho = g * g.adjoint();
    return rho / rho.trace().real();
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline std::vector<double> sorted_eigs(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + h.rows());
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace acspin::testing
