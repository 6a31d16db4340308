#include "acspin/thermal.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace acspin {

Mat gibbs_state(const Mat& H, double beta) {
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw InvalidParams("gibbs_state: beta must be finite and non-negative");
    const int d = static_cast<int>(H.rows());
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    const auto& evals = es.eigenvalues();
    const auto& evecs = es.eigenvectors();
    // Shift the largest exponent -beta*E to zero before exponentiating, so
    // large beta never overflows and the normalization stays exact.
    const double shift = -beta * evals.minCoeff();
    Eigen::VectorXd w(d);
    double z = 0.0;
    for (int k = 0; k < d; ++k) {
        w(k) = std::exp(-beta * evals(k) - shift);
        z += w(k);
    }
    Mat rho = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k)
        rho += (w(k) / z) * (evecs.col(k) * evecs.col(k).adjoint());
    return rho;
}

Mat relaxation_target(const SystemSpec& spec, const ThermalParams& params, double t) {
    if (params.target_mode == TargetMode::StaticTarget)
        return gibbs_state(build_static_hamiltonian(spec), params.beta);
    return gibbs_state(hamiltonian_at(spec, t), params.beta);
}

double singlet_weight(double beta, double h0, double J) {
    // Z_triplet / Z with the isotropic pair spectrum at h = 0:
    // triplet {-J/4 - h0, -J/4, -J/4 + h0}, singlet 3J/4.
    // C1 = (2 cosh(beta h0) + 1) / (2 cosh(beta h0) + 1 + exp(-beta J));
    // evaluated in shifted form so large |beta h0| and |beta J| stay finite.
    const double a = std::abs(beta * h0);
    // 2 cosh(beta h0) + 1 = e^a (1 + e^{-2a} + e^{-a})
    const double log_t = a + std::log1p(std::exp(-2.0 * a) + std::exp(-a));
    const double log_s = -beta * J;
    if (log_s <= log_t)
        return 1.0 / (1.0 + std::exp(log_s - log_t));
    return std::exp(log_t - log_s) / (std::exp(log_t - log_s) + 1.0);
}

}  // namespace acspin
