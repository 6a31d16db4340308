#include "acspin/harmonic_balance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace acspin {

namespace {

using SpMat = Eigen::SparseMatrix<complexd>;
using Triplet = Eigen::Triplet<complexd>;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Commutator superoperator on column-major vec(rho): vec([M, rho]) = C_M vec(rho).
Eigen::MatrixXcd commutator_superop(const Mat& m) {
    const Eigen::Index d = m.rows();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    return kron(id, Eigen::MatrixXcd(m)) - kron(Eigen::MatrixXcd(m.transpose()), id);
}

double spectral_bound(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Fourier blocks of the instantaneous Gibbs target rho_beta(H(t)), |n| <= keep.
std::vector<Mat> instantaneous_target_blocks(const SystemSpec& spec, double beta, int keep) {
    const int d = spec.dim();
    const int samples = 1024;
    const Mat h0 = build_static_hamiltonian(spec);
    const Mat v = build_drive_coupling(spec);
    const double T = spec.drive.period();
    std::vector<Mat> gibbs_samples(samples);
    for (int j = 0; j < samples; ++j)
        gibbs_samples[j] = gibbs_state(h0 + spec.drive.value(j * T / samples) * v, beta);
    std::vector<Mat> blocks(2 * keep + 1, Mat::Zero(d, d));
    for (int n = -keep; n <= keep; ++n) {
        Mat acc = Mat::Zero(d, d);
        for (int j = 0; j < samples; ++j) {
            const double ang = -2.0 * pi * n * j / static_cast<double>(samples);
            acc += complexd(std::cos(ang), std::sin(ang)) * gibbs_samples[j];
        }
        blocks[n + keep] = acc / static_cast<double>(samples);
    }
    return blocks;
}

struct HbSolution {
    std::vector<Mat> rho;  // blocks rho_n, n = -N..N
    int n_harmonics = 0;
    double tail = 0.0;     // max-norm of the edge blocks relative to rho_0
};

HbSolution solve_truncated(const SystemSpec& spec, const ThermalParams& params, int N) {
    const int d = spec.dim();
    const int dd = d * d;
    const double omega = spec.drive.omega;
    const Mat h0 = build_static_hamiltonian(spec);
    const Mat v = build_drive_coupling(spec);
    const Eigen::MatrixXcd ch0 = commutator_superop(h0);
    const Eigen::MatrixXcd cv = commutator_superop(v);

    const int nblocks = 2 * N + 1;
    const Eigen::Index size = static_cast<Eigen::Index>(nblocks) * dd;
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(nblocks) *
                 (dd * dd * (1 + 2 * spec.drive.harmonics.size())));

    auto add_block = [&](int brow, int bcol, const Eigen::MatrixXcd& blk, complexd scale) {
        const Eigen::Index r0 = static_cast<Eigen::Index>(brow) * dd;
        const Eigen::Index c0 = static_cast<Eigen::Index>(bcol) * dd;
        for (Eigen::Index c = 0; c < dd; ++c)
            for (Eigen::Index r = 0; r < dd; ++r) {
                const complexd x = scale * blk(r, c);
                if (x != complexd(0.0, 0.0)) trip.emplace_back(r0 + r, c0 + c, x);
            }
    };

    const complexd iu(0.0, 1.0);
    const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(dd, dd);
    for (int n = -N; n <= N; ++n) {
        const int b = n + N;
        Eigen::MatrixXcd diag = (iu * (n * omega) + params.nu) * ident - iu * ch0;
        add_block(b, b, diag, complexd(1.0, 0.0));
        for (const auto& hm : spec.drive.harmonics) {
            const complexd cplus =
                0.5 * hm.amplitude * std::exp(complexd(0.0, hm.phase));     // e^{+i theta}
            const complexd cminus =
                0.5 * hm.amplitude * std::exp(complexd(0.0, -hm.phase));    // e^{-i theta}
            if (n - hm.n >= -N) add_block(b, n - hm.n + N, cv, -iu * cplus);
            if (n + hm.n <= N) add_block(b, n + hm.n + N, cv, -iu * cminus);
        }
    }

    SpMat a(size, size);
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
    if (params.target_mode == TargetMode::StaticTarget) {
        const Mat target = gibbs_state(h0, params.beta);
        const Eigen::Index b0 = static_cast<Eigen::Index>(N) * dd;
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r) rhs(b0 + c * d + r) = params.nu * target(r, c);
    } else {
        const int keep = std::min(N, 128);
        const auto blocks = instantaneous_target_blocks(spec, params.beta, keep);
        for (int n = -keep; n <= keep; ++n) {
            const Eigen::Index bn = static_cast<Eigen::Index>(n + N) * dd;
            const Mat& blk = blocks[n + keep];
            for (int c = 0; c < d; ++c)
                for (int r = 0; r < d; ++r) rhs(bn + c * d + r) = params.nu * blk(r, c);
        }
    }

    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success)
        throw SingularSystem(
            "harmonic balance: truncated operator is numerically singular "
            "(n_harmonics too small or nu too small for the truncation)");
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success)
        throw SingularSystem("harmonic balance: sparse solve failed");

    HbSolution sol;
    sol.n_harmonics = N;
    sol.rho.resize(nblocks, Mat::Zero(d, d));
    for (int b = 0; b < nblocks; ++b)
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r)
                sol.rho[b](r, c) = x(static_cast<Eigen::Index>(b) * dd + c * d + r);

    const double scale = std::max(sol.rho[N].cwiseAbs().maxCoeff(), 1e-300);
    sol.tail = std::max(sol.rho.front().cwiseAbs().maxCoeff(),
                        sol.rho.back().cwiseAbs().maxCoeff()) /
               scale;
    return sol;
}

}  // namespace

int auto_harmonics(const SystemSpec& spec, const ThermalParams& params) {
    (void)params;
    double amp = 0.0;
    for (const auto& hm : spec.drive.harmonics) amp += std::abs(hm.amplitude) * hm.n;
    const double lam = spectral_bound(build_static_hamiltonian(spec)) +
                       std::abs(amp) * spectral_bound(build_drive_coupling(spec));
    const int by_spectrum = static_cast<int>(std::ceil(2.4 * lam / spec.drive.omega)) + 12;
    return std::max(3 * std::max(spec.drive.max_harmonic(), 1), by_spectrum);
}

PeriodicSolution harmonic_balance_steady_state(const SystemSpec& spec,
                                               const ThermalParams& params,
                                               int n_harmonics) {
    spec.validate();
    params.validate();
    if (!(params.nu > 0.0))
        throw InvalidParams("harmonic balance: nu must be positive");
    if (n_harmonics < 0) throw InvalidParams("harmonic balance: n_harmonics must be >= 0");
    if (n_harmonics > 0 && n_harmonics < 3 * spec.drive.max_harmonic())
        throw InvalidParams(
            "harmonic balance: n_harmonics must be at least 3x the drive harmonic count");

    const double tail_tol = 1e-11;
    int N = n_harmonics > 0 ? n_harmonics : auto_harmonics(spec, params);
    const bool fixed = n_harmonics > 0;
    HbSolution hb = solve_truncated(spec, params, N);
    int grow = 0;
    while (!fixed && hb.tail > tail_tol && grow < 3) {
        N = static_cast<int>(std::ceil(1.5 * N)) + 8;
        hb = solve_truncated(spec, params, N);
        ++grow;
    }

    const Mat sx_op = total_spin_operator(spec, Axis::X);
    const Mat sy_op = total_spin_operator(spec, Axis::Y);
    const Mat sz_op = total_spin_operator(spec, Axis::Z);
    auto trace_against = [](const Mat& op, const Mat& rho) {
        return op.cwiseProduct(rho.transpose()).sum();
    };

    PeriodicSolution sol;
    const Mat& rho0 = hb.rho[hb.n_harmonics];
    sol.averages = Vec3(trace_against(sx_op, rho0).real(), trace_against(sy_op, rho0).real(),
                        trace_against(sz_op, rho0).real());
    const int stored = std::min(SolverOptions{}.harmonics_stored, hb.n_harmonics);
    for (int n = -stored; n <= stored; ++n) {
        const Mat& rn = hb.rho[n + hb.n_harmonics];
        sol.harmonics[n] = {trace_against(sx_op, rn), trace_against(sy_op, rn),
                            trace_against(sz_op, rn)};
    }
    sol.periods_used = 0;
    sol.converged = hb.tail <= tail_tol;
    sol.residual = hb.tail;
    sol.trace_drift = std::abs(rho0.trace() - complexd(1.0, 0.0));
    sol.herm_drift = (rho0 - rho0.adjoint().eval()).cwiseAbs().maxCoeff();
    return sol;
}

}  // namespace acspin
