#include "acspin/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace acspin {

namespace {

// Everything a trajectory needs, built once per run. The static target is
// cached; the instantaneous target is re-evaluated at every RK4 stage time
// (gibbs_state at d <= 4 is cheap, and interpolation would break the exact
// symmetry properties of the flow).
struct EvolutionContext {
    const SystemSpec& spec;
    const ThermalParams& params;
    Mat h0;
    Mat v;
    Mat static_target;

    EvolutionContext(const SystemSpec& s, const ThermalParams& p)
        : spec(s),
          params(p),
          h0(build_static_hamiltonian(s)),
          v(build_drive_coupling(s)),
          static_target(gibbs_state(h0, p.beta)) {}

    Mat target(double t) const {
        if (params.target_mode == TargetMode::StaticTarget) return static_target;
        return gibbs_state(h0 + spec.drive.value(t) * v, params.beta);
    }

    Mat rhs(double t, const Mat& rho) const {
        const Mat h = h0 + spec.drive.value(t) * v;
        Mat out = complexd(0.0, 1.0) * (h * rho - rho * h);
        if (params.nu != 0.0) out -= params.nu * (rho - target(t));
        return out;
    }

    void rk4_step(Mat& rho, double t, double dt) const {
        const Mat k1 = rhs(t, rho);
        const Mat k2 = rhs(t + 0.5 * dt, rho + (0.5 * dt) * k1);
        const Mat k3 = rhs(t + 0.5 * dt, rho + (0.5 * dt) * k2);
        const Mat k4 = rhs(t + dt, rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

// Tr(op * rho) without forming the product: sum_ik op(i,k) rho(k,i).
double expectation(const Mat& op, const Mat& rho) {
    return op.cwiseProduct(rho.transpose()).sum().real();
}

// Effective steps per period: the requested resolution, additionally capped
// so that dt <= max_dt (accuracy floor for long periods) and nu*dt <= 0.5
// (RK4 stability for the stiff relaxation term).
int effective_steps(const DriveWaveform& drive, const SolverOptions& options, double nu) {
    const double T = drive.period();
    int spp = std::max(options.steps_per_period, 64);
    if (options.max_dt > 0.0)
        spp = std::max(spp, static_cast<int>(std::ceil(T / options.max_dt)));
    if (nu > 0.0) spp = std::max(spp, static_cast<int>(std::ceil(2.0 * T * nu)));
    return spp;
}

}  // namespace

Mat liouville_rhs(const Mat& rho, const SystemSpec& spec, const ThermalParams& params,
                  double t) {
    EvolutionContext ctx(spec, params);
    return ctx.rhs(t, rho);
}

Mat integrate(Mat rho0, const SystemSpec& spec, const ThermalParams& params, double t0,
              double t1, int steps_per_period) {
    spec.validate();
    params.validate();
    if (steps_per_period < 64) throw InvalidParams("integrate: steps_per_period must be >= 64");
    const double T = spec.drive.period();
    const double step = T / steps_per_period;
    const double span = t1 - t0;
    const double n_real = std::abs(span) / step;
    const long n = std::lround(n_real);
    if (std::abs(n_real - static_cast<double>(n)) > 1e-9 * std::max(1.0, n_real))
        throw InvalidParams("integrate: (t1 - t0) must be a whole number of steps");
    const double dt = span >= 0.0 ? step : -step;

    EvolutionContext ctx(spec, params);
    for (long j = 0; j < n; ++j) {
        ctx.rk4_step(rho0, t0 + j * dt, dt);
        if ((j % steps_per_period) == steps_per_period - 1 && !rho0.allFinite())
            throw NumericalBlowup("integrate: non-finite density matrix entries");
    }
    if (!rho0.allFinite())
        throw NumericalBlowup("integrate: non-finite density matrix entries");
    return rho0;
}

PeriodicSolution steady_state(const SystemSpec& spec, const ThermalParams& params,
                              const SolverOptions& options, const std::optional<Mat>& rho0) {
    spec.validate();
    params.validate();
    if (!(params.nu > 0.0))
        throw InvalidParams("steady_state: nu must be positive (unique attractor)");

    const double T = spec.drive.period();
    const int M = effective_steps(spec.drive, options, params.nu);
    const double dt = T / M;
    const int floor_periods =
        std::max(20, static_cast<int>(std::ceil(10.0 / (params.nu * T))));

    EvolutionContext ctx(spec, params);
    const Mat sx_op = total_spin_operator(spec, Axis::X);
    const Mat sy_op = total_spin_operator(spec, Axis::Y);
    const Mat sz_op = total_spin_operator(spec, Axis::Z);

    Mat rho = rho0.value_or(ctx.static_target);

    PeriodicSolution sol;
    Vec3 prev_avg(std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0);
    double residual = std::numeric_limits<double>::infinity();
    int periods = 0;
    double trace_drift = 0.0, herm_drift = 0.0;

    auto record_drift = [&](const Mat& r) {
        trace_drift = std::max(trace_drift, std::abs(r.trace().real() - 1.0) +
                                                std::abs(r.trace().imag()));
        herm_drift =
            std::max(herm_drift, (r - r.adjoint().eval()).cwiseAbs().maxCoeff());
    };

    bool converged = false;
    while (periods < options.max_periods) {
        Vec3 avg = Vec3::Zero();
        const double t_base = static_cast<double>(periods) * T;
        for (int j = 0; j < M; ++j) {
            const double t = t_base + j * dt;
            avg[0] += expectation(sx_op, rho);
            avg[1] += expectation(sy_op, rho);
            avg[2] += expectation(sz_op, rho);
            ctx.rk4_step(rho, t, dt);
        }
        avg /= M;
        ++periods;
        if (!rho.allFinite())
            throw NumericalBlowup("steady_state: non-finite density matrix entries");
        record_drift(rho);
        if (prev_avg.allFinite()) {
            residual = (avg - prev_avg).cwiseAbs().maxCoeff();
            if (periods >= floor_periods && residual < options.tol_ss) {
                converged = true;
            }
        }
        prev_avg = avg;
        if (converged) break;
    }
    if (!converged)
        throw NotConverged("steady_state: period averages still moving at the period cap",
                           residual);

    // One further period sampled for the reported averages and harmonics.
    std::vector<double> sx(M), sy(M), sz(M);
    const double t_base = static_cast<double>(periods) * T;
    for (int j = 0; j < M; ++j) {
        const double t = t_base + j * dt;
        sx[j] = expectation(sx_op, rho);
        sy[j] = expectation(sy_op, rho);
        sz[j] = expectation(sz_op, rho);
        ctx.rk4_step(rho, t, dt);
    }
    record_drift(rho);

    sol.periods_used = periods + 1;
    sol.converged = converged;
    sol.residual = residual;
    sol.trace_drift = trace_drift;
    sol.herm_drift = herm_drift;
    for (int n = -options.harmonics_stored; n <= options.harmonics_stored; ++n) {
        sol.harmonics[n] = {fourier_harmonic(sx, n), fourier_harmonic(sy, n),
                            fourier_harmonic(sz, n)};
    }
    sol.averages =
        Vec3(sol.harmonics[0][0].real(), sol.harmonics[0][1].real(), sol.harmonics[0][2].real());
    return sol;
}

complexd fourier_harmonic(const std::vector<double>& series, int n) {
    const std::size_t m = series.size();
    if (m == 0) throw InvalidParams("fourier_harmonic: empty series");
    const double w = -2.0 * pi * static_cast<double>(n) / static_cast<double>(m);
    const complexd rot(std::cos(w), std::sin(w));
    complexd phase(1.0, 0.0);
    complexd acc(0.0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        // Periodically re-anchor the recurrence so roundoff cannot drift for
        // very finely sampled periods.
        if ((j & 4095u) == 0)
            phase = complexd(std::cos(w * static_cast<double>(j)),
                             std::sin(w * static_cast<double>(j)));
        acc += series[j] * phase;
        phase *= rot;
    }
    return acc / static_cast<double>(m);
}

}  // namespace acspin
