#include "acspin/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "acspin/operators.hpp"

namespace acspin {

namespace {

// Reduce a phase to (-pi, pi].
double wrap_phase(double t) {
    double w = std::fmod(t, 2.0 * pi);
    if (w <= -pi) w += 2.0 * pi;
    if (w > pi) w -= 2.0 * pi;
    return w;
}

bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

// h(-t) = -h(t): every component is a pure sine, theta_n = +-pi/2.
bool drive_is_odd(const DriveWaveform& drive) {
    for (const auto& hm : drive.harmonics) {
        if (hm.amplitude == 0.0) continue;
        const double w = wrap_phase(hm.phase);
        if (!near(std::abs(w), pi / 2)) return false;
    }
    return true;
}

// h(-t) = +h(t): every component is a pure cosine up to sign, theta_n in {0, pi}.
bool drive_is_even(const DriveWaveform& drive) {
    for (const auto& hm : drive.harmonics) {
        if (hm.amplitude == 0.0) continue;
        const double w = wrap_phase(hm.phase);
        if (!(near(w, 0.0) || near(std::abs(w), pi))) return false;
    }
    return true;
}

// h(t + T/2) = -h(t): only odd multiples of the base frequency present.
bool drive_is_antiperiodic(const DriveWaveform& drive) {
    for (const auto& hm : drive.harmonics) {
        if (hm.amplitude == 0.0) continue;
        if (hm.n % 2 == 0) return false;
    }
    return true;
}

struct Rk4 {
    Mat h0, v, target;
    double nu;
    const DriveWaveform* drive;

    Rk4(const SystemSpec& spec, const ThermalParams& params)
        : h0(build_static_hamiltonian(spec)),
          v(build_drive_coupling(spec)),
          target(gibbs_state(build_static_hamiltonian(spec), params.beta)),
          nu(params.nu),
          drive(&spec.drive) {}

    Mat rhs(double t, const Mat& rho) const {
        const Mat h = h0 + drive->value(t) * v;
        Mat out = complexd(0.0, 1.0) * (h * rho - rho * h);
        if (nu != 0.0) out -= nu * (rho - target);
        return out;
    }
    void step(Mat& rho, double t, double dt) const {
        const Mat k1 = rhs(t, rho);
        const Mat k2 = rhs(t + 0.5 * dt, rho + (0.5 * dt) * k1);
        const Mat k3 = rhs(t + 0.5 * dt, rho + (0.5 * dt) * k2);
        const Mat k4 = rhs(t + dt, rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
};

int even_steps_per_period(const DriveWaveform& drive, const SolverOptions& options, double nu) {
    const double T = drive.period();
    int steps = std::max(options.steps_per_period, 64);
    steps = std::max(steps, static_cast<int>(std::ceil(T / options.max_dt)));
    steps = std::max(steps, static_cast<int>(std::ceil(2.0 * T * nu)));
    return steps + (steps % 2);
}

}  // namespace

SymmetryReport classify(const SystemSpec& spec, const ThermalParams& params) {
    spec.validate();
    const bool gamma_zero = std::abs(spec.gamma()) <= 1e-12;
    const bool dissipationless = params.nu == 0.0;

    SymmetryReport report;
    if (dissipationless && gamma_zero && drive_is_odd(spec.drive)) {
        report.case1 = true;
        report.forced_zero.insert("Sx");
        report.map_descriptions.push_back(
            "case 1: rho(t) -> Rz(pi) rho(-t)* Rz(pi)^dag; Sx(t) = -Sx(-t), Sx~ = 0");
    }
    if (dissipationless && drive_is_even(spec.drive)) {
        report.case2 = true;
        report.forced_zero.insert("Sy");
        report.map_descriptions.push_back(
            "case 2: rho(t) -> rho(-t)*; Sy(t) = -Sy(-t), Sy~ = 0");
    }
    if (!dissipationless && gamma_zero && drive_is_antiperiodic(spec.drive)) {
        report.case3 = true;
        report.forced_zero.insert("Sx");
        report.forced_zero.insert("Sy");
        report.map_descriptions.push_back(
            "case 3: rho(t) -> Rz(pi) rho(t + T/2) Rz(pi)^dag; "
            "Sx, Sy flip sign under half-period shift, Sx~ = Sy~ = 0");
    }
    return report;
}

double verify_trajectory_symmetry(const SystemSpec& spec, const ThermalParams& params,
                                  int case_id, int horizon_periods, bool enforce,
                                  const SolverOptions& options) {
    spec.validate();
    params.validate();
    if (case_id < 1 || case_id > 3)
        throw InvalidParams("verify_trajectory_symmetry: case_id must be 1, 2 or 3");
    if (horizon_periods < 1)
        throw InvalidParams("verify_trajectory_symmetry: horizon must be >= 1 period");
    if (enforce) {
        const SymmetryReport report = classify(spec, params);
        const bool applies = (case_id == 1 && report.case1) || (case_id == 2 && report.case2) ||
                             (case_id == 3 && report.case3);
        if (!applies)
            throw CaseNotApplicable("verify_trajectory_symmetry: symmetry case " +
                                    std::to_string(case_id) + " does not apply");
    }

    const Rk4 rk(spec, params);
    const Mat sx_op = total_spin_operator(spec, Axis::X);
    const Mat sy_op = total_spin_operator(spec, Axis::Y);
    auto expect = [](const Mat& op, const Mat& rho) {
        return op.cwiseProduct(rho.transpose()).sum().real();
    };

    const double T = spec.drive.period();
    const int steps = even_steps_per_period(spec.drive, options, params.nu);
    const double dt = T / steps;

    if (case_id == 3) {
        if (!(params.nu > 0.0))
            throw InvalidParams("verify_trajectory_symmetry: case 3 needs nu > 0");
        // Relax onto the periodic attractor first.
        Mat rho = rk.target;
        const int floor_periods =
            std::max(20, static_cast<int>(std::ceil(10.0 / (params.nu * T))));
        bool converged = false;
        double residual = 0.0;
        for (int p = 0; p < options.max_periods; ++p) {
            const Mat prev = rho;
            for (int j = 0; j < steps; ++j) rk.step(rho, j * dt, dt);
            residual = (rho - prev).cwiseAbs().maxCoeff();
            if (p + 1 >= floor_periods && residual < options.tol_ss) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NotConverged("case 3: no periodic steady state", residual);

        const int total = horizon_periods * steps + steps / 2;
        std::vector<double> sx(total + 1), sy(total + 1);
        for (int j = 0; j <= total; ++j) {
            sx[j] = expect(sx_op, rho);
            sy[j] = expect(sy_op, rho);
            if (j < total) rk.step(rho, j * dt, dt);
        }
        double dev = 0.0;
        for (int j = 0; j + steps / 2 <= total; ++j)
            dev = std::max(dev, std::abs(sx[j + steps / 2] + sx[j]) +
                                    std::abs(sy[j + steps / 2] + sy[j]));
        return dev;
    }

    // Cases 1-2: compare the forward and backward branches from rho_beta(H0).
    const int total = horizon_periods * steps;
    const Mat& op = (case_id == 1) ? sx_op : sy_op;
    std::vector<double> fwd(total + 1), bwd(total + 1);
    Mat rho_f = rk.target;
    Mat rho_b = rk.target;
    for (int j = 0; j <= total; ++j) {
        fwd[j] = expect(op, rho_f);
        bwd[j] = expect(op, rho_b);
        if (j < total) {
            rk.step(rho_f, j * dt, dt);
            rk.step(rho_b, -(j * dt), -dt);
        }
    }
    double dev = 0.0;
    for (int j = 0; j <= total; ++j) dev = std::max(dev, std::abs(fwd[j] + bwd[j]));
    return dev;
}

}  // namespace acspin
