#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "acspin/harmonic_balance.hpp"
#include "acspin/liouville.hpp"
#include "acspin/perturbation.hpp"
#include "test_support.hpp"

using namespace acspin;
namespace ts = acspin::testing;

namespace {

// Canonical working point used throughout: h0 = 3, phi = pi/4, beta = 10,
// nu = 0.1, h(t) = sqrt(2) cos(omega t).
SystemSpec canonical(double omega) {
    return ts::single_spec(3.0, pi / 4, std::sqrt(2.0), omega);
}

const double kC = 0.5 * std::tanh(15.0);  // equilibrium |Sz| at the canonical point

}  // namespace

TEST_SUITE("liouville") {

TEST_CASE("the Gibbs state is stationary without a drive") {
    for (int which : {0, 1}) {
        SystemSpec spec = which == 0 ? canonical(1.5)
                                     : ts::pair_spec(3.0, pi / 4, 5, 5, 0, 1.0, 1.5);
        spec.drive.harmonics[0].amplitude = 0.0;
        const ThermalParams params = ts::thermal(10.0, 0.1);
        const Mat rho = gibbs_state(build_static_hamiltonian(spec), params.beta);
        CHECK(liouville_rhs(rho, spec, params, 0.3).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("the generator reproduces the driven Bloch equations") {
    SystemSpec spec = ts::single_spec(1.3, 0.6, 0.0, 2.0);
    spec.drive.harmonics = {{1, 0.8, 0.3}, {2, 0.25, -1.1}};
    const ThermalParams params = ts::thermal(1.7, 0.23);
    const double alpha = std::sin(0.6), gamma = std::cos(0.6);
    const double c = 0.5 * std::tanh(0.5 * 1.7 * 1.3);
    const Mat sx = pauli_operator(Axis::X);
    const Mat sy = pauli_operator(Axis::Y);
    const Mat sz = pauli_operator(Axis::Z);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Mat rho = ts::random_density(rng, 2);
        const double t = ut(rng);
        const double h = spec.drive.value(t);
        const Mat dot = liouville_rhs(rho, spec, params, t);

        const double mx = ts::expval(sx, rho), my = ts::expval(sy, rho),
                     mz = ts::expval(sz, rho);
        const double ex = (1.3 + gamma * h) * my - 0.23 * mx;
        const double ey = alpha * h * mz - (1.3 + gamma * h) * mx - 0.23 * my;
        const double ez = -alpha * h * my - 0.23 * (mz + c);

        CHECK(ts::expval(sx, dot) == doctest::Approx(ex).epsilon(1e-12));
        CHECK(ts::expval(sy, dot) == doctest::Approx(ey).epsilon(1e-12));
        CHECK(ts::expval(sz, dot) == doctest::Approx(ez).epsilon(1e-12));
        CHECK(std::abs(dot.trace()) <= 1e-14);
    }
}

TEST_CASE("the generator is trace-free for unit-trace states in both target modes") {
    std::mt19937 rng(7);
    const SystemSpec spec = canonical(1.5);
    for (TargetMode mode : {TargetMode::StaticTarget, TargetMode::InstantaneousTarget}) {
        const ThermalParams params = ts::thermal(10.0, 0.4, mode);
        for (int trial = 0; trial < 5; ++trial) {
            const Mat rho = ts::random_density(rng, 2);
            CHECK(std::abs(liouville_rhs(rho, spec, params, 0.9).trace()) <= 1e-14);
        }
    }
}

TEST_CASE("free decay follows the closed-form relaxation and precession") {
    // No drive: <S+>(t) = e^{-(nu + i h0)t} <S+>(0), <Sz> relaxes exponentially.
    const double h0 = 2.1, nu = 0.37, beta = 3.0;
    SystemSpec spec = ts::single_spec(h0, pi / 4, 0.0, 1.5);
    const ThermalParams params = ts::thermal(beta, nu);
    const double c = 0.5 * std::tanh(0.5 * beta * h0);

    Mat rho0(2, 2);
    const double rx = 0.3, ry = -0.2, rz = 0.4;  // Bloch vector, |r| < 1
    rho0 << 0.5 * (1.0 + rz), 0.5 * complexd(rx, -ry), 0.5 * complexd(rx, ry),
        0.5 * (1.0 - rz);

    const double t1 = 2.0 * spec.drive.period();
    const Mat rho = integrate(rho0, spec, params, 0.0, t1, 4096);

    const complexd sp0(0.5 * rx, 0.5 * ry);  // <Sx> + i <Sy> at t = 0
    const complexd sp = sp0 * std::exp(complexd(-nu * t1, -h0 * t1));
    const double szt = -c + (0.5 * rz + c) * std::exp(-nu * t1);

    CHECK(ts::expval(pauli_operator(Axis::X), rho) == doctest::Approx(sp.real()).epsilon(1e-10));
    CHECK(ts::expval(pauli_operator(Axis::Y), rho) == doctest::Approx(sp.imag()).epsilon(1e-10));
    CHECK(ts::expval(pauli_operator(Axis::Z), rho) == doctest::Approx(szt).epsilon(1e-10));
}

TEST_CASE("integrate validates resolution and span") {
    const SystemSpec spec = canonical(1.5);
    const ThermalParams params = ts::thermal(10.0, 0.1);
    const Mat rho = gibbs_state(build_static_hamiltonian(spec), 10.0);
    const double T = spec.drive.period();

    CHECK_THROWS_AS(integrate(rho, spec, params, 0.0, T, 32), InvalidParams);
    CHECK_THROWS_AS(integrate(rho, spec, params, 0.0, 10.3 * (T / 256.0), 256),
                    InvalidParams);
    CHECK_NOTHROW(integrate(rho, spec, params, 0.0, 10.0 * (T / 256.0), 256));
    CHECK_NOTHROW(integrate(rho, spec, params, T, 0.0, 256));  // backwards is legal
}

TEST_CASE("integration blows the whistle on divergent trajectories") {
    // Grossly under-resolved stiff relaxation: nu * dt >> 1 destabilizes RK4.
    SystemSpec spec = ts::single_spec(3.0, pi / 4, 1.0, 1e-3);
    const ThermalParams params = ts::thermal(1.0, 50.0);
    const Mat rho = gibbs_state(build_static_hamiltonian(spec), 1.0);
    CHECK_THROWS_AS(integrate(rho, spec, params, 0.0, spec.drive.period(), 64),
                    NumericalBlowup);
}

TEST_CASE("dissipationless evolution is reversible and isospectral") {
    const SystemSpec spec = canonical(1.5);
    const ThermalParams params = ts::thermal(10.0, 0.0);
    std::mt19937 rng(5);
    const Mat rho0 = ts::random_density(rng, 2);
    const double T = spec.drive.period();

    const Mat fwd = integrate(rho0, spec, params, 0.0, T, 4096);
    const Mat back = integrate(fwd, spec, params, T, 0.0, 4096);
    CHECK(ts::maxdiff(back, rho0) <= 1e-8);

    // Unitary flow preserves the spectrum of rho.
    const Mat late = integrate(rho0, spec, params, 0.0, 2.0 * T, 4096);
    const auto e0 = ts::sorted_eigs(rho0);
    const auto e1 = ts::sorted_eigs(late);
    for (int k = 0; k < 2; ++k) CHECK(e1[k] == doctest::Approx(e0[k]).epsilon(1e-9));
}

TEST_CASE("trace and Hermiticity stay pinned over ten thousand steps") {
    const SystemSpec spec = canonical(1.5);
    const ThermalParams params = ts::thermal(10.0, 0.1);
    Mat rho = gibbs_state(build_static_hamiltonian(spec), 10.0);
    rho = integrate(rho, spec, params, 0.0, 40.0 * spec.drive.period(), 256);
    CHECK(std::abs(rho.trace() - complexd(1.0)) <= 1e-10);
    CHECK(ts::maxdiff(rho, rho.adjoint().eval()) <= 1e-12);
    CHECK(rho.allFinite());
}

TEST_CASE("the integrator converges at fourth order") {
    const SystemSpec spec = canonical(1.5);
    const ThermalParams params = ts::thermal(10.0, 0.1);
    const Mat rho0 = gibbs_state(build_static_hamiltonian(spec), 10.0);
    const double T = spec.drive.period();

    const Mat ref = integrate(rho0, spec, params, 0.0, T, 8192);
    const double e1 = ts::maxdiff(integrate(rho0, spec, params, 0.0, T, 128), ref);
    const double e2 = ts::maxdiff(integrate(rho0, spec, params, 0.0, T, 256), ref);
    const double ratio = e1 / e2;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("steady state without a drive is the thermal state") {
    SystemSpec spec = canonical(1.5);
    spec.drive.harmonics[0].amplitude = 0.0;
    const PeriodicSolution sol = steady_state(spec, ts::thermal(10.0, 0.1));
    CHECK(sol.converged);
    CHECK(std::abs(sol.averages(0)) <= 1e-12);
    CHECK(std::abs(sol.averages(1)) <= 1e-12);
    CHECK(sol.averages(2) == doctest::Approx(-kC).epsilon(1e-12));
    // Convergence at the floor: the state never moves.
    CHECK(sol.periods_used >= 21);
    CHECK(sol.periods_used <= 30);
    for (const auto& [n, a] : sol.harmonics)
        if (n != 0)
            for (const auto& comp : a) CHECK(std::abs(comp) <= 1e-13);
}

TEST_CASE("time stepping reproduces the frozen steady-state averages") {
    SolverOptions opts;
    opts.max_dt = 1e-3;

    struct Golden {
        double omega, sx, sy, sz;
    };
    const Golden stat[] = {
        {0.75, 2.525826142010e-02, 2.379139629624e-03, -4.538840725313e-01},
        {1.50, 1.377268855882e-02, 1.054309374933e-02, -1.974798760788e-01},
    };
    for (const auto& g : stat) {
        const PeriodicSolution sol =
            steady_state(canonical(g.omega), ts::thermal(10.0, 0.1), opts);
        CHECK(sol.converged);
        CHECK(sol.residual <= 1e-10);
        CHECK(sol.trace_drift <= 1e-9);
        CHECK(sol.herm_drift <= 1e-9);
        CHECK(std::abs(sol.averages(0) - g.sx) <= 5e-9);
        CHECK(std::abs(sol.averages(1) - g.sy) <= 5e-9);
        CHECK(std::abs(sol.averages(2) - g.sz) <= 5e-9);
    }

    const PeriodicSolution inst = steady_state(
        canonical(1.5), ts::thermal(10.0, 0.1, TargetMode::InstantaneousTarget), opts);
    CHECK(std::abs(inst.averages(0) - 1.552073652328e-02) <= 5e-9);
    CHECK(std::abs(inst.averages(1) - 8.500638722181e-03) <= 5e-9);
    CHECK(std::abs(inst.averages(2) - -2.180642081183e-01) <= 5e-9);
}

TEST_CASE("harmonic balance reproduces the frozen steady-state averages") {
    struct Golden {
        double omega, sx, sy, sz;
    };
    const Golden singles[] = {
        {0.75, 2.525826142010e-02, 2.379139629624e-03, -4.538840725313e-01},
        {1.50, 1.377268855882e-02, 1.054309374933e-02, -1.974798760788e-01},
        {3.00, 2.920552579539e-03, 1.608397996939e-02, -2.040115349789e-02},
    };
    for (const auto& g : singles) {
        const PeriodicSolution sol =
            harmonic_balance_steady_state(canonical(g.omega), ts::thermal(10.0, 0.1));
        CHECK(sol.converged);
        CHECK(std::abs(sol.averages(0) - g.sx) <= 1e-10);
        CHECK(std::abs(sol.averages(1) - g.sy) <= 1e-10);
        CHECK(std::abs(sol.averages(2) - g.sz) <= 1e-10);
        CHECK(sol.trace_drift <= 1e-12);
        CHECK(sol.herm_drift <= 1e-12);
    }

    const PeriodicSolution inst = harmonic_balance_steady_state(
        canonical(1.5), ts::thermal(10.0, 0.1, TargetMode::InstantaneousTarget));
    CHECK(std::abs(inst.averages(0) - 1.552073652328e-02) <= 1e-10);
    CHECK(std::abs(inst.averages(1) - 8.500638722181e-03) <= 1e-10);
    CHECK(std::abs(inst.averages(2) - -2.180642081183e-01) <= 1e-10);

    const Golden pairs[] = {
        {1.0, -1.156822621549e-01, 1.140164847655e-02, -3.210357851735e-01},
        {3.0, -2.065188034641e-02, -1.048552765980e-02, -2.715663396590e-01},
    };
    for (const auto& g : pairs) {
        const SystemSpec spec = ts::pair_spec(3.0, pi / 4, 5, 5, 0, std::sqrt(2.0), g.omega);
        const PeriodicSolution sol =
            harmonic_balance_steady_state(spec, ts::thermal(10.0, 0.1));
        CHECK(std::abs(sol.averages(0) - g.sx) <= 1e-10);
        CHECK(std::abs(sol.averages(1) - g.sy) <= 1e-10);
        CHECK(std::abs(sol.averages(2) - g.sz) <= 1e-10);
    }
}

TEST_CASE("spectral and time-stepping solvers agree across the band") {
    SolverOptions opts;
    opts.max_dt = 1e-3;
    const ThermalParams params = ts::thermal(10.0, 0.1);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double omega =
            std::exp(std::log(0.2) + (std::log(8.0) - std::log(0.2)) * k / 49.0);
        const SystemSpec spec = canonical(omega);
        const PeriodicSolution hb = harmonic_balance_steady_state(spec, params);
        const PeriodicSolution td = steady_state(spec, params, opts);
        worst = std::max(worst, (hb.averages - td.averages).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("the periodic attractor does not depend on the initial state") {
    const SystemSpec spec = canonical(1.5);
    const ThermalParams params = ts::thermal(10.0, 0.1);
    const PeriodicSolution a = steady_state(spec, params);
    Mat up = Mat::Zero(2, 2);
    up(0, 0) = 1.0;  // fully polarized, far from equilibrium
    const PeriodicSolution b = steady_state(spec, params, {}, up);
    CHECK((a.averages - b.averages).cwiseAbs().maxCoeff() <= 2e-9);
}

TEST_CASE("weak drives reproduce the quadratic response formulas") {
    const double eps = 0.01;
    for (double omega : {0.5, 1.5, 5.0}) {
        const SystemSpec spec = ts::single_spec(3.0, pi / 4, eps, omega);
        const PeriodicSolution sol =
            harmonic_balance_steady_state(spec, ts::thermal(10.0, 0.1));
        const PerturbativeAverages p = perturbative_averages(3.0, pi / 4, 10.0, 0.1, eps, omega);
        CHECK(p.valid());
        CHECK(std::abs(sol.averages(0) - p.a0x) <= 0.05 * std::abs(p.a0x));
        CHECK(std::abs(sol.averages(1) - p.a0y) <= 0.05 * std::abs(p.a0y));
        CHECK(std::abs(sol.averages(2) - p.a0z) <= 0.05 * std::abs(p.a0z + kC) + 1e-15);
    }
    // On resonance the corrections are larger but still bounded.
    const PeriodicSolution res =
        harmonic_balance_steady_state(ts::single_spec(3.0, pi / 4, eps, 3.0),
                                      ts::thermal(10.0, 0.1));
    const PerturbativeAverages p = perturbative_averages(3.0, pi / 4, 10.0, 0.1, eps, 3.0);
    CHECK(std::abs(res.averages(1) - p.a0y) <= 0.15 * std::abs(p.a0y));
}

TEST_CASE("slow driving pins the moments near the instantaneous equilibrium") {
    const SystemSpec spec = canonical(0.05);
    const PeriodicSolution stat =
        harmonic_balance_steady_state(spec, ts::thermal(10.0, 0.1));
    CHECK(stat.averages(2) <= -0.45);
    CHECK(std::abs(stat.averages(1)) <= 2.5e-3);

    const PeriodicSolution inst = harmonic_balance_steady_state(
        spec, ts::thermal(10.0, 0.1, TargetMode::InstantaneousTarget));
    CHECK(std::abs(inst.averages(1)) <= 1e-5);
    CHECK(std::abs(stat.averages(1)) >= 5.0 * std::abs(inst.averages(1)));
}

TEST_CASE("harmonic balance: drive-free limit and truncation stability") {
    SystemSpec quiet = canonical(1.5);
    quiet.drive.harmonics[0].amplitude = 0.0;
    const PeriodicSolution sol =
        harmonic_balance_steady_state(quiet, ts::thermal(10.0, 0.1));
    CHECK(std::abs(sol.averages(0)) <= 1e-13);
    CHECK(std::abs(sol.averages(1)) <= 1e-13);
    CHECK(sol.averages(2) == doctest::Approx(-kC).epsilon(1e-12));
    for (const auto& [n, a] : sol.harmonics)
        if (n != 0)
            for (const auto& comp : a) CHECK(std::abs(comp) <= 1e-13);

    // Doubling the truncation does not move a converged solution.
    const SystemSpec spec = ts::single_spec(3.0, pi / 4, 0.1, 1.5);
    const ThermalParams params = ts::thermal(10.0, 0.1);
    const int n0 = auto_harmonics(spec, params);
    CHECK(n0 >= 3);
    const PeriodicSolution s1 = harmonic_balance_steady_state(spec, params, n0);
    const PeriodicSolution s2 = harmonic_balance_steady_state(spec, params, 2 * n0);
    CHECK((s1.averages - s2.averages).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("fourier_harmonic recovers pure tones exactly") {
    const int m = 1000;
    std::vector<double> cosine(m), constant(m, 0.37), mixed(m);
    for (int j = 0; j < m; ++j) {
        const double x = 2.0 * pi * j / m;
        cosine[j] = 0.7 * std::cos(x + 0.3);
        mixed[j] = 0.2 + 0.5 * std::cos(x) - 0.3 * std::sin(2.0 * x);
    }
    const complexd a1 = fourier_harmonic(cosine, 1);
    CHECK(std::abs(a1 - 0.35 * std::exp(complexd(0.0, 0.3))) <= 1e-12);
    CHECK(std::abs(fourier_harmonic(cosine, -1) - std::conj(a1)) <= 1e-12);
    CHECK(std::abs(fourier_harmonic(cosine, 0)) <= 1e-12);
    CHECK(std::abs(fourier_harmonic(cosine, 2)) <= 1e-12);

    CHECK(std::abs(fourier_harmonic(constant, 0) - 0.37) <= 1e-14);
    CHECK(std::abs(fourier_harmonic(constant, 3)) <= 1e-13);

    // Parseval: the band-limited signal's power is fully captured by |n| <= 2.
    double power = 0.0;
    for (double f : mixed) power += f * f;
    power /= m;
    double sum = 0.0;
    for (int n = -2; n <= 2; ++n) sum += std::norm(fourier_harmonic(mixed, n));
    CHECK(sum == doctest::Approx(power).epsilon(1e-12));

    CHECK_THROWS_AS(fourier_harmonic(std::vector<double>{}, 1), InvalidParams);
}

TEST_CASE("solver guards") {
    const SystemSpec spec = canonical(1.5);
    CHECK_THROWS_AS(steady_state(spec, ts::thermal(10.0, 0.0)), InvalidParams);
    CHECK_THROWS_AS(harmonic_balance_steady_state(spec, ts::thermal(10.0, 0.0)),
                    InvalidParams);
    CHECK_THROWS_AS(harmonic_balance_steady_state(spec, ts::thermal(10.0, 0.1), -1),
                    InvalidParams);
    // An explicit truncation below three times the top drive harmonic is refused.
    CHECK_THROWS_AS(harmonic_balance_steady_state(spec, ts::thermal(10.0, 0.1), 2),
                    InvalidParams);
    CHECK_NOTHROW(harmonic_balance_steady_state(spec, ts::thermal(10.0, 0.1), 40));
}

TEST_CASE("the period cap raises NotConverged with the residual attached") {
    // One period is far below the floor needed at this dissipation rate.
    SolverOptions opts;
    opts.max_periods = 5;
    opts.tol_ss = 1e-14;
    try {
        steady_state(canonical(1.5), ts::thermal(10.0, 0.1), opts);
        FAIL("expected NotConverged");
    } catch (const NotConverged& e) {
        CHECK(e.residual > 0.0);
        CHECK(std::isfinite(e.residual));
    }
}

}  // TEST_SUITE
