#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"

#include "acspin/thermal.hpp"
#include "test_support.hpp"

using namespace acspin;
namespace ts = acspin::testing;

TEST_SUITE("thermal") {

TEST_CASE("infinite temperature gives the maximally mixed state") {
    const Mat h2 = build_static_hamiltonian(ts::single_spec(3.0, pi / 4, 1, 1));
    CHECK(ts::maxdiff(gibbs_state(h2, 0.0), 0.5 * Mat::Identity(2, 2)) <= 1e-15);

    const Mat h4 = build_static_hamiltonian(ts::pair_spec(3.0, pi / 4, 5, 5, 0, 1, 1));
    CHECK(ts::maxdiff(gibbs_state(h4, 0.0), 0.25 * Mat::Identity(4, 4)) <= 1e-15);
}

TEST_CASE("single-spin thermal magnetization is -tanh(beta h0 / 2) / 2") {
    const Mat h = build_static_hamiltonian(ts::single_spec(3.0, pi / 4, 1, 1));
    const Mat rho = gibbs_state(h, 10.0);
    CHECK(ts::expval(pauli_operator(Axis::Z), rho) ==
          doctest::Approx(-0.5 * std::tanh(15.0)).epsilon(1e-13));
    // Populations follow the Boltzmann ratio of the two Zeeman levels.
    CHECK(rho(0, 0).real() ==
          doctest::Approx(std::exp(-15.0) / (2.0 * std::cosh(15.0))).epsilon(1e-12));
    CHECK(std::abs(rho(0, 1)) <= 1e-15);
}

TEST_CASE("Gibbs state is a valid stationary thermal state for random Hamiltonians") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> ub(0.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = (trial % 2 == 0) ? 2 : 4;
        const Mat h = ts::random_hermitian(rng, d, 2.0);
        const double beta = ub(rng);
        const Mat rho = gibbs_state(h, beta);

        CHECK(std::abs(rho.trace() - complexd(1.0)) <= 1e-14);
        CHECK(ts::maxdiff(rho, rho.adjoint().eval()) <= 1e-14);
        CHECK(ts::sorted_eigs(rho).front() >= -1e-14);
        CHECK(ts::maxdiff(ts::comm(h, rho), Mat::Zero(d, d)) <= 1e-12);

        // Energy shifts never change the state.
        const Mat shifted = gibbs_state((h + 37.0 * Mat::Identity(d, d)).eval(), beta);
        CHECK(ts::maxdiff(rho, shifted) <= 1e-12);
    }
}

TEST_CASE("pair Gibbs state at finite temperature, isotropic exchange") {
    const SystemSpec spec = ts::pair_spec(3.0, pi / 4, 5, 5, 5, 1, 1);
    const Mat rho = gibbs_state(build_static_hamiltonian(spec), 2.0);

    CHECK(ts::expval(total_spin_operator(spec, Axis::Z), rho) ==
          doctest::Approx(-4.987575110279e-01).epsilon(1e-11));
    const double diag[4] = {6.128981778911e-06, 1.236359990311e-03, 1.236359990311e-03,
                            9.975211510376e-01};
    for (int k = 0; k < 4; ++k)
        CHECK(rho(k, k).real() == doctest::Approx(diag[k]).epsilon(1e-10));
    // ud/du coherence from the triplet-singlet population imbalance.
    CHECK(rho(1, 2).real() == doctest::Approx(1.236247734094e-03).epsilon(1e-10));
    CHECK(std::abs(rho(1, 2).imag()) <= 1e-15);
}

TEST_CASE("very low temperatures project onto the ground state without overflow") {
    const Mat h2 = build_static_hamiltonian(ts::single_spec(3.0, pi / 4, 1, 1));
    const Mat rho2 = gibbs_state(h2, 1e4);
    CHECK(rho2(0, 0).real() <= 1e-12);
    CHECK(rho2(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));

    const Mat h4 = build_static_hamiltonian(ts::pair_spec(3.0, pi / 4, 5, 5, 5, 1, 1));
    const Mat rho4 = gibbs_state(h4, 1e3);
    CHECK(rho4(3, 3).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho4.allFinite());
}

TEST_CASE("relaxation target honors the target mode") {
    SystemSpec spec = ts::single_spec(3.0, pi / 4, 1.3, 2.0);
    const Mat h0 = build_static_hamiltonian(spec);

    const ThermalParams stat = ts::thermal(2.5, 0.1, TargetMode::StaticTarget);
    for (double t : {0.0, 0.7, 13.2})
        CHECK(ts::maxdiff(relaxation_target(spec, stat, t), gibbs_state(h0, 2.5)) <= 1e-14);

    const ThermalParams inst = ts::thermal(2.5, 0.1, TargetMode::InstantaneousTarget);
    for (double t : {0.0, 0.7, 13.2}) {
        const Mat expected = gibbs_state(hamiltonian_at(spec, t), 2.5);
        CHECK(ts::maxdiff(relaxation_target(spec, inst, t), expected) <= 1e-14);
    }
    // The two targets differ once the drive is on.
    CHECK(ts::maxdiff(relaxation_target(spec, stat, 0.0),
                      relaxation_target(spec, inst, 0.0)) > 1e-3);
}

TEST_CASE("thermal parameter validation") {
    CHECK_THROWS_AS(ts::thermal(-1.0, 0.1).validate(), InvalidParams);
    CHECK_THROWS_AS(ts::thermal(std::numeric_limits<double>::infinity(), 0.1).validate(),
                    InvalidParams);
    CHECK_THROWS_AS(ts::thermal(1.0, -0.5).validate(), InvalidParams);
    CHECK_NOTHROW(ts::thermal(0.0, 0.0).validate());
    CHECK_THROWS_AS(gibbs_state(Mat::Identity(2, 2), -2.0), InvalidParams);
}

TEST_CASE("triplet statistical weight matches the brute-force partition ratio") {
    // Closed form: (2 cosh(beta h0) + 1) / (2 cosh(beta h0) + 1 + exp(-beta J)),
    // the thermal weight outside the singlet for isotropic exchange at h = 0.
    CHECK(singlet_weight(0.0, 3.0, 5.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(singlet_weight(0.0, 0.0, -2.0) == doctest::Approx(0.75).epsilon(1e-15));

    Eigen::Vector4cd s = Eigen::Vector4cd::Zero();
    s(1) = 1.0 / std::sqrt(2.0);
    s(2) = -1.0 / std::sqrt(2.0);
    for (double beta : {0.0, 0.3, 1.0, 2.0, 5.0})
        for (double h0 : {0.0, 1.0, 3.0})
            for (double J : {-4.0, -1.0, 0.0, 2.0, 5.0}) {
                const Mat h =
                    build_static_hamiltonian(ts::pair_spec(h0, pi / 4, J, J, J, 1, 1));
                const Mat rho = gibbs_state(h, beta);
                const double p_singlet = (s.adjoint() * rho * s)(0).real();
                const double w = singlet_weight(beta, h0, J);
                CHECK(std::abs(w - (1.0 - p_singlet)) <=
                      1e-12 * std::max(1.0, std::abs(w)));
            }
}

TEST_CASE("triplet weight limits: strong exchange and extreme fields") {
    // J -> +inf: the singlet is pushed far above every triplet level.
    CHECK(singlet_weight(2.0, 1.0, 1e8) == doctest::Approx(1.0).epsilon(1e-15));
    // J -> -inf: the singlet absorbs all the weight.
    CHECK(singlet_weight(2.0, 1.0, -1e8) <= 1e-300);
    // Huge beta*h0 must not overflow the cosh.
    CHECK(singlet_weight(10.0, 100.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isfinite(singlet_weight(1e4, 1e3, -50.0)));
}

}  // TEST_SUITE
