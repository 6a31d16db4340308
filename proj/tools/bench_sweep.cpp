// Timing harness for the sweep engine: OpenMP grid parallelism against the
// serial reference, plus the harmonic-balance fast path against time
// stepping. Also asserts that parallel and serial rows agree bit for bit.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "acspin/harmonic_balance.hpp"
#include "acspin/sweep.hpp"

#ifdef ACSPIN_HAVE_OPENMP
#include <omp.h>
#endif

using namespace acspin;

namespace {

template <typename F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int points = 64;
    if (argc > 1) points = std::atoi(argv[1]);

    SweepConfig config;
    config.system = SystemSpec::single_spin(3.0, pi / 4,
                                            DriveWaveform::single_cosine(std::sqrt(2.0), 1.0));
    config.thermal.beta = 10.0;
    config.thermal.nu = 0.1;
    config.axis = SweepAxis::Omega;
    config.grid = {0.2, 8.0, points, GridSpacing::Log};

#ifdef ACSPIN_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled at build time\n");
#endif
    std::printf("grid: %d omega points, timestep solver\n", points);

    SweepResult serial, parallel;
    const double t_serial = timed([&] { serial = run_sweep_serial(config); });
    const double t_parallel = timed([&] { parallel = run_sweep(config); });
    std::printf("serial:   %8.3f s\n", t_serial);
    std::printf("parallel: %8.3f s  (speedup %.2fx)\n", t_parallel, t_serial / t_parallel);

    for (std::size_t k = 0; k < serial.rows.size(); ++k) {
        const SweepRow& a = serial.rows[k];
        const SweepRow& b = parallel.rows[k];
        if (std::memcmp(&a.sx, &b.sx, sizeof(double)) || std::memcmp(&a.sy, &b.sy, sizeof(double)) ||
            std::memcmp(&a.sz, &b.sz, sizeof(double))) {
            std::printf("MISMATCH at row %zu\n", k);
            return 1;
        }
    }
    std::printf("serial and parallel rows identical\n");

    config.solver.method = SolveMethod::HarmonicBalance;
    SweepResult hb;
    const double t_hb = timed([&] { hb = run_sweep(config); });
    std::printf("harmonic balance: %8.3f s  (%.2fx vs serial timestep)\n", t_hb,
                t_serial / t_hb);
    double worst = 0.0;
    for (std::size_t k = 0; k < hb.rows.size(); ++k)
        worst = std::max(worst, std::abs(hb.rows[k].sy - serial.rows[k].sy));
    std::printf("max |Sy~| discrepancy hb vs timestep: %.3e\n", worst);
    return worst < 1e-6 ? 0 : 1;
}
