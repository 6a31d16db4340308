#include "acspin/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <vector>

#include "acspin/csv.hpp"
#include "acspin/harmonic_balance.hpp"
#include "acspin/spectrum.hpp"

#ifdef ACSPIN_HAVE_OPENMP
#include <omp.h>
#endif

namespace acspin {

std::vector<double> GridSpec::values() const {
    validate();
    std::vector<double> v(points);
    if (spacing == GridSpacing::Linear) {
        for (int k = 0; k < points; ++k)
            v[k] = start + (stop - start) * k / static_cast<double>(points - 1);
    } else {
        const double l0 = std::log(start);
        const double l1 = std::log(stop);
        for (int k = 0; k < points; ++k)
            v[k] = std::exp(l0 + (l1 - l0) * k / static_cast<double>(points - 1));
    }
    return v;
}

namespace {

SweepRow evaluate_point(const SweepConfig& config, double value) {
    SystemSpec spec = config.system;
    ThermalParams thermal = config.thermal;
    switch (config.axis) {
        case SweepAxis::Omega: spec.drive.omega = value; break;
        case SweepAxis::Nu: thermal.nu = value; break;
        case SweepAxis::Beta: thermal.beta = value; break;
    }
    SweepRow row;
    row.axis = value;
    try {
        const PeriodicSolution sol =
            config.solver.method == SolveMethod::Timestep
                ? steady_state(spec, thermal, config.solver.options)
                : harmonic_balance_steady_state(spec, thermal, config.solver.n_harmonics);
        row.sx = sol.averages(0);
        row.sy = sol.averages(1);
        row.sz = sol.averages(2);
        row.converged = sol.converged;
        row.periods = sol.periods_used;
        row.residual = sol.residual;
    } catch (const NotConverged& e) {
        // Not fatal for a sweep: the row is kept, flagged, with no averages.
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.sx = row.sy = row.sz = nan;
        row.converged = false;
        row.periods = config.solver.options.max_periods;
        row.residual = e.residual;
    }
    return row;
}

// Evaluate a batch of axis values. Points are independent, so the parallel
// loop writes by index and the result is identical for any worker count.
std::vector<SweepRow> evaluate_batch(const SweepConfig& config,
                                     const std::vector<double>& values, bool parallel) {
    const int n = static_cast<int>(values.size());
    std::vector<SweepRow> rows(n);
    std::vector<std::exception_ptr> errors(n);
#ifdef ACSPIN_HAVE_OPENMP
    const int threads = config.workers > 0 ? config.workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (parallel)
#else
    (void)parallel;
#endif
    for (int k = 0; k < n; ++k) {
        try {
            rows[k] = evaluate_point(config, values[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (int k = 0; k < n; ++k)
        if (errors[k]) std::rethrow_exception(errors[k]);
    return rows;
}

void sort_dedupe(std::vector<SweepRow>& rows) {
    std::sort(rows.begin(), rows.end(),
              [](const SweepRow& a, const SweepRow& b) { return a.axis < b.axis; });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const SweepRow& a, const SweepRow& b) {
                               return std::abs(a.axis - b.axis) <=
                                      1e-12 * std::max(1.0, std::abs(a.axis));
                           }),
               rows.end());
}

// Indices of interior local maxima of |Sy~|, strongest first.
std::vector<int> local_maxima(const std::vector<SweepRow>& rows) {
    std::vector<int> idx;
    for (int j = 1; j + 1 < static_cast<int>(rows.size()); ++j) {
        const double c = std::abs(rows[j].sy);
        if (c >= std::abs(rows[j - 1].sy) && c >= std::abs(rows[j + 1].sy) &&
            (c > std::abs(rows[j - 1].sy) || c > std::abs(rows[j + 1].sy)))
            idx.push_back(j);
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(rows[a].sy) > std::abs(rows[b].sy);
    });
    return idx;
}

SweepResult run_sweep_impl(const SweepConfig& config, bool parallel) {
    config.system.validate();
    config.thermal.validate();
    std::vector<double> values;
    if (config.explicit_grid) {
        values = *config.explicit_grid;
        if (values.size() < 2) throw InvalidParams("explicit grid needs at least 2 points");
        std::sort(values.begin(), values.end());
    } else {
        values = config.grid.values();
    }

    SweepResult result;
    result.rows = evaluate_batch(config, values, parallel);
    sort_dedupe(result.rows);

    if (config.axis == SweepAxis::Omega) {
        for (int pass = 0; pass < config.refine_passes; ++pass) {
            const auto peaks = local_maxima(result.rows);
            std::vector<double> extra;
            const int npeaks = std::min<int>(config.refine_peaks, peaks.size());
            for (int p = 0; p < npeaks; ++p) {
                const int j = peaks[p];
                const int lo = std::max(0, j - 2);
                const int hi = std::min<int>(result.rows.size() - 1, j + 2);
                const double a = result.rows[lo].axis;
                const double b = result.rows[hi].axis;
                for (int k = 0; k < config.refine_points; ++k)
                    extra.push_back(a + (b - a) * (k + 1) /
                                            static_cast<double>(config.refine_points + 1));
            }
            if (extra.empty()) break;
            std::sort(extra.begin(), extra.end());
            const auto fresh = evaluate_batch(config, extra, parallel);
            result.rows.insert(result.rows.end(), fresh.begin(), fresh.end());
            sort_dedupe(result.rows);
        }
        if (result.rows.size() >= 2) result.metrics.i_nl = inl_metric(result);
        for (int j : local_maxima(result.rows)) {
            if (result.metrics.peak_positions.size() >= 8) break;
            result.metrics.peak_positions.emplace_back(result.rows[j].axis,
                                                       std::abs(result.rows[j].sy));
        }
    }

    if (!config.output.empty()) write_file(config.output, sweep_csv(result));
    return result;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) { return run_sweep_impl(config, true); }

SweepResult run_sweep_serial(const SweepConfig& config) {
    return run_sweep_impl(config, false);
}

double inl_metric(const SweepResult& result) {
    if (result.rows.size() < 2)
        throw EmptySweep("inl_metric: need at least 2 sweep rows");
    double max_sy = 0.0, max_sz = 0.0;
    for (const auto& row : result.rows) {
        max_sy = std::max(max_sy, std::abs(row.sy));
        max_sz = std::max(max_sz, std::abs(row.sz));
    }
    if (max_sz == 0.0) throw EmptySweep("inl_metric: Sz~ vanishes on every row");
    return 100.0 * max_sy / max_sz;
}

double fit_scaling_exponent(const SweepResult& result, Axis component, double lo, double hi) {
    std::vector<double> lx, ly;
    for (const auto& row : result.rows) {
        if (row.axis < lo || row.axis > hi) continue;
        const double s = component == Axis::X ? row.sx : component == Axis::Y ? row.sy : row.sz;
        if (row.axis <= 0.0 || std::abs(s) <= 0.0) continue;
        lx.push_back(std::log(row.axis));
        ly.push_back(std::log(std::abs(s)));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 4)
        throw InsufficientPoints("fit_scaling_exponent: need at least 4 usable rows in range");
    double mx = 0.0, my = 0.0;
    for (int k = 0; k < n; ++k) {
        mx += lx[k];
        my += ly[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int k = 0; k < n; ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
    }
    return sxy / sxx;
}

std::vector<double> default_inl_grid(const SystemSpec& spec) {
    spec.validate();
    GridSpec base{0.05, 8.0, 200, GridSpacing::Log};
    std::vector<double> grid = base.values();

    std::vector<double> centers = {spec.h0};
    if (spec.kind == SpinKind::SpinPair) {
        // Resonances of the pair track the frozen-level spacings where the two
        // lowest levels pinch; pick up both the pinch gap and the full spread.
        double amp = 0.0;
        for (const auto& hm : spec.drive.harmonics) amp += std::abs(hm.amplitude);
        if (amp > 0.0) {
            try {
                const auto [h_star, gap] = min_gap_scan(spec, {0, 1}, {-amp, amp}, 401);
                const auto levels = frozen_levels(spec, h_star);
                centers.push_back(gap);
                centers.push_back(levels.back() - levels.front());
            } catch (const RangeTooNarrow&) {
                // no pinch inside the drive range; the h0 window is still added
            }
        }
    }
    for (double c : centers) {
        if (!(c > 0.0)) continue;
        const double a = std::max(0.9 * c, 0.05);
        const double b = std::min(1.1 * c, 8.0);
        if (!(b > a)) continue;
        for (int k = 0; k < 100; ++k) grid.push_back(a + (b - a) * k / 99.0);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) {
                               return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
                           }),
               grid.end());
    return grid;
}

}  // namespace acspin
