#pragma once

#include <string>
#include <vector>

#include "acspin/spectrum.hpp"
#include "acspin/sweep.hpp"

namespace acspin {

// Full-precision decimal formatting (round-trips a double exactly).
std::string format_double(double v);

// Fixed sweep CSV: header "axis,Sx_avg,Sy_avg,Sz_avg,converged,periods,residual".
std::string sweep_csv(const SweepResult& result);

// Level-scan CSV: header "h,E1,...,Ed".
std::string level_scan_csv(const LevelScan& scan);

void write_file(const std::string& path, const std::string& body);

}  // namespace acspin
