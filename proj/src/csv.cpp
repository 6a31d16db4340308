#include "acspin/csv.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace acspin {

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "axis,Sx_avg,Sy_avg,Sz_avg,converged,periods,residual\n";
    for (const auto& row : result.rows) {
        out += format_double(row.axis);
        out += ',';
        out += format_double(row.sx);
        out += ',';
        out += format_double(row.sy);
        out += ',';
        out += format_double(row.sz);
        out += ',';
        out += row.converged ? '1' : '0';
        out += ',';
        out += std::to_string(row.periods);
        out += ',';
        out += format_double(row.residual);
        out += '\n';
    }
    return out;
}

std::string level_scan_csv(const LevelScan& scan) {
    const std::size_t d = scan.levels.empty() ? 0 : scan.levels.front().size();
    std::string out = "h";
    for (std::size_t k = 1; k <= d; ++k) out += ",E" + std::to_string(k);
    out += '\n';
    for (std::size_t j = 0; j < scan.h_values.size(); ++j) {
        out += format_double(scan.h_values[j]);
        for (double e : scan.levels[j]) {
            out += ',';
            out += format_double(e);
        }
        out += '\n';
    }
    return out;
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << body;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace acspin
