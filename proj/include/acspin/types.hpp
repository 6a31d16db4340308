#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace acspin {

using complexd = std::complex<double>;

// Dense operator / density-matrix type. Dimensions are 2 (one spin) or 4
// (spin pair), so the storage is capped at 4x4 and lives on the stack.
using Mat = Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using Vec3 = Eigen::Vector3d;

inline constexpr double pi = 3.14159265358979323846;

struct InvalidParams : std::invalid_argument {
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

struct NotConverged : std::runtime_error {
    double residual;
    explicit NotConverged(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

struct NumericalBlowup : std::runtime_error {
    explicit NumericalBlowup(const std::string& what) : std::runtime_error(what) {}
};

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(const std::string& what) : std::runtime_error(what) {}
};

struct RangeTooNarrow : std::runtime_error {
    explicit RangeTooNarrow(const std::string& what) : std::runtime_error(what) {}
};

struct CaseNotApplicable : std::runtime_error {
    explicit CaseNotApplicable(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySweep : std::runtime_error {
    explicit EmptySweep(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientPoints : std::runtime_error {
    explicit InsufficientPoints(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace acspin
