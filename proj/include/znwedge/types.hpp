#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace znwedge {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kImag{0.0, 1.0};

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Evaluation requested within the guard radius of a registered pole.
struct PoleProximity : Error {
    Complex pole;
    PoleProximity(const std::string& msg, Complex p) : Error(msg), pole(p) {}
};

struct NoFusionSolution : Error {
    using Error::Error;
};
// Masses too close to the triangle-inequality boundary for a stable solve.
struct ThresholdError : Error {
    using Error::Error;
};
struct DependencyMissing : Error {
    using Error::Error;
};
struct PoleRefinementFailure : Error {
    using Error::Error;
};
// No admissible contour radius separates the pole from its neighbors.
struct ContourConflict : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct QuadratureError : Error {
    using Error::Error;
};
struct CalibrationFailure : Error {
    std::vector<double> residuals;
    CalibrationFailure(const std::string& msg, std::vector<double> r)
        : Error(msg), residuals(std::move(r)) {}
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace znwedge
