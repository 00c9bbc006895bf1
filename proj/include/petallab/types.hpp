#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace petallab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Semigroup time; t <= 0 is the backward direction.
using FlowTime = double;

inline bool is_finite(Complex w) {
    return std::isfinite(w.real()) && std::isfinite(w.imag());
}

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

// -log(tanh d), evaluated so that large d does not underflow to -0.
inline double green_from_distance(double d) {
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    // tanh d = expm1(2d) / (expm1(2d) + 2)
    return std::log1p(2.0 / std::expm1(2.0 * d));
}

// Inverse of the above: d with tanh d = exp(-g).
inline double distance_from_green(double g) {
    if (g <= 0.0) return std::numeric_limits<double>::infinity();
    const double e = std::exp(-g);
    return 0.5 * (std::log1p(e) - std::log(-std::expm1(-g)));
}

}  // namespace petallab
