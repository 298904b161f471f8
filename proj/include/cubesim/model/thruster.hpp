#pragma once

#include <array>

#include "cubesim/core/types.hpp"

namespace cubesim {

/// Degree-5 polynomial coefficients, lowest order first. Evaluated against
/// the basis [1, x, x^2, ..., x^5].
using Poly5 = std::array<double, 6>;

inline double eval_poly(const Poly5 &c, double x) {
    double acc = 0.0;
    for (int i = 5; i >= 0; --i) {
        acc = acc * x + c[static_cast<std::size_t>(i)];
    }
    return acc;
}

inline double eval_poly_derivative(const Poly5 &c, double x) {
    double acc = 0.0;
    for (int i = 5; i >= 1; --i) {
        acc = acc * x + static_cast<double>(i) * c[static_cast<std::size_t>(i)];
    }
    return acc;
}

/// A single thruster: mounting pose in the module frame, thrust limits,
/// and the polynomial command->thrust and thrust->power models.
struct ThrusterSpec {
    Vec3 position = Vec3::Zero();  // [m], module frame
    Vec3 direction = Vec3::UnitX(); // unit vector, module frame
    double f_min = -10.0;          // [N]
    double f_max = 10.0;           // [N]
    Poly5 cmd_poly{0.0, 10.0, 0.0, 0.0, 0.0, 0.0};  // thrust(u) [N]
    Poly5 power_poly{0.0, 0.0, 25.0, 0.0, 0.0, 0.0}; // power(f) [W]
    double cmd_min = -1.0; // declared command range
    double cmd_max = 1.0;

    /// Throws ArgumentError if any invariant is violated (non-unit direction,
    /// inverted limits, non-monotone command polynomial).
    void validate() const;
};

} // namespace cubesim
