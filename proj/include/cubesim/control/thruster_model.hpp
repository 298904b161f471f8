#pragma once

#include "cubesim/model/thruster.hpp"

namespace cubesim::control {

/// Thrust from a normalized command: f(u) = c_u . [1, u, ..., u^5].
/// Throws ArgumentError when u is outside the declared command range.
double thrust_from_command(const ThrusterSpec &spec, double u);

/// Inverse of thrust_from_command by bracketed bisection on the monotone
/// polynomial, to 1e-9 N. Throws ArgumentError when f is unattainable
/// within the command range.
double command_from_thrust(const ThrusterSpec &spec, double f);

/// Electrical power for a thrust level: P(f) = c_f . [1, f, ..., f^5].
double thruster_power(const ThrusterSpec &spec, double f);

} // namespace cubesim::control
