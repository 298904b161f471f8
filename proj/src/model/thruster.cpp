#include "cubesim/model/thruster.hpp"

#include <cmath>
#include <sstream>

#include "cubesim/core/errors.hpp"

namespace cubesim {

void ThrusterSpec::validate() const {
    if (std::abs(direction.norm() - 1.0) > 1e-9) {
        throw ArgumentError("thruster direction must be a unit vector");
    }
    if (!(f_min <= 0.0 && 0.0 <= f_max)) {
        throw ArgumentError("thruster limits must satisfy f_min <= 0 <= f_max");
    }
    if (!(cmd_min < cmd_max)) {
        throw ArgumentError("thruster command range is empty");
    }
    // Strict monotonicity of thrust(u) over the declared command range,
    // checked on a dense grid of the derivative.
    const int n = 64;
    const bool increasing = eval_poly(cmd_poly, cmd_max) > eval_poly(cmd_poly, cmd_min);
    for (int i = 0; i <= n; ++i) {
        const double u = cmd_min + (cmd_max - cmd_min) * static_cast<double>(i) / n;
        const double d = eval_poly_derivative(cmd_poly, u);
        if ((increasing && d <= 0.0) || (!increasing && d >= 0.0)) {
            std::ostringstream msg;
            msg << "thruster command polynomial is not strictly monotone at u=" << u;
            throw ArgumentError(msg.str());
        }
    }
}

} // namespace cubesim
