#include "cubesim/control/thruster_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubesim/core/errors.hpp"

namespace cubesim::control {

double thrust_from_command(const ThrusterSpec &spec, double u) {
    if (u < spec.cmd_min - 1e-12 || u > spec.cmd_max + 1e-12) {
        std::ostringstream msg;
        msg << "command " << u << " outside declared range [" << spec.cmd_min << ", "
            << spec.cmd_max << "]";
        throw ArgumentError(msg.str());
    }
    return eval_poly(spec.cmd_poly, u);
}

double command_from_thrust(const ThrusterSpec &spec, double f) {
    double lo = spec.cmd_min;
    double hi = spec.cmd_max;
    double f_lo = eval_poly(spec.cmd_poly, lo);
    double f_hi = eval_poly(spec.cmd_poly, hi);
    if (f_lo > f_hi) { // monotone decreasing map
        std::swap(lo, hi);
        std::swap(f_lo, f_hi);
    }
    const double tol = 1e-9;
    if (f < f_lo - tol || f > f_hi + tol) {
        std::ostringstream msg;
        msg << "thrust " << f << " N outside attainable range [" << f_lo << ", " << f_hi << "]";
        throw ArgumentError(msg.str());
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval_poly(spec.cmd_poly, mid);
        if (std::abs(fm - f) < tol) {
            return mid;
        }
        if (fm < f) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double thruster_power(const ThrusterSpec &spec, double f) {
    return eval_poly(spec.power_poly, f);
}

} // namespace cubesim::control
