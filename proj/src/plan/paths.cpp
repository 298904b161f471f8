#include "cubesim/plan/paths.hpp"

#include <cmath>

#include "cubesim/core/errors.hpp"

namespace cubesim::plan {

std::vector<Vec3> spiral_waypoints(double radius, double pitch, double turns, int count) {
    if (!(radius > 0.0) || !(turns > 0.0) || count < 8) {
        throw ArgumentError("spiral needs positive radius/turns and count >= 8");
    }
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(count));
    const double t_end = 2.0 * M_PI * turns;
    for (int i = 0; i < count; ++i) {
        const double t = t_end * static_cast<double>(i) / (count - 1);
        out.emplace_back(radius * std::cos(t), radius * std::sin(t),
                         pitch * t / (2.0 * M_PI));
    }
    return out;
}

std::vector<Vec3> mobius_waypoints(double radius, double half_width, int count) {
    if (!(radius > 0.0) || half_width < 0.0 || count < 8) {
        throw ArgumentError("moebius needs positive radius, half_width >= 0, count >= 8");
    }
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double t = 4.0 * M_PI * static_cast<double>(i) / count;
        const double ring = radius + half_width * std::cos(t / 2.0);
        out.emplace_back(ring * std::cos(t), ring * std::sin(t),
                         half_width * std::sin(t / 2.0));
    }
    return out;
}

} // namespace cubesim::plan
