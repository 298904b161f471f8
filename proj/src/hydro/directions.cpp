#include "cubesim/hydro/directions.hpp"

#include <cmath>

#include "cubesim/core/errors.hpp"

namespace cubesim::hydro {

DirectionSet fibonacci_directions(int n_s) {
    if (n_s < 1) {
        throw ArgumentError("direction count must be >= 1");
    }
    DirectionSet set;
    set.directions.reserve(static_cast<std::size_t>(n_s));
    const double golden = M_PI * (1.0 + std::sqrt(5.0));
    for (int i = 0; i < n_s; ++i) {
        const double phi = std::acos(std::clamp(1.0 - 2.0 * i / n_s, -1.0, 1.0));
        const double theta = golden * static_cast<double>(i);
        const double sp = std::sin(phi);
        set.directions.emplace_back(std::cos(theta) * sp, std::sin(theta) * sp, std::cos(phi));
    }
    return set;
}

Mat3 rotation_to_z(const Vec3 &d) {
    const Vec3 ez = Vec3::UnitZ();
    const Vec3 v = d.cross(ez);
    const double c = d.dot(ez);
    const double s2 = v.squaredNorm();
    if (s2 < 1e-24) {
        if (c > 0.0) {
            return Mat3::Identity();
        }
        Mat3 flip = Mat3::Identity();
        flip(1, 1) = -1.0;
        flip(2, 2) = -1.0;
        return flip;
    }
    const Mat3 k = skew(v);
    return Mat3::Identity() + k + k * k * ((1.0 - c) / s2);
}

} // namespace cubesim::hydro
