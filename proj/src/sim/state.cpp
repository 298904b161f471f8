#include "cubesim/sim/state.hpp"

#include <cmath>

#include "cubesim/core/errors.hpp"

namespace cubesim::sim {

Mat6 kinematic_transform(const Quat &orientation) {
    const Vec3 rpy = euler_zyx(orientation);
    const double roll = rpy(0), pitch = rpy(1);
    if (std::abs(std::abs(pitch) - M_PI / 2.0) < 1e-6) {
        throw SingularityError("Euler-rate transform is singular at pitch = +/- pi/2");
    }
    const double sr = std::sin(roll), cr = std::cos(roll);
    const double tp = std::tan(pitch), cp = std::cos(pitch);
    Mat3 t;
    t << 1.0, sr * tp, cr * tp, //
        0.0, cr, -sr,           //
        0.0, sr / cp, cr / cp;
    Mat6 j = Mat6::Zero();
    j.topLeftCorner<3, 3>() = orientation.normalized().toRotationMatrix();
    j.bottomRightCorner<3, 3>() = t;
    return j;
}

Vec4 quaternion_derivative(const Quat &q, const Vec3 &w) {
    const Quat omega(0.0, w.x(), w.y(), w.z());
    const Quat dq = q * omega;
    return {0.5 * dq.w(), 0.5 * dq.x(), 0.5 * dq.y(), 0.5 * dq.z()};
}

} // namespace cubesim::sim
