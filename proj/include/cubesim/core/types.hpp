#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace cubesim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using VecX = Eigen::VectorXd;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using MatX = Eigen::MatrixXd;
using Quat = Eigen::Quaterniond;

/// Skew-symmetric (cross-product) matrix: skew(a) * b == a x b.
inline Mat3 skew(const Vec3 &a) {
    Mat3 s;
    s << 0.0, -a.z(), a.y(), a.z(), 0.0, -a.x(), -a.y(), a.x(), 0.0;
    return s;
}

/// Rotation vector (axis * angle) of a unit quaternion, angle in [0, pi].
inline Vec3 rotation_vector(const Quat &q_in) {
    Quat q = q_in.normalized();
    if (q.w() < 0.0) {
        q.coeffs() = -q.coeffs();
    }
    const Vec3 v(q.x(), q.y(), q.z());
    const double sin_half = v.norm();
    if (sin_half < 1e-12) {
        return 2.0 * v; // small angle: theta ~ 2 * vec
    }
    const double angle = 2.0 * std::atan2(sin_half, q.w());
    return (angle / sin_half) * v;
}

/// ZYX (yaw-pitch-roll) Euler angles of a rotation, returned as (roll, pitch, yaw).
inline Vec3 euler_zyx(const Quat &q) {
    const Mat3 r = q.normalized().toRotationMatrix();
    const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
    const double roll = std::atan2(r(2, 1), r(2, 2));
    const double yaw = std::atan2(r(1, 0), r(0, 0));
    return {roll, pitch, yaw};
}

inline bool is_finite(const VecX &v) { return v.allFinite(); }

} // namespace cubesim
