#pragma once

#include "cubesim/core/types.hpp"

namespace cubesim::sim {

/// Simulation state pair: world-frame pose (position + world-from-body
/// quaternion) and body-frame twist (v, w).
struct BodyState {
    Vec3 position = Vec3::Zero();
    Quat orientation = Quat::Identity();
    Vec6 twist = Vec6::Zero();

    Vec3 linear() const { return twist.head<3>(); }
    Vec3 angular() const { return twist.tail<3>(); }
    void renormalize() { orientation.normalize(); }
};

/// Kinematic transform eta_dot = J(eta) nu for the Euler-angle pose
/// representation: block-diag(R, T) with R the body-to-world rotation and T
/// the ZYX Euler-rate transform. Throws SingularityError within 1e-6 of
/// pitch = +/- pi/2 (the quaternion propagation path used by the integrator
/// has no such singularity).
Mat6 kinematic_transform(const Quat &orientation);

/// Quaternion kinematics q_dot = 1/2 q (0, w); returned as (w, x, y, z).
Vec4 quaternion_derivative(const Quat &q, const Vec3 &omega_body);

} // namespace cubesim::sim
