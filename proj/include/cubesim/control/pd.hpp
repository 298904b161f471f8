#pragma once

#include "cubesim/core/types.hpp"
#include "cubesim/sim/plant.hpp"
#include "cubesim/sim/state.hpp"

namespace cubesim::control {

/// Diagonal proportional/derivative gains over the 6 pose-error axes.
struct GainSet {
    Vec6 kp = Vec6::Zero();
    Vec6 kd = Vec6::Zero();

    void validate() const;
};

/// Desired pose, twist and acceleration, all in the world frame. The
/// controller maps them into the body frame of the current state.
struct Reference {
    Vec3 position = Vec3::Zero();
    Quat orientation = Quat::Identity();
    Vec3 velocity = Vec3::Zero();
    Vec3 angular_velocity = Vec3::Zero();
    Vec3 acceleration = Vec3::Zero();
    Vec3 angular_acceleration = Vec3::Zero();
};

/// Model-based PD with feedforward:
///   tau = Kp e + Kd e_dot + M nu_dot_d + C(nu_m) nu_m + D(v_r) v_r
/// where e is the pose error (world position error; rotation vector of the
/// error quaternion) mapped into the body frame, e_dot the body-frame twist
/// error, and the last term compensates the hydrodynamic drag resistance.
Vec6 pd_wrench(const sim::BodyState &state, const Reference &ref, const GainSet &gains,
               const sim::PlantModel &plant);

} // namespace cubesim::control
