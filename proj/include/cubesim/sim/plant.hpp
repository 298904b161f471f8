#pragma once

#include <functional>

#include "cubesim/core/types.hpp"
#include "cubesim/hydro/drag_lut.hpp"
#include "cubesim/sim/state.hpp"

namespace cubesim::sim {

/// Everything the equations of motion need: the (rigid + added) mass matrix,
/// the drag table, and optional restoring/ambient-flow fields. Restoring
/// defaults to zero (neutral buoyancy); ambient flow is a world-frame
/// velocity field defaulting to zero.
struct PlantModel {
    Mat6 mass = Mat6::Identity();
    hydro::DragLut drag;
    bool drag_enabled = true;
    std::function<Vec6(const BodyState &)> restoring;       // g(eta), body frame
    std::function<Vec3(const Vec3 &)> ambient_flow;         // world frame [m/s]

    /// Body-frame twist relative to the surrounding fluid.
    Vec6 relative_twist(const BodyState &state) const;

    void validate() const;
};

struct StateDerivative {
    Vec3 position_dot = Vec3::Zero();
    Vec4 orientation_dot = Vec4::Zero(); // (w, x, y, z)
    Vec6 twist_dot = Vec6::Zero();
};

/// nu_dot = M^-1 (tau + drag(v_r) - C(nu) nu - g(eta)), with the pose
/// derivative from quaternion kinematics. The drag term from the lookup
/// table already opposes motion, so it enters with a plus sign.
StateDerivative state_derivative(const BodyState &state, const PlantModel &plant,
                                 const Vec6 &applied_wrench);

} // namespace cubesim::sim
