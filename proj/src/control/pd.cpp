#include "cubesim/control/pd.hpp"

#include "cubesim/core/errors.hpp"
#include "cubesim/model/mass_properties.hpp"

namespace cubesim::control {

void GainSet::validate() const {
    if (kp.minCoeff() < 0.0 || kd.minCoeff() < 0.0) {
        throw ArgumentError("PD gains must be non-negative");
    }
}

Vec6 pd_wrench(const sim::BodyState &state, const Reference &ref, const GainSet &gains,
               const sim::PlantModel &plant) {
    if (!ref.position.allFinite() || !ref.velocity.allFinite() ||
        !ref.acceleration.allFinite()) {
        throw ArgumentError("reference must be finite");
    }
    const Mat3 r_wb = state.orientation.toRotationMatrix();
    const Mat3 r_bw = r_wb.transpose();

    // Pose error in the world frame, then mapped to the body frame.
    const Vec3 pos_err_w = ref.position - state.position;
    const Quat q_err = ref.orientation * state.orientation.conjugate();
    const Vec3 rot_err_w = rotation_vector(q_err);
    Vec6 err;
    err.head<3>() = r_bw * pos_err_w;
    err.tail<3>() = r_bw * rot_err_w;

    // Twist error in the body frame.
    Vec6 twist_des;
    twist_des.head<3>() = r_bw * ref.velocity;
    twist_des.tail<3>() = r_bw * ref.angular_velocity;
    const Vec6 twist_err = twist_des - state.twist;

    // Feedforward: desired acceleration, Coriolis and drag compensation.
    Vec6 accel_des;
    accel_des.head<3>() = r_bw * ref.acceleration;
    accel_des.tail<3>() = r_bw * ref.angular_acceleration;

    const Vec6 nu = state.twist;
    Vec6 tau = gains.kp.cwiseProduct(err) + gains.kd.cwiseProduct(twist_err);
    tau += plant.mass * accel_des;
    tau += coriolis_from_mass_matrix(plant.mass, nu) * nu;
    if (plant.drag_enabled && plant.drag.directions.size() > 0) {
        tau -= plant.drag.wrench(plant.relative_twist(state)); // oppose the drag force
    }
    return tau;
}

} // namespace cubesim::control
