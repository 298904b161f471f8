#include "cubesim/sim/plant.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "cubesim/core/errors.hpp"
#include "cubesim/model/mass_properties.hpp"

namespace cubesim::sim {

void PlantModel::validate() const {
    if ((mass - mass.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw ArgumentError("plant mass matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat6> es(mass);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw ArgumentError("plant mass matrix must be positive definite");
    }
}

Vec6 PlantModel::relative_twist(const BodyState &state) const {
    Vec6 rel = state.twist;
    if (ambient_flow) {
        const Vec3 flow_world = ambient_flow(state.position);
        rel.head<3>() -= state.orientation.conjugate() * flow_world;
    }
    return rel;
}

StateDerivative state_derivative(const BodyState &state, const PlantModel &plant,
                                 const Vec6 &applied_wrench) {
    const Vec6 nu = state.twist;
    Vec6 rhs = applied_wrench;
    rhs -= coriolis_from_mass_matrix(plant.mass, nu) * nu;
    if (plant.drag_enabled && plant.drag.directions.size() > 0) {
        rhs += plant.drag.wrench(plant.relative_twist(state));
    }
    if (plant.restoring) {
        rhs -= plant.restoring(state);
    }

    StateDerivative d;
    d.twist_dot = plant.mass.ldlt().solve(rhs);
    d.position_dot = state.orientation * state.linear();
    d.orientation_dot = quaternion_derivative(state.orientation, state.angular());
    return d;
}

} // namespace cubesim::sim
