#include "cubesim/control/allocation.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "cubesim/core/errors.hpp"

namespace cubesim::control {

AllocationModel build_allocation(const Assembly &assembly, const MassProperties &props) {
    AllocationModel model;
    model.thrusters = assembly.thrusters_in_assembly_frame();
    const int nt = static_cast<int>(model.thrusters.size());
    if (nt < 1) {
        throw ArgumentError("assembly has no thrusters");
    }

    model.jacobian.resize(6, nt);
    for (int i = 0; i < nt; ++i) {
        auto &t = model.thrusters[static_cast<std::size_t>(i)];
        t.position -= props.com; // re-express about the CoM
        model.jacobian.col(i).head<3>() = t.direction;
        model.jacobian.col(i).tail<3>() = t.position.cross(t.direction);
    }

    Eigen::JacobiSVD<MatX> svd(model.jacobian, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-9);
    model.rank = static_cast<int>(svd.rank());
    model.controllable = (model.rank == 6);

    // Minimum-norm right inverse on the attainable subspace.
    const VecX &sv = svd.singularValues();
    MatX sigma_inv = MatX::Zero(sv.size(), sv.size());
    for (int i = 0; i < model.rank; ++i) {
        sigma_inv(i, i) = 1.0 / sv(i);
    }
    model.pseudo_inverse = svd.matrixV() * sigma_inv * svd.matrixU().transpose();
    return model;
}

AllocationResult allocate(const AllocationModel &model, const Vec6 &tau) {
    AllocationResult res;
    res.unclipped = model.pseudo_inverse * tau;
    res.forces = res.unclipped;
    for (int i = 0; i < model.thruster_count(); ++i) {
        const auto &t = model.thrusters[static_cast<std::size_t>(i)];
        const double clamped = std::clamp(res.forces(i), t.f_min, t.f_max);
        if (clamped != res.forces(i)) {
            res.clipped = true;
        }
        res.forces(i) = clamped;
    }
    res.residual = (model.jacobian * res.forces - tau).norm();
    return res;
}

} // namespace cubesim::control
