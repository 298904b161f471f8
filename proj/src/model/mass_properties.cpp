#include "cubesim/model/mass_properties.hpp"

#include <Eigen/Eigenvalues>

#include "cubesim/core/errors.hpp"

namespace cubesim {

MassProperties compose_mass_properties(const Assembly &assembly) {
    assembly.validate();

    MassProperties props;
    Vec3 weighted = Vec3::Zero();
    for (const auto &m : assembly.modules) {
        props.total_mass += m.spec.mass;
        weighted += m.spec.mass * m.center();
    }
    props.com = weighted / props.total_mass;

    props.inertia = Mat3::Zero();
    props.module_offsets.reserve(assembly.modules.size());
    for (const auto &m : assembly.modules) {
        const Vec3 r = m.center() - props.com;
        props.module_offsets.push_back(r);
        const Mat3 rot = m.rotation();
        const Mat3 own = rot * m.spec.inertia * rot.transpose();
        props.inertia += own + m.spec.mass * (r.squaredNorm() * Mat3::Identity() -
                                              r * r.transpose());
    }
    return props;
}

Mat6 mass_matrix(const MassProperties &props, const Mat6 &added_mass, const Vec3 &com_offset) {
    if ((added_mass - added_mass.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw ArgumentError("added mass matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat6> es_a(added_mass);
    if (es_a.eigenvalues().minCoeff() < -1e-9) {
        throw ArgumentError("added mass matrix must be positive semidefinite");
    }

    const double m = props.total_mass;
    const Mat3 rx = skew(com_offset);
    Mat6 out = Mat6::Zero();
    out.topLeftCorner<3, 3>() = m * Mat3::Identity();
    out.topRightCorner<3, 3>() = -m * rx;
    out.bottomLeftCorner<3, 3>() = m * rx;
    // Inertia shifted from the CoM to the reference point (parallel axis)
    // keeps the block form symmetric positive definite.
    out.bottomRightCorner<3, 3>() = props.inertia - m * rx * rx;
    out += added_mass;

    Eigen::SelfAdjointEigenSolver<Mat6> es(out);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw ArgumentError("mass matrix is not positive definite");
    }
    return out;
}

Mat6 coriolis_from_mass_matrix(const Mat6 &m, const Vec6 &twist) {
    const Vec3 v = twist.head<3>();
    const Vec3 w = twist.tail<3>();
    const Vec3 a = m.topLeftCorner<3, 3>() * v + m.topRightCorner<3, 3>() * w;
    const Vec3 b = m.bottomLeftCorner<3, 3>() * v + m.bottomRightCorner<3, 3>() * w;
    Mat6 c = Mat6::Zero();
    c.topRightCorner<3, 3>() = -skew(a);
    c.bottomLeftCorner<3, 3>() = -skew(a);
    c.bottomRightCorner<3, 3>() = -skew(b);
    return c;
}

Mat6 coriolis_matrix(const MassProperties &props, const Mat6 &added_mass, const Vec6 &twist) {
    return coriolis_from_mass_matrix(mass_matrix(props, added_mass), twist);
}

} // namespace cubesim
