#include "cubesim/model/module.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cubesim/core/errors.hpp"

namespace cubesim {

void ModuleSpec::validate() const {
    if (!(edge_length > 0.0)) {
        throw ArgumentError("module edge_length must be positive");
    }
    if (!(mass > 0.0)) {
        throw ArgumentError("module mass must be positive");
    }
    if ((inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw ArgumentError("module inertia must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Mat3> es(inertia);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw ArgumentError("module inertia must be positive definite");
    }
    if (body_points < 1) {
        throw ArgumentError("module body_points must be >= 1");
    }
    for (const auto &t : thrusters) {
        t.validate();
    }
}

ModuleSpec make_cube_module(double edge_length, double rho) {
    ModuleSpec spec;
    spec.edge_length = edge_length;
    spec.mass = rho * edge_length * edge_length * edge_length;
    spec.inertia = Mat3::Identity() * (spec.mass * edge_length * edge_length / 6.0);
    spec.thrusters = default_thruster_layout(edge_length);
    return spec;
}

std::vector<ThrusterSpec> default_thruster_layout(double edge_length, double f_max) {
    const double h = edge_length / 2.0;
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<ThrusterSpec> out;
    out.reserve(8);

    auto add = [&](const Vec3 &p, const Vec3 &d) {
        ThrusterSpec t;
        t.position = p;
        t.direction = d.normalized();
        t.f_min = -f_max;
        t.f_max = f_max;
        t.cmd_poly = {0.0, f_max, 0.0, 0.0, 0.0, 0.0};
        t.power_poly = {0.0, 0.0, 25.0, 0.0, 0.0, 0.0};
        out.push_back(t);
    };

    // Horizontal group: vertical-edge midpoints, in-plane tangential
    // directions (45 degrees to both face normals). Common handedness gives
    // yaw authority; differential pairs give surge/sway.
    add({h, h, 0.0}, {-s, s, 0.0});
    add({-h, h, 0.0}, {-s, -s, 0.0});
    add({-h, -h, 0.0}, {s, -s, 0.0});
    add({h, -h, 0.0}, {s, s, 0.0});

    // Vertical group: top-face edge midpoints, inclined 45 degrees with
    // alternating inward tilt. Common mode gives heave; differential pairs
    // give roll/pitch.
    add({0.0, h, h}, {0.0, -s, s});
    add({-h, 0.0, h}, {s, 0.0, s});
    add({0.0, -h, h}, {0.0, s, s});
    add({h, 0.0, h}, {-s, 0.0, s});

    return out;
}

namespace {

std::vector<Mat3> build_cube_rotations() {
    std::vector<Mat3> rots;
    rots.reserve(24);
    // x-image runs over +/- e0, e1, e2; y-image over the remaining axes.
    // Identity (x->x, y->y) comes first by construction.
    const int axis_order[3] = {0, 1, 2};
    const double signs[2] = {1.0, -1.0};
    for (int xi : axis_order) {
        for (double xs : signs) {
            Vec3 x = Vec3::Zero();
            x(xi) = xs;
            for (int yi : axis_order) {
                if (yi == xi) {
                    continue;
                }
                for (double ys : signs) {
                    Vec3 y = Vec3::Zero();
                    y(yi) = ys;
                    Mat3 r;
                    r.col(0) = x;
                    r.col(1) = y;
                    r.col(2) = x.cross(y);
                    rots.push_back(r);
                }
            }
        }
    }
    // Move the identity to index 0 for convenience.
    for (std::size_t i = 0; i < rots.size(); ++i) {
        if (rots[i].isIdentity(1e-12)) {
            std::swap(rots[0], rots[i]);
            break;
        }
    }
    return rots;
}

const std::vector<Mat3> &cube_rotations() {
    static const std::vector<Mat3> rots = build_cube_rotations();
    return rots;
}

} // namespace

Mat3 cube_rotation(int index) {
    if (index < 0 || index >= 24) {
        throw ArgumentError("cube rotation index must be in [0, 24)");
    }
    return cube_rotations()[static_cast<std::size_t>(index)];
}

int cube_rotation_index(const Mat3 &r, double tol) {
    const auto &rots = cube_rotations();
    for (int i = 0; i < 24; ++i) {
        if ((rots[static_cast<std::size_t>(i)] - r).cwiseAbs().maxCoeff() <= tol) {
            return i;
        }
    }
    throw ArgumentError("matrix is not one of the 24 proper cube rotations");
}

} // namespace cubesim
