#pragma once

#include <vector>

#include "cubesim/core/types.hpp"
#include "cubesim/model/thruster.hpp"

namespace cubesim {

/// One cube module: geometry, rigid-body properties about its own CoM, and
/// its thruster layout in the module frame (origin at the cube center).
struct ModuleSpec {
    double edge_length = 0.21; // [m]
    double mass = 9.261;       // [kg]
    Mat3 inertia = Mat3::Identity() * (9.261 * 0.21 * 0.21 / 6.0); // [kg m^2]
    std::vector<ThrusterSpec> thrusters;
    int body_points = 20000; // interior Monte-Carlo sample density

    void validate() const;
};

/// Neutrally buoyant cube of the given edge length in water of density rho:
/// mass = rho * L^3, homogeneous-cube inertia (m L^2 / 6) I3.
ModuleSpec make_cube_module(double edge_length = 0.21, double rho = 1000.0);

/// Standard 8-thruster layout: four thrusters in the horizontal mid-plane at
/// the vertical-edge midpoints (in-plane, tangential), and four inclined 45
/// degrees at the top-face edge midpoints. The layout is 4-fold symmetric
/// about z and its allocation Jacobian has rank 6.
std::vector<ThrusterSpec> default_thruster_layout(double edge_length, double f_max = 10.0);

/// The i-th of the 24 proper cube rotations (entries in {-1, 0, 1},
/// det = +1), in a fixed deterministic enumeration. Index 0 is the identity.
Mat3 cube_rotation(int index);

/// Inverse lookup: index of the rotation nearest to r. Throws ArgumentError
/// if r is farther than tol from every cube rotation.
int cube_rotation_index(const Mat3 &r, double tol = 1e-6);

} // namespace cubesim
