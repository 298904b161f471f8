#pragma once

#include <vector>

#include "cubesim/core/types.hpp"
#include "cubesim/model/assembly.hpp"

namespace cubesim {

/// Composite rigid-body properties of an assembly, expressed about the CoM
/// in the assembly frame.
struct MassProperties {
    double total_mass = 0.0; // [kg]
    Vec3 com = Vec3::Zero(); // [m], assembly frame
    Mat3 inertia = Mat3::Zero(); // [kg m^2], about com
    std::vector<Vec3> module_offsets; // r_i = p_i - com
};

/// Sum of module masses, mass-weighted CoM, and parallel-axis composite
/// inertia with each module inertia rotated into the assembly frame.
MassProperties compose_mass_properties(const Assembly &assembly);

/// 6x6 rigid-body mass matrix about a reference point displaced from the CoM
/// by com_offset (CoM position minus reference point). With the reference at
/// the CoM (offset zero) this is block-diag(m I3, I_com). The inertia block
/// is shifted to the reference point so the result stays symmetric positive
/// definite. added_mass must be symmetric PSD.
Mat6 mass_matrix(const MassProperties &props, const Mat6 &added_mass = Mat6::Zero(),
                 const Vec3 &com_offset = Vec3::Zero());

/// Coriolis/centripetal matrix for the CoM-referenced mass matrix
/// (rigid body + added mass), in the standard skew-symmetric form
///   C = [ 0, -S(a); -S(a), -S(b) ],  a = M11 v + M12 w,  b = M21 v + M22 w,
/// which satisfies C = -C^T for any twist.
Mat6 coriolis_matrix(const MassProperties &props, const Mat6 &added_mass, const Vec6 &twist);

/// Same, from a prebuilt 6x6 mass matrix.
Mat6 coriolis_from_mass_matrix(const Mat6 &m, const Vec6 &twist);

} // namespace cubesim
