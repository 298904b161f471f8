#pragma once

#include <vector>

#include "cubesim/core/types.hpp"
#include "cubesim/model/assembly.hpp"
#include "cubesim/model/mass_properties.hpp"

namespace cubesim::control {

/// Thrust allocation model: the 6 x n_t map from thruster forces to the net
/// body wrench about the CoM (column i = [d_i; p_i x d_i]) and its
/// minimum-norm pseudo-inverse.
struct AllocationModel {
    MatX jacobian;       // 6 x n_t
    MatX pseudo_inverse; // n_t x 6
    std::vector<ThrusterSpec> thrusters; // positions relative to the CoM
    int rank = 0;
    bool controllable = false; // rank == 6

    int thruster_count() const { return static_cast<int>(jacobian.cols()); }
};

/// Builds the allocation from an assembly: thruster poses are mapped into
/// the assembly frame and re-expressed relative to the composite CoM.
/// Rank < 6 is carried as a controllability warning, not an error;
/// allocation stays defined on the attainable subspace.
AllocationModel build_allocation(const Assembly &assembly, const MassProperties &props);

struct AllocationResult {
    VecX forces;          // per-thruster, after clipping [N]
    VecX unclipped;       // pseudo-inverse solution before limits
    bool clipped = false; // any thruster hit a limit
    double residual = 0.0; // |J f_clipped - tau|
};

/// Minimum-norm allocation F = J^+ tau, then per-thruster clipping to
/// [f_min, f_max] (no redistribution).
AllocationResult allocate(const AllocationModel &model, const Vec6 &tau);

} // namespace cubesim::control
