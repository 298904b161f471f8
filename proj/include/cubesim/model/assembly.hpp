#pragma once

#include <vector>

#include "cubesim/core/types.hpp"
#include "cubesim/model/module.hpp"

namespace cubesim {

/// A module placed on the lattice: which cell it occupies and which of the
/// 24 proper cube rotations orients its module frame in the assembly frame.
struct ModulePlacement {
    ModuleSpec spec;
    Eigen::Vector3i cell = Eigen::Vector3i::Zero();
    int orientation = 0; // index into cube_rotation()

    /// Module center in the assembly frame: (cell + 1/2) * L.
    Vec3 center() const;
    Mat3 rotation() const;
};

/// A face-connected lattice of cube modules. The assembly frame is the
/// lattice frame; dynamics are later expressed about the composite CoM.
struct Assembly {
    std::vector<ModulePlacement> modules;

    /// Throws StructuralError on overlapping cells or a disconnected
    /// face-adjacency graph, and propagates module validation errors.
    void validate() const;

    std::size_t thruster_count() const;

    /// Thruster positions/directions mapped into the assembly frame.
    std::vector<ThrusterSpec> thrusters_in_assembly_frame() const;
};

/// Line or box arrangements of identical modules, cells chosen along +x,
/// then +y, then +z (e.g. count=2 -> cells (0,0,0),(1,0,0)).
Assembly make_line_assembly(const ModuleSpec &spec, int count);

/// The three benchmark shapes: 1 module, 1x2 line, and an L-shaped triple
/// (cells (0,0,0),(1,0,0),(0,1,0)).
Assembly make_benchmark_assembly(int module_count);

} // namespace cubesim
