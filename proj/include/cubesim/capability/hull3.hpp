#pragma once

#include <array>
#include <vector>

#include "cubesim/core/types.hpp"

namespace cubesim::capability {

struct HullFace {
    std::array<int, 3> v; // vertex indices, outward ccw
    Vec3 normal;          // unit outward normal
    double offset;        // normal . x = offset on the face plane
};

/// Incremental 3D convex hull. Faces are oriented outward. Throws
/// NumericalError when the points are degenerate (rank < 3).
std::vector<HullFace> convex_hull_3d(const std::vector<Vec3> &points);

} // namespace cubesim::capability
