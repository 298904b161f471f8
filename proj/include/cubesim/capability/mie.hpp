#pragma once

#include "cubesim/capability/spaces.hpp"
#include "cubesim/core/types.hpp"

namespace cubesim::capability {

struct MieResult {
    double volume = 0.0;
    bool degenerate = false; // flat space, volume forced to zero
    Mat3 shape = Mat3::Zero(); // ellipsoid {B u + c : |u| <= 1}
    Vec3 center = Vec3::Zero();
};

/// Maximum-volume ellipsoid inscribed in the convex hull of the boundary
/// points {extent_i * direction_i}, solved by a log-barrier Newton method on
///   maximize log det B  s.t.  |B a_j| + a_j . c <= b_j
/// over the hull's half-space representation.
MieResult mie_volume(const WrenchSpace &space);

/// Same on an explicit point cloud.
MieResult mie_volume_points(const std::vector<Vec3> &points);

} // namespace cubesim::capability
