#pragma once

#include <vector>

#include "cubesim/core/types.hpp"

namespace cubesim::plan {

/// Cylindrical spiral waypoints: (r cos t, r sin t, pitch t / 2pi) with t
/// sampled uniformly over `turns` revolutions.
std::vector<Vec3> spiral_waypoints(double radius, double pitch, double turns, int count);

/// Closed edge curve of a Moebius band of the given centerline radius and
/// half-width, sampled uniformly over its double loop t in [0, 4pi):
///   ((R + w cos(t/2)) cos t, (R + w cos(t/2)) sin t, w sin(t/2)).
/// half_width = 0 degenerates to a circle traversed twice.
std::vector<Vec3> mobius_waypoints(double radius, double half_width, int count);

} // namespace cubesim::plan
