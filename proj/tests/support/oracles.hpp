#pragma once

// Independent oracles used by the test suites. These deliberately avoid the
// library's own computation paths: areas come from analytic formulas or the
// shoelace rule, wrench extents from vertex enumeration, and so on.

#include <cstdint>
#include <vector>

#include "cubesim/core/types.hpp"

namespace cubesim::oracles {

/// Analytic silhouette area of an axis-aligned unit-density cube of edge l
/// viewed along unit direction d: (|dx| + |dy| + |dz|) * l^2.
double analytic_cube_projection(const Vec3 &d, double edge_length);

/// Convex hull area of a planar point set (monotone chain + shoelace).
double convex_hull_area(const std::vector<Vec2> &points);

/// Ray-shooting into the image of the thrust box under the allocation map:
/// enumerate all 2^n box vertices, then maximize lambda subject to
///   sum_j mu_j (J v_j) = lambda * e,  sum_j mu_j = 1,  mu >= 0
/// with a small standard-form simplex that shares no code with the library
/// LP. `e` is the full 6-vector embedding (complementary rows zero).
double zonotope_ray_extent(const MatX &jacobian, const VecX &f_min, const VecX &f_max,
                           const Vec6 &e);

/// Minimum-snap single-segment rest-to-rest oracle on [0, 1]: solves the
/// natural-boundary-condition linear system (jerk free, p'''' zero at the
/// ends) directly on the monomial basis. Returns the 8 coefficients for
/// displacement 0 -> 1.
Eigen::Matrix<double, 8, 1> min_snap_single_segment_oracle();

} // namespace cubesim::oracles
