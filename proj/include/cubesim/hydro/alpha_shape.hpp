#pragma once

#include <vector>

#include "cubesim/core/types.hpp"

namespace cubesim::hydro {

struct AlphaShapeResult {
    double area = 0.0;      // [input units^2]
    bool degenerate = false; // no triangle survived (collinear / too-sparse cloud)
    int kept_triangles = 0;
    double boundary_length = 0.0;  // perimeter of the kept complex
    double boundary_edge_sq = 0.0; // sum of squared boundary edge lengths
};

/// Area of the 2D alpha-shape of a planar point cloud: the union of Delaunay
/// triangles whose circumradius is at most alpha. A very large alpha yields
/// the convex hull area; small alpha carves concavities.
///
/// The triangulation is incremental Bowyer-Watson over Morton-ordered input
/// with a tiny deterministic jitter (1e-7 of the cloud extent) to break exact
/// cocircular/collinear configurations from gridded inputs.
AlphaShapeResult alpha_shape_area(const std::vector<Vec2> &points, double alpha);

} // namespace cubesim::hydro
