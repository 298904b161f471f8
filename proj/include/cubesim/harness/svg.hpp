#pragma once

#include <iosfwd>
#include <vector>

#include "cubesim/capability/spaces.hpp"
#include "cubesim/harness/runner.hpp"

namespace cubesim::harness {

/// Three great-circle slices (xy, xz, yz) of a radial field, drawn as
/// closed polygons.
void svg_radial_slices(const hydro::DirectionSet &directions,
                       const std::vector<double> &radii, const std::string &title,
                       std::ostream &os);

/// Tracked vs reference path: top view (x, y) and depth profile (t, z).
void svg_trajectory(const sim::Trace &trace, const ReferenceSeries &reference,
                    std::ostream &os);

/// Violin-style thrust distributions: one mirrored histogram per thruster.
void svg_violin(const MatX &samples, std::ostream &os);

} // namespace cubesim::harness
