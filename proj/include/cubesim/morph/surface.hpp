#pragma once

#include <array>
#include <vector>

#include "cubesim/capability/spaces.hpp"
#include "cubesim/core/types.hpp"
#include "cubesim/hydro/directions.hpp"

namespace cubesim::morph {

/// Closed triangulated surface of a radial (star-shaped) field: vertex i at
/// radii[i] * directions[i], connectivity from the spherical convex hull of
/// the unit directions.
struct RadialSurface {
    hydro::DirectionSet directions;
    std::vector<double> radii;
    std::vector<std::array<int, 3>> triangles; // outward-oriented

    Vec3 vertex(int i) const {
        return radii[static_cast<std::size_t>(i)] * directions[i];
    }
    int vertex_count() const { return directions.size(); }

    /// Throws TopologyError unless the mesh is closed and orientable with
    /// Euler characteristic 2.
    void validate_closed() const;
};

RadialSurface radial_surface(const hydro::DirectionSet &directions,
                             const std::vector<double> &radii);
RadialSurface radial_surface(const capability::WrenchSpace &space);
RadialSurface radial_surface(const capability::PowerSpace &space);

struct WillmoreResult {
    double energy = 0.0;          // sum H_i^2 a_i - sum K_i a_i
    double mean_term = 0.0;       // sum H_i^2 a_i
    double gauss_term = 0.0;      // sum K_i a_i (= 4 pi by Gauss-Bonnet)
    double total_area = 0.0;
};

/// Discrete Willmore energy: cotangent-weighted mean-curvature normal with
/// Meyer mixed Voronoi areas, Gaussian curvature from angle defects.
WillmoreResult willmore_energy(const RadialSurface &surface);

/// ASCII OFF export of the triangle mesh.
void save_surface_off(const RadialSurface &surface, std::ostream &os);

} // namespace cubesim::morph
