#pragma once

#include <vector>

#include "cubesim/core/types.hpp"

namespace cubesim::hydro {

/// Unit directions from the Fibonacci sphere construction:
///   phi_i = arccos(1 - 2i/n_s),  theta_i = pi (1 + sqrt(5)) i,
///   d_i = (cos(theta) sin(phi), sin(theta) sin(phi), cos(phi)).
struct DirectionSet {
    std::vector<Vec3> directions;

    int size() const { return static_cast<int>(directions.size()); }
    const Vec3 &operator[](int i) const { return directions[static_cast<std::size_t>(i)]; }
};

DirectionSet fibonacci_directions(int n_s);

/// Rotation taking the unit vector d onto +z (Rodrigues form
/// R = I + K + K^2 (1-c)/s^2 built from v = d x e_z). For d = -e_z the
/// fixed convention diag(1, -1, -1) is returned; for d = e_z the identity.
Mat3 rotation_to_z(const Vec3 &d);

} // namespace cubesim::hydro
