#pragma once

#include <vector>

#include "cubesim/core/types.hpp"
#include "cubesim/hydro/directions.hpp"

namespace cubesim::morph {

/// Real orthonormal spherical harmonic Y_l^m at a unit direction
/// (orthonormal over the sphere: integral of Y^2 dA = 1).
double real_spherical_harmonic(int l, int m, const Vec3 &dir);

/// Basis matrix: row per direction, column per (l, m) pair ordered
/// (0,0), (1,-1), (1,0), (1,1), (2,-2), ...
MatX spherical_harmonic_basis(const hydro::DirectionSet &directions, int l_max);

struct DirichletResult {
    double energy = 0.0;        // sum_l sum_m l (l+1) a_lm^2
    VecX coefficients;          // least-squares fit, (l_max+1)^2 entries
    double condition = 0.0;     // of the basis matrix
};

/// Fits radii on the directions with harmonics up to l_max by least squares
/// (rank-revealing QR; throws ConditioningError when the basis is rank
/// deficient) and returns the l(l+1)-weighted spectral energy.
DirichletResult dirichlet_energy(const hydro::DirectionSet &directions,
                                 const std::vector<double> &radii, int l_max = 10);

} // namespace cubesim::morph
