#pragma once

#include <vector>

#include "cubesim/control/allocation.hpp"
#include "cubesim/core/types.hpp"
#include "cubesim/hydro/directions.hpp"

namespace cubesim::capability {

enum class WrenchMode { force, torque };

/// Reachable wrench space: per-direction boundary extents lambda such that
/// lambda * e(d) is attainable within thruster limits, where e(d) embeds d
/// into the force or torque rows (complementary rows held at zero unless
/// free_complement).
struct WrenchSpace {
    WrenchMode mode = WrenchMode::force;
    hydro::DirectionSet directions;
    std::vector<double> extents; // [N] or [N m], >= 0
};

/// Per-direction power cost of producing a unit-magnitude wrench via the
/// minimum-norm allocation. Directions where the unit wrench is unattainable
/// (rank deficiency) are flagged.
struct PowerSpace {
    WrenchMode mode = WrenchMode::force;
    hydro::DirectionSet directions;
    std::vector<double> power;    // [W]
    std::vector<bool> attainable;
};

/// Embeds a 3-direction into a 6-vector wrench for the given mode.
Vec6 embed_direction(const Vec3 &d, WrenchMode mode);

/// Solves the boundary LP  max lambda  s.t.  J F = lambda e(d),
/// f_min <= F <= f_max  for one direction. Returns the extent and optionally
/// the optimal thruster forces.
double wrench_extent(const control::AllocationModel &model, const Vec3 &d, WrenchMode mode,
                     bool free_complement = false, VecX *forces = nullptr);

WrenchSpace reachable_wrench_space(const control::AllocationModel &model, WrenchMode mode,
                                   int n_s, bool free_complement = false);

PowerSpace power_space(const control::AllocationModel &model, WrenchMode mode, int n_s);

/// Total power over the unit-wrench direction set (sum over attainable
/// directions).
double total_power(const PowerSpace &space);

enum class VarianceWeighting { power, wrench };

/// Thrust-effort distribution across thrusters: per-thruster mean absolute
/// thrust over the sampled directions (unit wrenches via the pseudo-inverse
/// for `power` weighting, LP boundary solutions for `wrench` weighting), and
/// the variance of those means across thrusters.
struct ThrustVariance {
    double variance = 0.0;       // across thrusters of mean |thrust|
    VecX mean_abs_thrust;        // per thruster
    MatX samples;                // n_s x n_t absolute thrusts (violin export)
};

ThrustVariance thrust_variance(const control::AllocationModel &model, int n_s,
                               VarianceWeighting weighting, WrenchMode mode);

} // namespace cubesim::capability
