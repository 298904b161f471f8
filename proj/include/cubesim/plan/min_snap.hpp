#pragma once

#include <vector>

#include "cubesim/core/types.hpp"

namespace cubesim::plan {

/// Piecewise degree-7 polynomial trajectory through waypoints. Coefficients
/// are stored per segment and axis in the local time (t - t_k), lowest
/// order first.
struct TrajectoryPlan {
    std::vector<Vec3> waypoints;
    std::vector<double> times;              // waypoint times, strictly increasing
    std::vector<Eigen::Matrix<double, 8, 3>> segments; // per-segment coeffs x/y/z
    double snap_cost = 0.0;                 // sum over segments and axes

    int segment_count() const { return static_cast<int>(segments.size()); }
    double start_time() const { return times.front(); }
    double end_time() const { return times.back(); }

    /// Position and its first three derivatives at time t (clamped to the
    /// plan interval).
    void evaluate(double t, Vec3 *pos, Vec3 *vel = nullptr, Vec3 *acc = nullptr,
                  Vec3 *jerk = nullptr) const;
};

/// Minimum-snap interpolation: per axis, minimize the integral of the
/// squared 4th derivative subject to waypoint interpolation, continuity of
/// velocity/acceleration at interior joints, and rest (zero velocity and
/// acceleration) endpoints. Solved through the KKT system of the
/// equality-constrained QP with per-segment time normalization.
TrajectoryPlan plan_min_snap(const std::vector<Vec3> &waypoints,
                             const std::vector<double> &times);

struct ReferenceSample {
    double t = 0.0;
    Vec3 position = Vec3::Zero();
    Vec3 velocity = Vec3::Zero();
    Vec3 acceleration = Vec3::Zero();
    double yaw = 0.0;
    double yaw_rate = 0.0;
};

enum class YawMode { fixed, tangent, interpolated };

/// Samples the plan every dt over its full interval (endpoint included).
/// Yaw profile: fixed value, path-tangent heading, or linear interpolation
/// between per-waypoint yaw values.
std::vector<ReferenceSample> sample_trajectory(const TrajectoryPlan &plan, double dt,
                                               YawMode yaw_mode = YawMode::fixed,
                                               double fixed_yaw = 0.0,
                                               const std::vector<double> &waypoint_yaw = {});

} // namespace cubesim::plan
