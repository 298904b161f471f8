#include "cubesim/plan/min_snap.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "cubesim/core/errors.hpp"

namespace cubesim::plan {

namespace {

constexpr int kOrder = 7; // polynomial degree per segment
constexpr int kCoeffs = kOrder + 1;

// d-th derivative row of the monomial basis at normalized time s.
Eigen::Matrix<double, 1, kCoeffs> basis_row(double s, int d) {
    Eigen::Matrix<double, 1, kCoeffs> row = Eigen::Matrix<double, 1, kCoeffs>::Zero();
    for (int i = d; i < kCoeffs; ++i) {
        double coeff = 1.0;
        for (int k = 0; k < d; ++k) {
            coeff *= static_cast<double>(i - k);
        }
        row(i) = coeff * std::pow(s, i - d);
    }
    return row;
}

// Gram matrix of the snap operator on [0, 1]:
// Q_ij = i!/(i-4)! j!/(j-4)! / (i + j - 7) for i, j >= 4.
Eigen::Matrix<double, kCoeffs, kCoeffs> snap_gram() {
    Eigen::Matrix<double, kCoeffs, kCoeffs> q =
        Eigen::Matrix<double, kCoeffs, kCoeffs>::Zero();
    auto fall4 = [](int i) {
        return static_cast<double>(i) * (i - 1) * (i - 2) * (i - 3);
    };
    for (int i = 4; i < kCoeffs; ++i) {
        for (int j = 4; j < kCoeffs; ++j) {
            q(i, j) = fall4(i) * fall4(j) / static_cast<double>(i + j - 7);
        }
    }
    return q;
}

} // namespace

TrajectoryPlan plan_min_snap(const std::vector<Vec3> &waypoints,
                             const std::vector<double> &times) {
    const int nw = static_cast<int>(waypoints.size());
    if (nw < 2) {
        throw ArgumentError("need at least 2 waypoints");
    }
    if (times.size() != waypoints.size()) {
        throw ArgumentError("waypoint/time count mismatch");
    }
    for (int k = 0; k + 1 < nw; ++k) {
        if (!(times[static_cast<std::size_t>(k + 1)] > times[static_cast<std::size_t>(k)])) {
            throw ArgumentError("waypoint times must be strictly increasing");
        }
    }
    const int m = nw - 1;            // segments
    const int nx = m * kCoeffs;      // unknowns per axis (normalized coeffs)

    // Constraints: 2 endpoint positions + (m-1) interior positions hit twice,
    // vel/acc continuity at interior joints, rest endpoints.
    const int nc = 2 * m + 2 * (m - 1) + 4;

    MatX a = MatX::Zero(nc, nx);
    MatX rhs = MatX::Zero(nc, 3);
    std::vector<double> duration(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        duration[static_cast<std::size_t>(k)] =
            times[static_cast<std::size_t>(k + 1)] - times[static_cast<std::size_t>(k)];
    }

    int row = 0;
    // Waypoint interpolation at both ends of every segment.
    for (int k = 0; k < m; ++k) {
        a.block(row, k * kCoeffs, 1, kCoeffs) = basis_row(0.0, 0);
        rhs.row(row++) = waypoints[static_cast<std::size_t>(k)].transpose();
        a.block(row, k * kCoeffs, 1, kCoeffs) = basis_row(1.0, 0);
        rhs.row(row++) = waypoints[static_cast<std::size_t>(k + 1)].transpose();
    }
    // Velocity and acceleration continuity at interior joints, in real time
    // units: p'_k(1)/T_k = p'_{k+1}(0)/T_{k+1}, etc.
    for (int k = 0; k + 1 < m; ++k) {
        for (int d = 1; d <= 2; ++d) {
            const double lhs_scale = 1.0 / std::pow(duration[static_cast<std::size_t>(k)], d);
            const double rhs_scale =
                1.0 / std::pow(duration[static_cast<std::size_t>(k + 1)], d);
            a.block(row, k * kCoeffs, 1, kCoeffs) = basis_row(1.0, d) * lhs_scale;
            a.block(row, (k + 1) * kCoeffs, 1, kCoeffs) = -basis_row(0.0, d) * rhs_scale;
            ++row;
        }
    }
    // Rest-to-rest endpoints.
    a.block(row++, 0, 1, kCoeffs) = basis_row(0.0, 1);
    a.block(row++, 0, 1, kCoeffs) = basis_row(0.0, 2);
    a.block(row++, (m - 1) * kCoeffs, 1, kCoeffs) = basis_row(1.0, 1);
    a.block(row++, (m - 1) * kCoeffs, 1, kCoeffs) = basis_row(1.0, 2);

    // Block-diagonal snap Gram with the T^-7 time scaling.
    MatX q = MatX::Zero(nx, nx);
    const auto gram = snap_gram();
    for (int k = 0; k < m; ++k) {
        q.block(k * kCoeffs, k * kCoeffs, kCoeffs, kCoeffs) =
            gram / std::pow(duration[static_cast<std::size_t>(k)], 7);
    }

    // First-order optimality (KKT) system of min x'Qx s.t. Ax = b.
    MatX kkt = MatX::Zero(nx + nc, nx + nc);
    kkt.topLeftCorner(nx, nx) = 2.0 * q;
    kkt.topRightCorner(nx, nc) = a.transpose();
    kkt.bottomLeftCorner(nc, nx) = a;
    Eigen::FullPivLU<MatX> lu(kkt);
    if (!lu.isInvertible()) {
        throw ConditioningError("min-snap KKT system is singular (extreme duration ratios?)");
    }

    TrajectoryPlan plan;
    plan.waypoints = waypoints;
    plan.times = times;
    plan.segments.resize(static_cast<std::size_t>(m));

    MatX full_rhs = MatX::Zero(nx + nc, 3);
    full_rhs.bottomRows(nc) = rhs;
    const MatX sol = lu.solve(full_rhs);

    for (int axis = 0; axis < 3; ++axis) {
        const VecX x = sol.col(axis).head(nx);
        plan.snap_cost += x.dot(q * x);
        for (int k = 0; k < m; ++k) {
            // Rescale normalized coefficients to local real time.
            for (int i = 0; i < kCoeffs; ++i) {
                plan.segments[static_cast<std::size_t>(k)](i, axis) =
                    x(k * kCoeffs + i) /
                    std::pow(duration[static_cast<std::size_t>(k)], i);
            }
        }
    }
    return plan;
}

void TrajectoryPlan::evaluate(double t, Vec3 *pos, Vec3 *vel, Vec3 *acc, Vec3 *jerk) const {
    const double tc = std::clamp(t, times.front(), times.back());
    int k = static_cast<int>(std::upper_bound(times.begin(), times.end(), tc) -
                             times.begin()) -
            1;
    k = std::clamp(k, 0, segment_count() - 1);
    const double local = tc - times[static_cast<std::size_t>(k)];
    const auto &c = segments[static_cast<std::size_t>(k)];

    auto eval_axis = [&](int axis, int d) {
        double acc_val = 0.0;
        for (int i = d; i < kCoeffs; ++i) {
            double coeff = 1.0;
            for (int q = 0; q < d; ++q) {
                coeff *= static_cast<double>(i - q);
            }
            acc_val += coeff * c(i, axis) * std::pow(local, i - d);
        }
        return acc_val;
    };
    for (int axis = 0; axis < 3; ++axis) {
        if (pos != nullptr) {
            (*pos)(axis) = eval_axis(axis, 0);
        }
        if (vel != nullptr) {
            (*vel)(axis) = eval_axis(axis, 1);
        }
        if (acc != nullptr) {
            (*acc)(axis) = eval_axis(axis, 2);
        }
        if (jerk != nullptr) {
            (*jerk)(axis) = eval_axis(axis, 3);
        }
    }
}

std::vector<ReferenceSample> sample_trajectory(const TrajectoryPlan &plan, double dt,
                                               YawMode yaw_mode, double fixed_yaw,
                                               const std::vector<double> &waypoint_yaw) {
    if (!(dt > 0.0)) {
        throw ArgumentError("dt must be positive");
    }
    if (yaw_mode == YawMode::interpolated &&
        waypoint_yaw.size() != plan.waypoints.size()) {
        throw ArgumentError("interpolated yaw needs one yaw per waypoint");
    }

    std::vector<ReferenceSample> out;
    const double t0 = plan.start_time();
    const double t1 = plan.end_time();
    const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-12));
    out.reserve(steps + 1);

    auto yaw_at = [&](double t, const Vec3 &vel) -> std::pair<double, double> {
        switch (yaw_mode) {
        case YawMode::fixed:
            return {fixed_yaw, 0.0};
        case YawMode::tangent: {
            const double speed2 = vel.head<2>().squaredNorm();
            if (speed2 < 1e-12) {
                return {fixed_yaw, 0.0};
            }
            return {std::atan2(vel.y(), vel.x()), 0.0};
        }
        case YawMode::interpolated: {
            const auto it = std::upper_bound(plan.times.begin(), plan.times.end(), t);
            int k = static_cast<int>(it - plan.times.begin()) - 1;
            k = std::clamp(k, 0, static_cast<int>(plan.times.size()) - 2);
            const double ta = plan.times[static_cast<std::size_t>(k)];
            const double tb = plan.times[static_cast<std::size_t>(k) + 1];
            const double frac = std::clamp((t - ta) / (tb - ta), 0.0, 1.0);
            const double ya = waypoint_yaw[static_cast<std::size_t>(k)];
            const double yb = waypoint_yaw[static_cast<std::size_t>(k) + 1];
            return {ya + frac * (yb - ya), (yb - ya) / (tb - ta)};
        }
        }
        return {fixed_yaw, 0.0};
    };

    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = std::min(t0 + static_cast<double>(i) * dt, t1);
        ReferenceSample s;
        s.t = t;
        plan.evaluate(t, &s.position, &s.velocity, &s.acceleration);
        const auto [yaw, yaw_rate] = yaw_at(t, s.velocity);
        s.yaw = yaw;
        s.yaw_rate = yaw_rate;
        out.push_back(s);
    }
    return out;
}

} // namespace cubesim::plan
