#include "cubesim/capability/spaces.hpp"

#include <cmath>

#include "cubesim/capability/simplex.hpp"
#include "cubesim/control/thruster_model.hpp"
#include "cubesim/core/errors.hpp"

namespace cubesim::capability {

Vec6 embed_direction(const Vec3 &d, WrenchMode mode) {
    Vec6 e = Vec6::Zero();
    if (mode == WrenchMode::force) {
        e.head<3>() = d;
    } else {
        e.tail<3>() = d;
    }
    return e;
}

double wrench_extent(const control::AllocationModel &model, const Vec3 &d, WrenchMode mode,
                     bool free_complement, VecX *forces) {
    const int nt = model.thruster_count();
    const Vec6 e = embed_direction(d.normalized(), mode);

    // Rows: the embedding rows always; complementary rows pinned to zero
    // unless freed. Variables: [F (nt), lambda].
    std::vector<int> rows;
    if (free_complement) {
        const int offset = (mode == WrenchMode::force) ? 0 : 3;
        rows = {offset, offset + 1, offset + 2};
    } else {
        rows = {0, 1, 2, 3, 4, 5};
    }
    const int m = static_cast<int>(rows.size());

    MatX a(m, nt + 1);
    VecX b = VecX::Zero(m);
    for (int i = 0; i < m; ++i) {
        a.row(i).head(nt) = model.jacobian.row(rows[static_cast<std::size_t>(i)]);
        a(i, nt) = -e(rows[static_cast<std::size_t>(i)]);
    }

    VecX lower(nt + 1), upper(nt + 1), c = VecX::Zero(nt + 1);
    for (int i = 0; i < nt; ++i) {
        lower(i) = model.thrusters[static_cast<std::size_t>(i)].f_min;
        upper(i) = model.thrusters[static_cast<std::size_t>(i)].f_max;
    }
    lower(nt) = 0.0;
    upper(nt) = std::numeric_limits<double>::infinity();
    c(nt) = 1.0;

    const LpResult res = solve_box_lp_max(c, a, b, lower, upper);
    if (!res.feasible) {
        // f_min <= 0 <= f_max makes lambda = 0 feasible; reaching this means
        // the invariants were violated upstream.
        throw NumericalError("wrench extent LP infeasible");
    }
    if (!res.bounded) {
        throw NumericalError("wrench extent LP unbounded");
    }
    if (forces != nullptr) {
        *forces = res.x.head(nt);
    }
    return res.objective;
}

WrenchSpace reachable_wrench_space(const control::AllocationModel &model, WrenchMode mode,
                                   int n_s, bool free_complement) {
    if (n_s < 4) {
        throw ArgumentError("wrench space needs n_s >= 4");
    }
    WrenchSpace space;
    space.mode = mode;
    space.directions = hydro::fibonacci_directions(n_s);
    space.extents.resize(static_cast<std::size_t>(n_s));
    for (int i = 0; i < n_s; ++i) {
        space.extents[static_cast<std::size_t>(i)] =
            wrench_extent(model, space.directions[i], mode, free_complement);
    }
    return space;
}

PowerSpace power_space(const control::AllocationModel &model, WrenchMode mode, int n_s) {
    PowerSpace space;
    space.mode = mode;
    space.directions = hydro::fibonacci_directions(n_s);
    space.power.resize(static_cast<std::size_t>(n_s), 0.0);
    space.attainable.resize(static_cast<std::size_t>(n_s), true);
    for (int i = 0; i < n_s; ++i) {
        const Vec6 e = embed_direction(space.directions[i], mode);
        const VecX f = model.pseudo_inverse * e;
        const double residual = (model.jacobian * f - e).norm();
        if (residual > 1e-9) {
            space.attainable[static_cast<std::size_t>(i)] = false;
            space.power[static_cast<std::size_t>(i)] = 0.0;
            continue;
        }
        double p = 0.0;
        for (int j = 0; j < model.thruster_count(); ++j) {
            p += control::thruster_power(model.thrusters[static_cast<std::size_t>(j)], f(j));
        }
        space.power[static_cast<std::size_t>(i)] = p;
    }
    return space;
}

double total_power(const PowerSpace &space) {
    double sum = 0.0;
    for (std::size_t i = 0; i < space.power.size(); ++i) {
        if (space.attainable[i]) {
            sum += space.power[i];
        }
    }
    return sum;
}

ThrustVariance thrust_variance(const control::AllocationModel &model, int n_s,
                               VarianceWeighting weighting, WrenchMode mode) {
    const int nt = model.thruster_count();
    const hydro::DirectionSet dirs = hydro::fibonacci_directions(n_s);

    ThrustVariance out;
    out.samples.resize(n_s, nt);
    for (int i = 0; i < n_s; ++i) {
        VecX f;
        if (weighting == VarianceWeighting::power) {
            f = model.pseudo_inverse * embed_direction(dirs[i], mode);
        } else {
            wrench_extent(model, dirs[i], mode, false, &f);
        }
        out.samples.row(i) = f.cwiseAbs().transpose();
    }
    out.mean_abs_thrust = out.samples.colwise().mean().transpose();
    const double grand = out.mean_abs_thrust.mean();
    out.variance = (out.mean_abs_thrust.array() - grand).square().mean();
    return out;
}

} // namespace cubesim::capability
