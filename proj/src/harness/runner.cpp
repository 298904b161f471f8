#include "cubesim/harness/runner.hpp"

#include <algorithm>
#include <cmath>

#include "cubesim/control/thruster_model.hpp"
#include "cubesim/core/errors.hpp"
#include "cubesim/core/rng.hpp"
#include "cubesim/plan/paths.hpp"

namespace cubesim::harness {

namespace {

struct BodyRuntime {
    MassProperties props;
    sim::PlantModel plant;
    control::AllocationModel allocation;
    std::optional<plan::TrajectoryPlan> plan;
    plan::YawMode yaw_mode = plan::YawMode::fixed;
    double yaw_value = 0.0;
    Quat hold_orientation = Quat::Identity();
    Vec3 hold_position = Vec3::Zero();
    std::vector<std::pair<double, Vec6>> wrench_steps; // open-loop mode
    sim::BodyState state;
};

control::Reference reference_at(const BodyRuntime &rt, double t) {
    control::Reference ref;
    if (!rt.plan.has_value()) {
        ref.position = rt.hold_position;
        ref.orientation = rt.hold_orientation;
        return ref;
    }
    Vec3 pos, vel, acc;
    rt.plan->evaluate(t, &pos, &vel, &acc);
    ref.position = pos;
    ref.velocity = vel;
    ref.acceleration = acc;
    double yaw = rt.yaw_value;
    if (rt.yaw_mode == plan::YawMode::tangent && vel.head<2>().norm() > 1e-9) {
        yaw = std::atan2(vel.y(), vel.x());
    }
    ref.orientation = Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ()));
    return ref;
}

Vec6 scripted_wrench(const std::vector<std::pair<double, Vec6>> &steps, double t) {
    Vec6 w = Vec6::Zero();
    for (const auto &[ts, wrench] : steps) {
        if (t + 1e-12 >= ts) {
            w = wrench;
        }
    }
    return w;
}

BodyRuntime make_runtime(const Scenario &scenario, const BodyConfig &cfg,
                         std::uint64_t lut_seed) {
    BodyRuntime rt;
    rt.props = compose_mass_properties(cfg.assembly);
    rt.plant.mass = mass_matrix(rt.props, scenario.plant.added_mass);

    hydro::DragLutParams lut_params;
    lut_params.n_s = scenario.plant.n_s;
    lut_params.rho = scenario.plant.rho;
    lut_params.c_d = scenario.plant.c_d;
    lut_params.samples_per_module = scenario.plant.samples;
    lut_params.alpha = scenario.plant.alpha;
    lut_params.seed = lut_seed;
    rt.plant.drag = hydro::build_drag_lut(cfg.assembly, lut_params);
    if (scenario.plant.ambient_flow.norm() > 0.0) {
        const Vec3 flow = scenario.plant.ambient_flow;
        rt.plant.ambient_flow = [flow](const Vec3 &) { return flow; };
    }

    rt.allocation = control::build_allocation(cfg.assembly, rt.props);
    rt.state = cfg.initial;
    rt.yaw_mode = cfg.trajectory.yaw_mode;
    rt.yaw_value = cfg.trajectory.yaw_value;
    rt.hold_position = cfg.initial.position;
    rt.hold_orientation = cfg.initial.orientation;

    const auto &traj = cfg.trajectory;
    std::vector<Vec3> waypoints;
    std::vector<double> times;
    switch (traj.kind) {
    case TrajectorySpec::Kind::hold:
        break;
    case TrajectorySpec::Kind::spiral:
        waypoints = plan::spiral_waypoints(traj.radius, traj.pitch, traj.turns, traj.count);
        break;
    case TrajectorySpec::Kind::mobius:
        waypoints = plan::mobius_waypoints(traj.radius, traj.half_width, traj.count);
        break;
    case TrajectorySpec::Kind::waypoints:
        waypoints = traj.waypoints;
        times = traj.times;
        break;
    case TrajectorySpec::Kind::wrench_script:
        rt.wrench_steps = traj.wrench_steps;
        break;
    }
    if (!waypoints.empty()) {
        for (auto &w : waypoints) {
            w += traj.offset;
        }
        if (times.empty()) {
            const int n = static_cast<int>(waypoints.size());
            times.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                times[static_cast<std::size_t>(i)] =
                    traj.duration * static_cast<double>(i) / (n - 1);
            }
        }
        rt.plan = plan::plan_min_snap(waypoints, times);
    }
    return rt;
}

// Closed-loop wrench source for one body (PD + allocation + clipping).
sim::WrenchSource control_law(const Scenario &scenario, BodyRuntime &rt) {
    if (!rt.wrench_steps.empty()) {
        auto steps = rt.wrench_steps;
        return [steps](double t, const sim::BodyState &) {
            return scripted_wrench(steps, t);
        };
    }
    const control::GainSet gains = scenario.gains;
    const BodyRuntime *rt_ptr = &rt;
    return [rt_ptr, gains](double t, const sim::BodyState &state) {
        const control::Reference ref = reference_at(*rt_ptr, t);
        const Vec6 tau = control::pd_wrench(state, ref, gains, rt_ptr->plant);
        const control::AllocationResult alloc = control::allocate(rt_ptr->allocation, tau);
        return Vec6(rt_ptr->allocation.jacobian * alloc.forces);
    };
}

void record_step(BodyResult &result, BodyRuntime &rt, const Scenario &scenario, double t,
                 std::size_t step) {
    const control::Reference ref = reference_at(rt, t);
    Vec6 applied = Vec6::Zero();
    if (!rt.wrench_steps.empty()) {
        applied = scripted_wrench(rt.wrench_steps, t);
        result.thruster_forces.row(static_cast<Eigen::Index>(step)).setZero();
        result.power.push_back(0.0);
    } else {
        const Vec6 tau = control::pd_wrench(rt.state, ref, scenario.gains, rt.plant);
        const control::AllocationResult alloc = control::allocate(rt.allocation, tau);
        applied = rt.allocation.jacobian * alloc.forces;
        result.thruster_forces.row(static_cast<Eigen::Index>(step)) =
            alloc.forces.transpose();
        double p = 0.0;
        for (int i = 0; i < rt.allocation.thruster_count(); ++i) {
            p += control::thruster_power(rt.allocation.thrusters[static_cast<std::size_t>(i)],
                                         alloc.forces(i));
        }
        result.power.push_back(p);
        if (alloc.clipped) {
            ++result.saturation_steps;
        }
    }
    result.trace.push_back({t, rt.state, applied});
    result.reference.t.push_back(t);
    result.reference.position.push_back(ref.position);
    result.reference.orientation.push_back(ref.orientation);
}

void finalize_metrics(BodyResult &result, double dt) {
    result.position_rmse = position_rmse(result.trace, result.reference);
    result.orientation_rmse = orientation_rmse(result.trace, result.reference);
    result.energy = 0.0;
    for (double p : result.power) {
        result.energy += p * dt;
    }
}

} // namespace

SimResult run_scenario(const Scenario &scenario) {
    scenario.validate();
    Rng root(scenario.seed);

    std::vector<BodyRuntime> runtimes;
    runtimes.reserve(scenario.bodies.size());
    for (std::size_t i = 0; i < scenario.bodies.size(); ++i) {
        runtimes.push_back(
            make_runtime(scenario, scenario.bodies[i], root.split(i).next_u64()));
    }

    const auto steps = static_cast<std::size_t>(std::llround(scenario.t_end / scenario.dt));
    SimResult result;
    result.bodies.resize(runtimes.size());
    std::vector<sim::WrenchSource> laws;
    for (std::size_t b = 0; b < runtimes.size(); ++b) {
        result.bodies[b].thruster_forces.resize(
            static_cast<Eigen::Index>(steps + 1),
            runtimes[b].allocation.thruster_count());
        result.bodies[b].power.reserve(steps + 1);
        laws.push_back(control_law(scenario, runtimes[b]));
    }

    const bool watch_docking = scenario.docking.enabled && runtimes.size() == 2;
    const double edge = scenario.bodies.front().assembly.modules.front().spec.edge_length;
    double in_band_since = -1.0;

    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * scenario.dt;
        for (std::size_t b = 0; b < runtimes.size(); ++b) {
            record_step(result.bodies[b], runtimes[b], scenario, t, i);
            if (!runtimes[b].state.position.allFinite() ||
                !runtimes[b].state.twist.allFinite()) {
                throw DivergenceError("body diverged at t=" + std::to_string(t));
            }
        }

        if (watch_docking && !result.docked_at.has_value()) {
            const double dist =
                (runtimes[0].state.position - runtimes[1].state.position).norm();
            if (std::abs(dist - edge) <= scenario.docking.tol) {
                if (in_band_since < 0.0) {
                    in_band_since = t;
                } else if (t - in_band_since >= scenario.docking.window) {
                    result.docked_at = in_band_since + scenario.docking.window;
                }
            } else {
                in_band_since = -1.0;
            }
        }

        if (result.docked_at.has_value() && scenario.docking.merge) {
            break; // merge handled below; traces end at the docking event
        }
        if (i == steps) {
            break;
        }
        for (std::size_t b = 0; b < runtimes.size(); ++b) {
            runtimes[b].state =
                sim::rk4_step(runtimes[b].state, runtimes[b].plant, t, laws[b], scenario.dt);
        }
    }

    for (auto &body : result.bodies) {
        body.thruster_forces.conservativeResize(
            static_cast<Eigen::Index>(body.trace.size()), Eigen::NoChange);
        finalize_metrics(body, scenario.dt);
    }

    // Reconfiguration: merge the two docked modules into one assembly and
    // continue as a single composite body holding its pose.
    if (result.docked_at.has_value() && scenario.docking.merge) {
        Assembly merged;
        merged.modules.push_back(scenario.bodies[0].assembly.modules.front());
        merged.modules.back().cell = {0, 0, 0};
        merged.modules.push_back(scenario.bodies[1].assembly.modules.front());
        merged.modules.back().cell = {1, 0, 0};
        result.merged_properties = compose_mass_properties(merged);
        result.merged = true;

        const double t_merge = result.docked_at.value();
        if (t_merge < scenario.t_end) {
            BodyConfig merged_cfg;
            merged_cfg.assembly = merged;
            // Composite pose: CoM between the modules, momentum-conserving
            // twist.
            const Vec3 pa = runtimes[0].state.position;
            const Vec3 pb = runtimes[1].state.position;
            const double ma = runtimes[0].props.total_mass;
            const double mb = runtimes[1].props.total_mass;
            merged_cfg.initial.position = (ma * pa + mb * pb) / (ma + mb);
            merged_cfg.initial.orientation = runtimes[0].state.orientation;
            const Vec3 va = runtimes[0].state.orientation *
                            runtimes[0].state.linear();
            const Vec3 vb = runtimes[1].state.orientation *
                            runtimes[1].state.linear();
            const Vec3 v_world = (ma * va + mb * vb) / (ma + mb);
            merged_cfg.initial.twist.head<3>() =
                merged_cfg.initial.orientation.conjugate() * v_world;
            merged_cfg.trajectory.kind = TrajectorySpec::Kind::hold;

            BodyRuntime rt = make_runtime(scenario, merged_cfg, root.split(99).next_u64());
            sim::WrenchSource law = control_law(scenario, rt);
            const auto rem =
                static_cast<std::size_t>(std::llround((scenario.t_end - t_merge) / scenario.dt));
            for (std::size_t i = 0; i <= rem; ++i) {
                const double t = t_merge + static_cast<double>(i) * scenario.dt;
                result.merged_trace.push_back({t, rt.state, Vec6::Zero()});
                if (i == rem) {
                    break;
                }
                rt.state = sim::rk4_step(rt.state, rt.plant, t, law, scenario.dt);
            }
        }
    }
    return result;
}

namespace {

Vec3 interp_position(const ReferenceSeries &ref, double t, std::size_t *hint) {
    while (*hint + 1 < ref.t.size() && ref.t[*hint + 1] < t) {
        ++*hint;
    }
    const std::size_t k = *hint;
    if (k + 1 >= ref.t.size()) {
        return ref.position.back();
    }
    const double ta = ref.t[k], tb = ref.t[k + 1];
    const double u = std::clamp((t - ta) / std::max(tb - ta, 1e-300), 0.0, 1.0);
    return (1.0 - u) * ref.position[k] + u * ref.position[k + 1];
}

Quat interp_orientation(const ReferenceSeries &ref, double t, std::size_t *hint) {
    while (*hint + 1 < ref.t.size() && ref.t[*hint + 1] < t) {
        ++*hint;
    }
    const std::size_t k = *hint;
    if (k + 1 >= ref.t.size()) {
        return ref.orientation.back();
    }
    const double ta = ref.t[k], tb = ref.t[k + 1];
    const double u = std::clamp((t - ta) / std::max(tb - ta, 1e-300), 0.0, 1.0);
    return ref.orientation[k].slerp(u, ref.orientation[k + 1]);
}

void check_overlap(const sim::Trace &trace, const ReferenceSeries &ref) {
    if (trace.empty() || ref.t.empty()) {
        throw ArgumentError("rmse needs non-empty trace and reference");
    }
    if (trace.back().t < ref.t.front() || trace.front().t > ref.t.back()) {
        throw ArgumentError("trace and reference do not overlap in time");
    }
}

} // namespace

double position_rmse(const sim::Trace &trace, const ReferenceSeries &reference) {
    check_overlap(trace, reference);
    double acc = 0.0;
    std::size_t n = 0, hint = 0;
    for (const auto &s : trace) {
        if (s.t < reference.t.front() || s.t > reference.t.back()) {
            continue;
        }
        const Vec3 ref_pos = interp_position(reference, s.t, &hint);
        acc += (s.state.position - ref_pos).squaredNorm();
        ++n;
    }
    if (n == 0) {
        throw ArgumentError("no overlapping samples for rmse");
    }
    return std::sqrt(acc / static_cast<double>(n));
}

double orientation_rmse(const sim::Trace &trace, const ReferenceSeries &reference) {
    check_overlap(trace, reference);
    double acc = 0.0;
    std::size_t n = 0, hint = 0;
    for (const auto &s : trace) {
        if (s.t < reference.t.front() || s.t > reference.t.back()) {
            continue;
        }
        const Quat ref_q = interp_orientation(reference, s.t, &hint);
        const Vec3 err = rotation_vector(ref_q * s.state.orientation.conjugate());
        acc += err.squaredNorm();
        ++n;
    }
    if (n == 0) {
        throw ArgumentError("no overlapping samples for rmse");
    }
    return std::sqrt(acc / static_cast<double>(n));
}

std::optional<double> docking_check(const sim::Trace &trace_a, const sim::Trace &trace_b,
                                    double edge_length, double window, double tol) {
    const std::size_t n = std::min(trace_a.size(), trace_b.size());
    double in_band_since = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = trace_a[i].t;
        const double dist =
            (trace_a[i].state.position - trace_b[i].state.position).norm();
        if (std::abs(dist - edge_length) <= tol) {
            if (in_band_since < 0.0) {
                in_band_since = t;
            } else if (t - in_band_since >= window) {
                return in_band_since + window;
            }
        } else {
            in_band_since = -1.0;
        }
    }
    return std::nullopt;
}

} // namespace cubesim::harness
