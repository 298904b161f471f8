#pragma once

#include <optional>

#include "cubesim/control/allocation.hpp"
#include "cubesim/harness/scenario.hpp"
#include "cubesim/sim/integrate.hpp"

namespace cubesim::harness {

/// Time-aligned pose reference for metric evaluation.
struct ReferenceSeries {
    std::vector<double> t;
    std::vector<Vec3> position;
    std::vector<Quat> orientation;
};

struct BodyResult {
    sim::Trace trace;
    ReferenceSeries reference;
    MatX thruster_forces; // steps x n_t, post-clip
    std::vector<double> power; // [W] per step
    int saturation_steps = 0;
    double position_rmse = 0.0;    // [m]
    double orientation_rmse = 0.0; // [rad]
    double energy = 0.0;           // [J]
};

struct SimResult {
    std::vector<BodyResult> bodies;
    std::optional<double> docked_at; // docking condition 2 time, if any
    bool merged = false;
    MassProperties merged_properties;
    sim::Trace merged_trace; // continuation after an in-run merge
};

/// Deterministic closed-loop run: plan -> PD -> allocate -> clip ->
/// dynamics. Two-body scenarios with docking enabled additionally monitor
/// docking condition 2 (inter-module distance = L +/- tol sustained for the
/// window) and, if configured, merge into a composite assembly and continue.
SimResult run_scenario(const Scenario &scenario);

/// Root-mean-square position error, reference linearly resampled onto the
/// trace time base. Throws ArgumentError on empty time overlap.
double position_rmse(const sim::Trace &trace, const ReferenceSeries &reference);

/// RMS of rotation-vector orientation error norms.
double orientation_rmse(const sim::Trace &trace, const ReferenceSeries &reference);

/// First time the inter-body center distance stays within L +/- tol for a
/// full window: returns entry time + window, or nullopt.
std::optional<double> docking_check(const sim::Trace &trace_a, const sim::Trace &trace_b,
                                    double edge_length, double window, double tol);

} // namespace cubesim::harness
