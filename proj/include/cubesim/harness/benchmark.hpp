#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cubesim/capability/mie.hpp"
#include "cubesim/capability/spaces.hpp"
#include "cubesim/model/assembly.hpp"

namespace cubesim::harness {

/// One benchmark row: the capability metric pipeline over the four
/// parameter-space surfaces (power/wrench x force/torque frames).
struct BenchmarkRow {
    std::string name;
    bool ok = false;
    std::string error;
    int thrusters = 0;

    // Omega_P, force frame
    double ed_power_force = 0.0, ew_power_force = 0.0, pw_force = 0.0, sigma2_tp = 0.0;
    // Omega_W, force frame
    double ed_wrench_force = 0.0, ew_wrench_force = 0.0, vmie_force = 0.0;
    // Omega_P, torque frame
    double ed_power_torque = 0.0, ew_power_torque = 0.0, pw_torque = 0.0, sigma2_tw = 0.0;
    // Omega_W, torque frame
    double ed_wrench_torque = 0.0, ew_wrench_torque = 0.0, vmie_torque = 0.0;
};

struct BenchmarkReport {
    int n_s = 0;
    bool power_normalized = false;
    std::vector<BenchmarkRow> rows;
};

/// Runs the metric pipeline per assembly. Failures are isolated per config
/// (the row carries the error, remaining rows are still produced).
/// When normalize_power is set, wrench extents are divided by the robot's
/// mean unit-wrench power before the Omega_W metrics are computed.
BenchmarkReport benchmark_report(const std::vector<std::pair<std::string, Assembly>> &configs,
                                 int n_s = 200, bool normalize_power = false);

nlohmann::json benchmark_to_json(const BenchmarkReport &report);
std::string benchmark_to_table(const BenchmarkReport &report);

} // namespace cubesim::harness
