#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubesim/control/pd.hpp"
#include "cubesim/hydro/drag_lut.hpp"
#include "cubesim/model/assembly.hpp"
#include "cubesim/plan/min_snap.hpp"

namespace cubesim::harness {

struct TrajectorySpec {
    enum class Kind { hold, spiral, mobius, waypoints, wrench_script } kind = Kind::hold;
    // spiral
    double radius = 0.5, pitch = 0.2, turns = 2.0;
    // mobius
    double half_width = 0.1;
    int count = 64;
    double duration = 60.0;
    Vec3 offset = Vec3::Zero(); // translation applied to generated waypoints
    // explicit waypoints
    std::vector<Vec3> waypoints;
    std::vector<double> times;
    // yaw profile
    plan::YawMode yaw_mode = plan::YawMode::fixed;
    double yaw_value = 0.0;
    // open-loop wrench schedule: (time, wrench) steps, zero-order hold
    std::vector<std::pair<double, Vec6>> wrench_steps;
};

struct BodyConfig {
    Assembly assembly;
    sim::BodyState initial;
    TrajectorySpec trajectory;
};

struct PlantParams {
    double rho = 1000.0;
    double c_d = 1.05;
    int n_s = 128;
    int samples = 20000;
    double alpha = 0.0; // auto
    Vec3 ambient_flow = Vec3::Zero();
    Mat6 added_mass = Mat6::Zero();
};

struct DockingParams {
    bool enabled = false;
    double tol = 0.005;   // [m]
    double window = 1.0;  // [s]
    bool merge = true;
};

struct Scenario {
    std::uint64_t seed = 1;
    double dt = 0.01;
    double t_end = 60.0;
    PlantParams plant;
    control::GainSet gains;
    std::vector<BodyConfig> bodies;
    DockingParams docking;

    void validate() const;
};

/// Parses a scenario JSON document. Assembly references may be file paths
/// (resolved relative to base_dir) or inline objects.
Scenario scenario_from_json(const nlohmann::json &j, const std::string &base_dir = ".");
Scenario load_scenario_file(const std::string &path);

/// Shipped default gains (tuned once on the spiral scenario).
control::GainSet default_gains();

} // namespace cubesim::harness
