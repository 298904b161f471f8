#include "cubesim/harness/scenario.hpp"

#include <filesystem>
#include <fstream>

#include "cubesim/core/errors.hpp"
#include "cubesim/model/assembly_json.hpp"

namespace cubesim::harness {

namespace {

using nlohmann::json;

Vec3 vec3_of(const json &j, const char *what) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError(std::string(what) + " must be a 3-array");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Vec6 vec6_of(const json &j, const char *what) {
    if (!j.is_array() || j.size() != 6) {
        throw ConfigError(std::string(what) + " must be a 6-array");
    }
    Vec6 v;
    for (int i = 0; i < 6; ++i) {
        v(i) = j[static_cast<std::size_t>(i)].get<double>();
    }
    return v;
}

TrajectorySpec trajectory_from_json(const json &j) {
    TrajectorySpec spec;
    const std::string type = j.value("type", "hold");
    if (type == "hold") {
        spec.kind = TrajectorySpec::Kind::hold;
    } else if (type == "spiral") {
        spec.kind = TrajectorySpec::Kind::spiral;
        spec.radius = j.value("radius", spec.radius);
        spec.pitch = j.value("pitch", spec.pitch);
        spec.turns = j.value("turns", spec.turns);
        spec.count = j.value("count", spec.count);
    } else if (type == "mobius") {
        spec.kind = TrajectorySpec::Kind::mobius;
        spec.radius = j.value("radius", spec.radius);
        spec.half_width = j.value("half_width", spec.half_width);
        spec.count = j.value("count", spec.count);
    } else if (type == "waypoints") {
        spec.kind = TrajectorySpec::Kind::waypoints;
        if (!j.contains("points")) {
            throw ConfigError("waypoints trajectory needs points");
        }
        for (const auto &p : j["points"]) {
            spec.waypoints.push_back(vec3_of(p, "waypoint"));
        }
        if (j.contains("times")) {
            for (const auto &t : j["times"]) {
                spec.times.push_back(t.get<double>());
            }
        }
    } else if (type == "wrench_script") {
        spec.kind = TrajectorySpec::Kind::wrench_script;
        if (!j.contains("steps")) {
            throw ConfigError("wrench_script trajectory needs steps");
        }
        for (const auto &s : j["steps"]) {
            spec.wrench_steps.emplace_back(s.at("t").get<double>(),
                                           vec6_of(s.at("wrench"), "wrench"));
        }
    } else {
        throw ConfigError("unknown trajectory type: " + type);
    }
    spec.duration = j.value("duration", spec.duration);
    if (j.contains("offset")) {
        spec.offset = vec3_of(j["offset"], "trajectory offset");
    }
    const std::string yaw = j.value("yaw", "fixed");
    if (yaw == "fixed") {
        spec.yaw_mode = plan::YawMode::fixed;
    } else if (yaw == "tangent") {
        spec.yaw_mode = plan::YawMode::tangent;
    } else if (yaw == "interpolated") {
        spec.yaw_mode = plan::YawMode::interpolated;
    } else {
        throw ConfigError("unknown yaw mode: " + yaw);
    }
    spec.yaw_value = j.value("yaw_value", 0.0);
    return spec;
}

} // namespace

void Scenario::validate() const {
    if (!(dt > 0.0) || !(t_end > 0.0)) {
        throw ConfigError("dt and t_end must be positive");
    }
    if (bodies.empty()) {
        throw ConfigError("scenario needs at least one body");
    }
    gains.validate();
    for (const auto &b : bodies) {
        b.assembly.validate();
        if (b.trajectory.kind == TrajectorySpec::Kind::waypoints) {
            if (b.trajectory.waypoints.size() < 2) {
                throw ConfigError("waypoint trajectory needs >= 2 points");
            }
            if (!b.trajectory.times.empty() &&
                b.trajectory.times.size() != b.trajectory.waypoints.size()) {
                throw ConfigError("waypoint times must match point count");
            }
        }
        // Keep the integration step well below the shortest segment.
        if (b.trajectory.kind != TrajectorySpec::Kind::hold &&
            b.trajectory.kind != TrajectorySpec::Kind::wrench_script) {
            double seg;
            if (!b.trajectory.times.empty()) {
                seg = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k + 1 < b.trajectory.times.size(); ++k) {
                    seg = std::min(seg, b.trajectory.times[k + 1] - b.trajectory.times[k]);
                }
            } else {
                const int n = b.trajectory.kind == TrajectorySpec::Kind::waypoints
                                  ? static_cast<int>(b.trajectory.waypoints.size())
                                  : b.trajectory.count;
                seg = b.trajectory.duration / std::max(1, n - 1);
            }
            if (dt > seg / 10.0) {
                throw ConfigError("dt must be < min segment duration / 10");
            }
        }
    }
}

Scenario scenario_from_json(const json &j, const std::string &base_dir) {
    Scenario s;
    s.seed = j.value("seed", 1ULL);
    s.dt = j.value("dt", 0.01);
    s.t_end = j.value("t_end", 60.0);

    if (j.contains("plant")) {
        const json &p = j["plant"];
        s.plant.rho = p.value("rho", s.plant.rho);
        s.plant.c_d = p.value("c_d", s.plant.c_d);
        s.plant.n_s = p.value("n_s", s.plant.n_s);
        s.plant.samples = p.value("samples", s.plant.samples);
        s.plant.alpha = p.value("alpha", s.plant.alpha);
        if (p.contains("ambient_flow")) {
            s.plant.ambient_flow = vec3_of(p["ambient_flow"], "ambient_flow");
        }
        if (p.contains("added_mass")) {
            const json &am = p["added_mass"];
            if (am.is_array() && am.size() == 6 && am[0].is_number()) {
                for (int i = 0; i < 6; ++i) {
                    s.plant.added_mass(i, i) = am[static_cast<std::size_t>(i)].get<double>();
                }
            } else {
                throw ConfigError("added_mass must be a 6-array of diagonal entries");
            }
        }
    }

    if (j.contains("gains")) {
        s.gains.kp = vec6_of(j["gains"].at("kp"), "kp");
        s.gains.kd = vec6_of(j["gains"].at("kd"), "kd");
    } else {
        s.gains = default_gains();
    }

    if (!j.contains("bodies") || !j["bodies"].is_array() || j["bodies"].empty()) {
        throw ConfigError("scenario needs a non-empty bodies array");
    }
    for (const auto &bj : j["bodies"]) {
        BodyConfig body;
        if (!bj.contains("assembly")) {
            throw ConfigError("body needs an assembly (path or inline object)");
        }
        const json &aj = bj["assembly"];
        if (aj.is_string()) {
            const std::filesystem::path p =
                std::filesystem::path(base_dir) / aj.get<std::string>();
            body.assembly = load_assembly_file(p.string());
        } else {
            body.assembly = assembly_from_json(aj);
        }
        if (bj.contains("initial")) {
            const json &ij = bj["initial"];
            if (ij.contains("position")) {
                body.initial.position = vec3_of(ij["position"], "initial position");
            }
            if (ij.contains("quaternion")) {
                const json &qj = ij["quaternion"];
                body.initial.orientation = Quat(qj[0].get<double>(), qj[1].get<double>(),
                                                qj[2].get<double>(), qj[3].get<double>())
                                               .normalized();
            }
            if (ij.contains("twist")) {
                body.initial.twist = vec6_of(ij["twist"], "initial twist");
            }
        }
        if (bj.contains("trajectory")) {
            body.trajectory = trajectory_from_json(bj["trajectory"]);
        }
        s.bodies.push_back(std::move(body));
    }

    if (j.contains("docking")) {
        const json &dj = j["docking"];
        s.docking.enabled = dj.value("enabled", true);
        s.docking.tol = dj.value("tol", s.docking.tol);
        s.docking.window = dj.value("window", s.docking.window);
        s.docking.merge = dj.value("merge", s.docking.merge);
    }

    s.validate();
    return s;
}

Scenario load_scenario_file(const std::string &path) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError("cannot open scenario file: " + path);
    }
    json j;
    try {
        is >> j;
    } catch (const json::parse_error &e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return scenario_from_json(j, std::filesystem::path(path).parent_path().string());
}

control::GainSet default_gains() {
    control::GainSet g;
    g.kp << 60.0, 60.0, 60.0, 4.0, 4.0, 4.0;
    g.kd << 35.0, 35.0, 35.0, 1.5, 1.5, 1.5;
    return g;
}

} // namespace cubesim::harness
