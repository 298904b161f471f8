#include "cubesim/model/assembly_json.hpp"

#include <fstream>

#include "cubesim/core/errors.hpp"

namespace cubesim {

namespace {

using nlohmann::json;

json vec3_to_json(const Vec3 &v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json &j, const char *what) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError(std::string(what) + " must be a 3-array");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json poly_to_json(const Poly5 &p) {
    json a = json::array();
    for (double c : p) {
        a.push_back(c);
    }
    return a;
}

Poly5 poly_from_json(const json &j, const char *what) {
    if (!j.is_array() || j.size() > 6) {
        throw ConfigError(std::string(what) + " must be an array of up to 6 coefficients");
    }
    Poly5 p{0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < j.size(); ++i) {
        p[i] = j[i].get<double>();
    }
    return p;
}

json thruster_to_json(const ThrusterSpec &t) {
    return json{{"position", vec3_to_json(t.position)},
                {"direction", vec3_to_json(t.direction)},
                {"f_min", t.f_min},
                {"f_max", t.f_max},
                {"cmd_poly", poly_to_json(t.cmd_poly)},
                {"power_poly", poly_to_json(t.power_poly)},
                {"cmd_range", json::array({t.cmd_min, t.cmd_max})}};
}

ThrusterSpec thruster_from_json(const json &j) {
    ThrusterSpec t;
    t.position = vec3_from_json(j.at("position"), "thruster position");
    t.direction = vec3_from_json(j.at("direction"), "thruster direction").normalized();
    if (j.contains("f_min")) {
        t.f_min = j["f_min"].get<double>();
    }
    if (j.contains("f_max")) {
        t.f_max = j["f_max"].get<double>();
    }
    if (j.contains("cmd_poly")) {
        t.cmd_poly = poly_from_json(j["cmd_poly"], "cmd_poly");
    }
    if (j.contains("power_poly")) {
        t.power_poly = poly_from_json(j["power_poly"], "power_poly");
    }
    if (j.contains("cmd_range")) {
        t.cmd_min = j["cmd_range"][0].get<double>();
        t.cmd_max = j["cmd_range"][1].get<double>();
    }
    return t;
}

json spec_to_json(const ModuleSpec &m) {
    json inertia = json::array();
    for (int r = 0; r < 3; ++r) {
        inertia.push_back(json::array({m.inertia(r, 0), m.inertia(r, 1), m.inertia(r, 2)}));
    }
    json thrusters = json::array();
    for (const auto &t : m.thrusters) {
        thrusters.push_back(thruster_to_json(t));
    }
    return json{{"edge_length", m.edge_length},
                {"mass", m.mass},
                {"inertia", inertia},
                {"body_points", m.body_points},
                {"thrusters", thrusters}};
}

ModuleSpec spec_from_json(const json &j) {
    ModuleSpec m;
    if (j.contains("edge_length")) {
        m.edge_length = j["edge_length"].get<double>();
    }
    m.mass = j.contains("mass") ? j["mass"].get<double>()
                                : 1000.0 * std::pow(m.edge_length, 3.0);
    if (j.contains("inertia")) {
        const json &ij = j["inertia"];
        if (ij.is_array() && ij.size() == 3 && ij[0].is_number()) {
            m.inertia = Vec3(ij[0].get<double>(), ij[1].get<double>(), ij[2].get<double>())
                            .asDiagonal();
        } else if (ij.is_array() && ij.size() == 3) {
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) {
                    m.inertia(r, c) = ij[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]
                                          .get<double>();
                }
            }
        } else {
            throw ConfigError("inertia must be a 3-vector diagonal or 3x3 matrix");
        }
    } else {
        m.inertia = Mat3::Identity() * (m.mass * m.edge_length * m.edge_length / 6.0);
    }
    if (j.contains("body_points")) {
        m.body_points = j["body_points"].get<int>();
    }
    if (j.contains("thrusters")) {
        m.thrusters.clear();
        for (const auto &tj : j["thrusters"]) {
            m.thrusters.push_back(thruster_from_json(tj));
        }
    } else {
        m.thrusters = default_thruster_layout(m.edge_length);
    }
    return m;
}

} // namespace

nlohmann::json assembly_to_json(const Assembly &assembly) {
    json modules = json::array();
    for (const auto &m : assembly.modules) {
        const Quat q(m.rotation());
        modules.push_back(
            json{{"cell", json::array({m.cell.x(), m.cell.y(), m.cell.z()})},
                 {"orientation", json::array({q.w(), q.x(), q.y(), q.z()})},
                 {"spec", spec_to_json(m.spec)}});
    }
    return json{{"version", 1}, {"modules", modules}};
}

Assembly assembly_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("modules")) {
        throw ConfigError("assembly JSON must contain a modules array");
    }
    if (j.contains("version") && j["version"].get<int>() != 1) {
        throw ConfigError("unsupported assembly schema version");
    }
    Assembly a;
    const json defaults = j.value("default_spec", json::object());
    for (const auto &mj : j["modules"]) {
        ModulePlacement p;
        if (!mj.contains("cell")) {
            throw ConfigError("module entry missing cell");
        }
        const json &cj = mj["cell"];
        p.cell = {cj[0].get<int>(), cj[1].get<int>(), cj[2].get<int>()};

        json spec_json = defaults;
        if (mj.contains("spec")) {
            spec_json.update(mj["spec"]);
        }
        p.spec = spec_from_json(spec_json);

        if (mj.contains("orientation")) {
            const json &oj = mj["orientation"];
            if (!oj.is_array() || oj.size() != 4) {
                throw ConfigError("orientation must be a quaternion [w, x, y, z]");
            }
            const Quat q(oj[0].get<double>(), oj[1].get<double>(), oj[2].get<double>(),
                         oj[3].get<double>());
            if (std::abs(q.norm() - 1.0) > 1e-6) {
                throw ConfigError("orientation quaternion must be normalized");
            }
            p.orientation = cube_rotation_index(q.toRotationMatrix(), 1e-6);
        }
        a.modules.push_back(std::move(p));
    }
    a.validate();
    return a;
}

Assembly load_assembly_file(const std::string &path) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError("cannot open assembly file: " + path);
    }
    json j;
    try {
        is >> j;
    } catch (const json::parse_error &e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return assembly_from_json(j);
}

void save_assembly_file(const Assembly &assembly, const std::string &path) {
    std::ofstream os(path);
    if (!os) {
        throw ConfigError("cannot write assembly file: " + path);
    }
    os << assembly_to_json(assembly).dump(2) << "\n";
}

} // namespace cubesim
