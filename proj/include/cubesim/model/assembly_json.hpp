#pragma once

#include <string>

#include <json.hpp>

#include "cubesim/model/assembly.hpp"

namespace cubesim {

/// assembly.json schema (version 1, SI units, right-handed frames,
/// quaternions as [w, x, y, z]):
///
/// {
///   "version": 1,
///   "default_spec": { ... },          // optional, merged into each module
///   "modules": [
///     {
///       "cell": [i, j, k],
///       "orientation": [w, x, y, z],  // optional, one of the 24 cube
///                                     // rotations; identity by default
///       "spec": {
///         "edge_length": 0.21,
///         "mass": 9.261,              // default: neutral buoyancy at
///                                     // rho = 1000
///         "inertia": [[...3x3...]] | [ixx, iyy, izz],  // default m L^2/6
///         "body_points": 20000,
///         "thrusters": [              // default: the 8-thruster layout
///           {"position": [...], "direction": [...],
///            "f_min": -10, "f_max": 10,
///            "cmd_poly": [6 coeffs], "power_poly": [6 coeffs],
///            "cmd_range": [-1, 1]}
///         ]
///       }
///     }
///   ]
/// }
nlohmann::json assembly_to_json(const Assembly &assembly);
Assembly assembly_from_json(const nlohmann::json &j);

Assembly load_assembly_file(const std::string &path);
void save_assembly_file(const Assembly &assembly, const std::string &path);

} // namespace cubesim
