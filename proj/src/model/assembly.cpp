#include "cubesim/model/assembly.hpp"

#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "cubesim/core/errors.hpp"

namespace cubesim {

namespace {

std::array<int, 3> key_of(const Eigen::Vector3i &c) { return {c.x(), c.y(), c.z()}; }

} // namespace

Vec3 ModulePlacement::center() const {
    const double l = spec.edge_length;
    return (cell.cast<double>().array() * l + 0.5 * l).matrix();
}

Mat3 ModulePlacement::rotation() const { return cube_rotation(orientation); }

void Assembly::validate() const {
    if (modules.empty()) {
        throw StructuralError("assembly must contain at least one module");
    }
    const double l0 = modules.front().spec.edge_length;
    std::set<std::array<int, 3>> cells;
    for (const auto &m : modules) {
        m.spec.validate();
        if (std::abs(m.spec.edge_length - l0) > 1e-12) {
            throw StructuralError("all modules on one lattice must share the edge length");
        }
        if (!cells.insert(key_of(m.cell)).second) {
            std::ostringstream msg;
            msg << "overlapping lattice cell (" << m.cell.x() << "," << m.cell.y() << ","
                << m.cell.z() << ")";
            throw StructuralError(msg.str());
        }
    }

    // Face-adjacency connectivity via BFS.
    std::set<std::array<int, 3>> seen;
    std::queue<Eigen::Vector3i> frontier;
    frontier.push(modules.front().cell);
    seen.insert(key_of(modules.front().cell));
    const Eigen::Vector3i steps[6] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                      {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
    while (!frontier.empty()) {
        const Eigen::Vector3i c = frontier.front();
        frontier.pop();
        for (const auto &s : steps) {
            const Eigen::Vector3i n = c + s;
            if (cells.count(key_of(n)) && !seen.count(key_of(n))) {
                seen.insert(key_of(n));
                frontier.push(n);
            }
        }
    }
    if (seen.size() != modules.size()) {
        throw StructuralError("assembly cells are not face-connected");
    }
}

std::size_t Assembly::thruster_count() const {
    std::size_t n = 0;
    for (const auto &m : modules) {
        n += m.spec.thrusters.size();
    }
    return n;
}

std::vector<ThrusterSpec> Assembly::thrusters_in_assembly_frame() const {
    std::vector<ThrusterSpec> out;
    out.reserve(thruster_count());
    for (const auto &m : modules) {
        const Mat3 r = m.rotation();
        const Vec3 c = m.center();
        for (ThrusterSpec t : m.spec.thrusters) {
            t.position = c + r * t.position;
            t.direction = r * t.direction;
            out.push_back(std::move(t));
        }
    }
    return out;
}

Assembly make_line_assembly(const ModuleSpec &spec, int count) {
    if (count < 1) {
        throw ArgumentError("module count must be >= 1");
    }
    Assembly a;
    for (int i = 0; i < count; ++i) {
        ModulePlacement p;
        p.spec = spec;
        p.cell = {i, 0, 0};
        a.modules.push_back(std::move(p));
    }
    return a;
}

Assembly make_benchmark_assembly(int module_count) {
    const ModuleSpec spec = make_cube_module();
    switch (module_count) {
    case 1:
        return make_line_assembly(spec, 1);
    case 2:
        return make_line_assembly(spec, 2);
    case 3: {
        Assembly a = make_line_assembly(spec, 2);
        ModulePlacement p;
        p.spec = spec;
        p.cell = {0, 1, 0};
        a.modules.push_back(std::move(p));
        return a;
    }
    default:
        throw ArgumentError("benchmark assemblies are defined for 1..3 modules");
    }
}

} // namespace cubesim
