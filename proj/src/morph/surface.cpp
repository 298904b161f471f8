#include "cubesim/morph/surface.hpp"

#include <cmath>
#include <map>
#include <ostream>

#include "cubesim/capability/hull3.hpp"
#include "cubesim/core/errors.hpp"

namespace cubesim::morph {

void RadialSurface::validate_closed() const {
    // Each undirected edge must be shared by exactly two triangles with
    // opposite directions, and V - E + F must equal 2.
    std::map<std::pair<int, int>, int> directed;
    for (const auto &t : triangles) {
        const std::pair<int, int> edges[3] = {{t[0], t[1]}, {t[1], t[2]}, {t[2], t[0]}};
        for (const auto &e : edges) {
            if (++directed[e] > 1) {
                throw TopologyError("duplicate directed edge: mesh not orientable");
            }
        }
    }
    std::size_t undirected = 0;
    for (const auto &[e, cnt] : directed) {
        if (e.first < e.second) {
            ++undirected;
            if (directed.count({e.second, e.first}) == 0) {
                throw TopologyError("boundary edge: mesh not closed");
            }
        }
    }
    const auto v = static_cast<long>(vertex_count());
    const auto f = static_cast<long>(triangles.size());
    const auto e = static_cast<long>(undirected);
    if (v - e + f != 2) {
        throw TopologyError("mesh Euler characteristic is not 2");
    }
}

RadialSurface radial_surface(const hydro::DirectionSet &directions,
                             const std::vector<double> &radii) {
    if (directions.size() < 12) {
        throw ArgumentError("radial surface needs n_s >= 12 directions");
    }
    if (radii.size() != static_cast<std::size_t>(directions.size())) {
        throw ArgumentError("radii/directions size mismatch");
    }
    std::size_t zeros = 0;
    for (double r : radii) {
        if (!std::isfinite(r)) {
            throw ArgumentError("radii must be finite");
        }
        if (r <= 0.0) {
            ++zeros;
        }
    }
    if (zeros * 2 > radii.size()) {
        throw NumericalError("degenerate radial surface: more than half the radii are zero");
    }

    RadialSurface s;
    s.directions = directions;
    s.radii = radii;
    const auto faces = capability::convex_hull_3d(directions.directions);
    s.triangles.reserve(faces.size());
    for (const auto &f : faces) {
        s.triangles.push_back(f.v);
    }
    return s;
}

RadialSurface radial_surface(const capability::WrenchSpace &space) {
    return radial_surface(space.directions, space.extents);
}

RadialSurface radial_surface(const capability::PowerSpace &space) {
    return radial_surface(space.directions, space.power);
}

WillmoreResult willmore_energy(const RadialSurface &surface) {
    surface.validate_closed();
    const int nv = surface.vertex_count();

    std::vector<Vec3> laplace(static_cast<std::size_t>(nv), Vec3::Zero());
    std::vector<double> mixed_area(static_cast<std::size_t>(nv), 0.0);
    std::vector<double> angle_sum(static_cast<std::size_t>(nv), 0.0);

    for (const auto &t : surface.triangles) {
        const Vec3 p[3] = {surface.vertex(t[0]), surface.vertex(t[1]), surface.vertex(t[2])};
        const double area2 = (p[1] - p[0]).cross(p[2] - p[0]).norm();
        const double area = 0.5 * area2;
        if (!(area > 0.0)) {
            throw NumericalError("degenerate triangle in radial surface");
        }

        double cot[3];
        double angle[3];
        bool obtuse = false;
        int obtuse_at = -1;
        for (int k = 0; k < 3; ++k) {
            const Vec3 u = p[(k + 1) % 3] - p[k];
            const Vec3 v = p[(k + 2) % 3] - p[k];
            const double cos_a = u.dot(v);
            const double sin_a = u.cross(v).norm();
            cot[k] = cos_a / std::max(sin_a, 1e-300);
            angle[k] = std::atan2(sin_a, cos_a);
            if (cos_a < 0.0) {
                obtuse = true;
                obtuse_at = k;
            }
        }

        for (int k = 0; k < 3; ++k) {
            const int i = t[static_cast<std::size_t>(k)];
            angle_sum[static_cast<std::size_t>(i)] += angle[k];
            // Meyer mixed area: Voronoi piece for non-obtuse triangles,
            // otherwise half/quarter splits.
            double a_piece;
            if (!obtuse) {
                const Vec3 e1 = p[(k + 1) % 3] - p[k];
                const Vec3 e2 = p[(k + 2) % 3] - p[k];
                a_piece = (e1.squaredNorm() * cot[(k + 2) % 3] +
                           e2.squaredNorm() * cot[(k + 1) % 3]) /
                          8.0;
            } else {
                a_piece = (k == obtuse_at) ? area / 2.0 : area / 4.0;
            }
            mixed_area[static_cast<std::size_t>(i)] += a_piece;
        }

        // Cotangent Laplacian accumulation: edge (i, j) opposite vertex k
        // picks up cot(angle at k).
        for (int k = 0; k < 3; ++k) {
            const int i = t[static_cast<std::size_t>((k + 1) % 3)];
            const int j = t[static_cast<std::size_t>((k + 2) % 3)];
            const Vec3 diff = surface.vertex(i) - surface.vertex(j);
            laplace[static_cast<std::size_t>(i)] += cot[k] * diff;
            laplace[static_cast<std::size_t>(j)] -= cot[k] * diff;
        }
    }

    WillmoreResult res;
    for (int i = 0; i < nv; ++i) {
        const double a = mixed_area[static_cast<std::size_t>(i)];
        if (!(a > 0.0)) {
            throw NumericalError("vanishing mixed area at vertex");
        }
        const double h = laplace[static_cast<std::size_t>(i)].norm() / (4.0 * a);
        const double defect = 2.0 * M_PI - angle_sum[static_cast<std::size_t>(i)];
        res.mean_term += h * h * a;
        res.gauss_term += defect; // K_i a_i = angle defect exactly
        res.total_area += a;
    }
    res.energy = res.mean_term - res.gauss_term;
    return res;
}

void save_surface_off(const RadialSurface &surface, std::ostream &os) {
    os << "OFF\n" << surface.vertex_count() << ' ' << surface.triangles.size() << " 0\n";
    os.precision(17);
    for (int i = 0; i < surface.vertex_count(); ++i) {
        const Vec3 v = surface.vertex(i);
        os << v.x() << ' ' << v.y() << ' ' << v.z() << "\n";
    }
    for (const auto &t : surface.triangles) {
        os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
    }
}

} // namespace cubesim::morph
