#include "cubesim/capability/hull3.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "cubesim/core/errors.hpp"

namespace cubesim::capability {

namespace {

struct Face {
    int a, b, c;
    Vec3 normal;
    double offset;
    bool alive = true;
};

Face make_face(const std::vector<Vec3> &pts, int a, int b, int c, const Vec3 &inside) {
    Face f{a, b, c, Vec3::Zero(), 0.0, true};
    Vec3 n = (pts[static_cast<std::size_t>(b)] - pts[static_cast<std::size_t>(a)])
                 .cross(pts[static_cast<std::size_t>(c)] - pts[static_cast<std::size_t>(a)]);
    const double len = n.norm();
    if (len < 1e-300) {
        throw NumericalError("degenerate hull face");
    }
    n /= len;
    double off = n.dot(pts[static_cast<std::size_t>(a)]);
    if (n.dot(inside) > off) { // flip to keep the interior below the plane
        std::swap(f.b, f.c);
        n = -n;
        off = -off;
    }
    f.normal = n;
    f.offset = off;
    return f;
}

} // namespace

std::vector<HullFace> convex_hull_3d(const std::vector<Vec3> &points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) {
        throw NumericalError("convex hull needs at least 4 points");
    }

    double scale = 0.0;
    for (const auto &p : points) {
        scale = std::max(scale, p.cwiseAbs().maxCoeff());
    }
    const double eps = std::max(scale, 1e-12) * 1e-10;

    // Initial tetrahedron from spread-out points.
    int i0 = 0, i1 = -1;
    for (int i = 1; i < n; ++i) {
        if ((points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(i0)]).norm() >
            eps) {
            i1 = i;
            break;
        }
    }
    if (i1 < 0) {
        throw NumericalError("hull degenerate: all points coincide");
    }
    int i2 = -1;
    double best = eps;
    for (int i = 0; i < n; ++i) {
        const double area = (points[static_cast<std::size_t>(i)] -
                             points[static_cast<std::size_t>(i0)])
                                .cross(points[static_cast<std::size_t>(i)] -
                                       points[static_cast<std::size_t>(i1)])
                                .norm();
        if (area > best) {
            best = area;
            i2 = i;
        }
    }
    if (i2 < 0) {
        throw NumericalError("hull degenerate: points are collinear");
    }
    const Vec3 plane_n = (points[static_cast<std::size_t>(i1)] -
                          points[static_cast<std::size_t>(i0)])
                             .cross(points[static_cast<std::size_t>(i2)] -
                                    points[static_cast<std::size_t>(i0)])
                             .normalized();
    int i3 = -1;
    best = eps;
    for (int i = 0; i < n; ++i) {
        const double h = std::abs(plane_n.dot(points[static_cast<std::size_t>(i)] -
                                              points[static_cast<std::size_t>(i0)]));
        if (h > best) {
            best = h;
            i3 = i;
        }
    }
    if (i3 < 0) {
        throw NumericalError("hull degenerate: points are coplanar");
    }

    const Vec3 inside = 0.25 * (points[static_cast<std::size_t>(i0)] +
                                points[static_cast<std::size_t>(i1)] +
                                points[static_cast<std::size_t>(i2)] +
                                points[static_cast<std::size_t>(i3)]);
    std::vector<Face> faces;
    faces.push_back(make_face(points, i0, i1, i2, inside));
    faces.push_back(make_face(points, i0, i1, i3, inside));
    faces.push_back(make_face(points, i0, i2, i3, inside));
    faces.push_back(make_face(points, i1, i2, i3, inside));

    for (int p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) {
            continue;
        }
        const Vec3 &pt = points[static_cast<std::size_t>(p)];
        // Visible faces.
        std::vector<int> visible;
        for (std::size_t fi = 0; fi < faces.size(); ++fi) {
            if (faces[fi].alive && faces[fi].normal.dot(pt) > faces[fi].offset + eps) {
                visible.push_back(static_cast<int>(fi));
            }
        }
        if (visible.empty()) {
            continue; // interior point
        }
        // Horizon: edges of visible faces bordering a hidden face. Count
        // directed edges; an edge appearing once is on the horizon.
        std::map<std::pair<int, int>, int> edge_count;
        for (int fi : visible) {
            const Face &f = faces[static_cast<std::size_t>(fi)];
            const std::pair<int, int> edges[3] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
            for (const auto &e : edges) {
                const auto key = e.first < e.second ? e : std::make_pair(e.second, e.first);
                edge_count[key] += 1;
            }
            faces[static_cast<std::size_t>(fi)].alive = false;
        }
        for (int fi : visible) {
            const Face &f = faces[static_cast<std::size_t>(fi)];
            const std::pair<int, int> edges[3] = {{f.a, f.b}, {f.b, f.c}, {f.c, f.a}};
            for (const auto &e : edges) {
                const auto key = e.first < e.second ? e : std::make_pair(e.second, e.first);
                if (edge_count[key] == 1) {
                    faces.push_back(make_face(points, e.first, e.second, p, inside));
                }
            }
        }
    }

    std::vector<HullFace> out;
    for (const auto &f : faces) {
        if (f.alive) {
            out.push_back({{f.a, f.b, f.c}, f.normal, f.offset});
        }
    }
    return out;
}

} // namespace cubesim::capability
