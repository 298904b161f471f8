#include "cubesim/hydro/alpha_shape.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "cubesim/core/errors.hpp"

namespace cubesim::hydro {

namespace {

struct Tri {
    int v[3];   // vertices, ccw
    int adj[3]; // adj[i] shares the edge opposite v[i], -1 on the boundary
    bool alive;
};

// > 0 if c lies left of the directed line a->b.
inline double orient2d(double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

// > 0 if p is inside the circumcircle of ccw triangle (a, b, c).
inline double incircle(double ax, double ay, double bx, double by, double cx, double cy,
                       double px, double py) {
    const double adx = ax - px, ady = ay - py;
    const double bdx = bx - px, bdy = by - py;
    const double cdx = cx - px, cdy = cy - py;
    const double ad = adx * adx + ady * ady;
    const double bd = bdx * bdx + bdy * bdy;
    const double cd = cdx * cdx + cdy * cdy;
    return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
           ad * (bdx * cdy - bdy * cdx);
}

inline std::uint32_t part1by1(std::uint32_t x) {
    x &= 0x0000ffff;
    x = (x | (x << 8)) & 0x00ff00ff;
    x = (x | (x << 4)) & 0x0f0f0f0f;
    x = (x | (x << 2)) & 0x33333333;
    x = (x | (x << 1)) & 0x55555555;
    return x;
}

inline std::uint64_t hash64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Delaunay {
  public:
    // Points must be pre-normalized into roughly [0, 1]^2.
    explicit Delaunay(const std::vector<Vec2> &pts) {
        const int n = static_cast<int>(pts.size());
        xs_.resize(static_cast<std::size_t>(n) + 3);
        ys_.resize(static_cast<std::size_t>(n) + 3);
        for (int i = 0; i < n; ++i) {
            xs_[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)].x();
            ys_[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i)].y();
        }
        // Far super-triangle enclosing the unit box.
        super_ = n;
        xs_[static_cast<std::size_t>(n)] = -1e4;
        ys_[static_cast<std::size_t>(n)] = -1e4;
        xs_[static_cast<std::size_t>(n) + 1] = 1e4;
        ys_[static_cast<std::size_t>(n) + 1] = -1e4;
        xs_[static_cast<std::size_t>(n) + 2] = 0.5;
        ys_[static_cast<std::size_t>(n) + 2] = 1e4;
        tris_.push_back({{n, n + 1, n + 2}, {-1, -1, -1}, true});
        last_ = 0;

        // Morton-order insertion keeps walks short.
        std::vector<int> order(static_cast<std::size_t>(n));
        std::vector<std::uint32_t> code(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double x = std::clamp(xs_[static_cast<std::size_t>(i)], 0.0, 1.0);
            const double y = std::clamp(ys_[static_cast<std::size_t>(i)], 0.0, 1.0);
            const auto qx = static_cast<std::uint32_t>(x * 65535.0);
            const auto qy = static_cast<std::uint32_t>(y * 65535.0);
            code[static_cast<std::size_t>(i)] = part1by1(qx) | (part1by1(qy) << 1);
            order[static_cast<std::size_t>(i)] = i;
        }
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return code[static_cast<std::size_t>(a)] <
                                             code[static_cast<std::size_t>(b)]; });

        tris_.reserve(static_cast<std::size_t>(2 * n + 16));
        for (int idx : order) {
            insert(idx);
        }
    }

    const std::vector<Tri> &triangles() const { return tris_; }
    int super_vertex() const { return super_; }

    double x(int i) const { return xs_[static_cast<std::size_t>(i)]; }
    double y(int i) const { return ys_[static_cast<std::size_t>(i)]; }

  private:
    int locate(double px, double py) const {
        int cur = last_;
        if (!tris_[static_cast<std::size_t>(cur)].alive) {
            cur = find_alive();
        }
        int steps = 0;
        const int cap = static_cast<int>(tris_.size()) + 64;
        while (true) {
            if (++steps > cap) {
                return exhaustive_locate(px, py);
            }
            const Tri &t = tris_[static_cast<std::size_t>(cur)];
            bool moved = false;
            for (int e = 0; e < 3; ++e) {
                const int a = t.v[(e + 1) % 3];
                const int b = t.v[(e + 2) % 3];
                if (orient2d(x(a), y(a), x(b), y(b), px, py) < 0.0) {
                    if (t.adj[e] < 0) {
                        return exhaustive_locate(px, py);
                    }
                    cur = t.adj[e];
                    moved = true;
                    break;
                }
            }
            if (!moved) {
                return cur;
            }
        }
    }

    int find_alive() const {
        for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i) {
            if (tris_[static_cast<std::size_t>(i)].alive) {
                return i;
            }
        }
        throw NumericalError("triangulation lost all triangles");
    }

    int exhaustive_locate(double px, double py) const {
        for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i) {
            const Tri &t = tris_[static_cast<std::size_t>(i)];
            if (!t.alive) {
                continue;
            }
            bool inside = true;
            for (int e = 0; e < 3 && inside; ++e) {
                const int a = t.v[(e + 1) % 3];
                const int b = t.v[(e + 2) % 3];
                inside = orient2d(x(a), y(a), x(b), y(b), px, py) >= 0.0;
            }
            if (inside) {
                return i;
            }
        }
        throw NumericalError("point location failed in Delaunay triangulation");
    }

    void insert(int p) {
        const double px = x(p), py = y(p);
        const int seed = locate(px, py);

        // Grow the cavity of triangles whose circumcircle contains p.
        cavity_.clear();
        stack_.clear();
        stack_.push_back(seed);
        tris_[static_cast<std::size_t>(seed)].alive = false;
        cavity_.push_back(seed);
        while (!stack_.empty()) {
            const int ti = stack_.back();
            stack_.pop_back();
            const Tri t = tris_[static_cast<std::size_t>(ti)];
            for (int e = 0; e < 3; ++e) {
                const int nb = t.adj[e];
                if (nb < 0 || !tris_[static_cast<std::size_t>(nb)].alive) {
                    continue;
                }
                const Tri &u = tris_[static_cast<std::size_t>(nb)];
                if (incircle(x(u.v[0]), y(u.v[0]), x(u.v[1]), y(u.v[1]), x(u.v[2]), y(u.v[2]),
                             px, py) > 0.0) {
                    tris_[static_cast<std::size_t>(nb)].alive = false;
                    cavity_.push_back(nb);
                    stack_.push_back(nb);
                }
            }
        }

        // Boundary edges of the cavity, oriented ccw as seen from inside.
        boundary_.clear();
        for (int ti : cavity_) {
            const Tri &t = tris_[static_cast<std::size_t>(ti)];
            for (int e = 0; e < 3; ++e) {
                const int nb = t.adj[e];
                if (nb >= 0 && !tris_[static_cast<std::size_t>(nb)].alive) {
                    continue; // internal cavity edge
                }
                boundary_.push_back({t.v[(e + 1) % 3], t.v[(e + 2) % 3], nb});
            }
        }

        // Retriangulate: fan of (p, a, b) triangles over the boundary.
        edge_map_.clear();
        for (const auto &be : boundary_) {
            const int a = be.a, b = be.b, outside = be.nb;
            Tri nt{{p, a, b}, {outside, -1, -1}, true};
            const int nti = static_cast<int>(tris_.size());
            tris_.push_back(nt);
            if (outside >= 0) {
                Tri &o = tris_[static_cast<std::size_t>(outside)];
                for (int e = 0; e < 3; ++e) {
                    const int oa = o.v[(e + 1) % 3];
                    const int ob = o.v[(e + 2) % 3];
                    if ((oa == b && ob == a)) {
                        o.adj[e] = nti;
                        break;
                    }
                }
            }
            // Link across the spoke edges (p,a) and (b,p) via pending map.
            link_spoke(nti, 1, b, p); // edge opposite v[1]=a is (b, p)
            link_spoke(nti, 2, p, a); // edge opposite v[2]=b is (p, a)
        }
        last_ = static_cast<int>(tris_.size()) - 1;
    }

    void link_spoke(int tri, int slot, int u, int v) {
        const std::uint64_t key_fwd =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
            static_cast<std::uint32_t>(v);
        const std::uint64_t key_rev =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) << 32) |
            static_cast<std::uint32_t>(u);
        auto it = edge_map_.find(key_rev);
        if (it != edge_map_.end()) {
            const auto [other_tri, other_slot] = it->second;
            tris_[static_cast<std::size_t>(tri)].adj[slot] = other_tri;
            tris_[static_cast<std::size_t>(other_tri)].adj[other_slot] = tri;
            edge_map_.erase(it);
        } else {
            edge_map_.emplace(key_fwd, std::make_pair(tri, slot));
        }
    }

    struct BoundaryEdge {
        int a, b, nb;
    };

    std::vector<double> xs_, ys_;
    std::vector<Tri> tris_;
    std::vector<int> cavity_, stack_;
    std::vector<BoundaryEdge> boundary_;
    std::unordered_map<std::uint64_t, std::pair<int, int>> edge_map_;
    int super_ = 0;
    int last_ = 0;
};

} // namespace

AlphaShapeResult alpha_shape_area(const std::vector<Vec2> &points, double alpha) {
    if (points.size() < 3) {
        throw ArgumentError("alpha-shape area needs at least 3 points");
    }
    if (!(alpha > 0.0)) {
        throw ArgumentError("alpha must be positive");
    }

    // Normalize uniformly into the unit box; dedupe exact duplicates after
    // quantized jitter so the triangulation sees distinct points.
    double min_x = std::numeric_limits<double>::infinity(), min_y = min_x;
    double max_x = -min_x, max_y = -min_x;
    for (const auto &p : points) {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_y = std::min(min_y, p.y());
        max_y = std::max(max_y, p.y());
    }
    const double extent = std::max({max_x - min_x, max_y - min_y, 1e-300});
    const double inv = 1.0 / extent;

    std::vector<Vec2> norm;
    norm.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double jx =
            (static_cast<double>(hash64(2 * i) >> 11) * 0x1.0p-53 - 0.5) * 2e-7;
        const double jy =
            (static_cast<double>(hash64(2 * i + 1) >> 11) * 0x1.0p-53 - 0.5) * 2e-7;
        norm.emplace_back((points[i].x() - min_x) * inv + jx, (points[i].y() - min_y) * inv + jy);
    }

    Delaunay dt(norm);

    const double alpha_n = alpha * inv;
    const double alpha2 = alpha_n * alpha_n;
    const auto &tris = dt.triangles();
    const int super = dt.super_vertex();

    std::vector<char> kept_flag(tris.size(), 0);
    double area = 0.0;
    int kept = 0;
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
        const Tri &t = tris[ti];
        if (!t.alive || t.v[0] >= super || t.v[1] >= super || t.v[2] >= super) {
            continue;
        }
        const double ax = dt.x(t.v[0]), ay = dt.y(t.v[0]);
        const double bx = dt.x(t.v[1]), by = dt.y(t.v[1]);
        const double cx = dt.x(t.v[2]), cy = dt.y(t.v[2]);
        const double twice_area = orient2d(ax, ay, bx, by, cx, cy);
        if (twice_area <= 0.0) {
            continue;
        }
        // Squared circumradius = (|ab| |bc| |ca| / (4 area))^2.
        const double ab2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
        const double bc2 = (cx - bx) * (cx - bx) + (cy - by) * (cy - by);
        const double ca2 = (ax - cx) * (ax - cx) + (ay - cy) * (ay - cy);
        const double r2 = ab2 * bc2 * ca2 / (4.0 * twice_area * twice_area);
        if (r2 <= alpha2) {
            area += 0.5 * twice_area;
            kept_flag[ti] = 1;
            ++kept;
        }
    }

    // Boundary statistics of the kept complex: edges whose opposite triangle
    // was filtered out (or is outside the cloud).
    double boundary_length = 0.0;
    double boundary_edge_sq = 0.0;
    for (std::size_t ti = 0; ti < tris.size(); ++ti) {
        if (!kept_flag[ti]) {
            continue;
        }
        const Tri &t = tris[ti];
        for (int e = 0; e < 3; ++e) {
            const int nb = t.adj[e];
            if (nb >= 0 && kept_flag[static_cast<std::size_t>(nb)]) {
                continue;
            }
            const int a = t.v[(e + 1) % 3];
            const int b = t.v[(e + 2) % 3];
            const double dx = dt.x(b) - dt.x(a);
            const double dy = dt.y(b) - dt.y(a);
            const double l2 = dx * dx + dy * dy;
            boundary_length += std::sqrt(l2);
            boundary_edge_sq += l2;
        }
    }

    AlphaShapeResult res;
    res.area = area * extent * extent;
    res.kept_triangles = kept;
    res.degenerate = (kept == 0);
    res.boundary_length = boundary_length * extent;
    res.boundary_edge_sq = boundary_edge_sq * extent * extent;
    return res;
}

} // namespace cubesim::hydro
