#include "cubesim/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace cubesim::harness {

namespace {

void svg_header(std::ostream &os, int w, int h) {
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
       << "' viewBox='0 0 " << w << ' ' << h << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n";
}

void polyline(std::ostream &os, const std::vector<Vec2> &pts, const char *color,
              bool closed) {
    os << (closed ? "<polygon" : "<polyline") << " fill='none' stroke='" << color
       << "' stroke-width='1.5' points='";
    for (const auto &p : pts) {
        os << p.x() << ',' << p.y() << ' ';
    }
    os << "'/>\n";
}

} // namespace

void svg_radial_slices(const hydro::DirectionSet &directions,
                       const std::vector<double> &radii, const std::string &title,
                       std::ostream &os) {
    const int panel = 240, pad = 20;
    svg_header(os, 3 * panel, panel + 40);
    os << "<text x='10' y='16' font-family='monospace' font-size='13'>" << title
       << "</text>\n";

    double r_max = 1e-12;
    for (double r : radii) {
        r_max = std::max(r_max, r);
    }
    const char *names[3] = {"xy", "xz", "yz"};
    const int axes[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int s = 0; s < 3; ++s) {
        const double cx = panel * s + panel / 2.0;
        const double cy = panel / 2.0 + 30.0;
        const double scale = (panel / 2.0 - pad) / r_max;

        // Collect directions within ~15 degrees of the slice plane, sorted
        // by in-plane angle.
        std::vector<std::pair<double, Vec2>> pts;
        for (int i = 0; i < directions.size(); ++i) {
            const Vec3 &d = directions[i];
            const int drop = 3 - axes[s][0] - axes[s][1];
            if (std::abs(d(drop)) > 0.26) {
                continue;
            }
            const double a = d(axes[s][0]);
            const double b = d(axes[s][1]);
            const double r = radii[static_cast<std::size_t>(i)];
            pts.emplace_back(std::atan2(b, a), Vec2(cx + scale * r * a, cy - scale * r * b));
        }
        std::sort(pts.begin(), pts.end(),
                  [](const auto &u, const auto &v) { return u.first < v.first; });
        std::vector<Vec2> poly;
        poly.reserve(pts.size());
        for (const auto &p : pts) {
            poly.push_back(p.second);
        }
        if (poly.size() > 2) {
            polyline(os, poly, "steelblue", true);
        }
        os << "<text x='" << panel * s + 8 << "' y='" << panel + 34
           << "' font-family='monospace' font-size='11'>" << names[s]
           << " slice, max=" << r_max << "</text>\n";
    }
    os << "</svg>\n";
}

void svg_trajectory(const sim::Trace &trace, const ReferenceSeries &reference,
                    std::ostream &os) {
    const int w = 640, h = 320, pad = 30;
    svg_header(os, w, h);

    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    double min_z = 1e300, max_z = -1e300;
    for (const auto &s : trace) {
        min_x = std::min(min_x, s.state.position.x());
        max_x = std::max(max_x, s.state.position.x());
        min_y = std::min(min_y, s.state.position.y());
        max_y = std::max(max_y, s.state.position.y());
        min_z = std::min(min_z, s.state.position.z());
        max_z = std::max(max_z, s.state.position.z());
    }
    for (const auto &p : reference.position) {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_y = std::min(min_y, p.y());
        max_y = std::max(max_y, p.y());
        min_z = std::min(min_z, p.z());
        max_z = std::max(max_z, p.z());
    }
    const double span_xy = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double half = w / 2.0 - 2 * pad;
    auto map_xy = [&](const Vec3 &p) {
        return Vec2(pad + (p.x() - min_x) / span_xy * half,
                    h - pad - (p.y() - min_y) / span_xy * (h - 2 * pad));
    };
    const double t0 = trace.front().t, t1 = std::max(trace.back().t, t0 + 1e-9);
    const double span_z = std::max(max_z - min_z, 1e-9);
    auto map_tz = [&](double t, double z) {
        return Vec2(w / 2.0 + pad + (t - t0) / (t1 - t0) * half,
                    h - pad - (z - min_z) / span_z * (h - 2 * pad));
    };

    std::vector<Vec2> ref_xy, got_xy, ref_tz, got_tz;
    for (std::size_t i = 0; i < reference.t.size(); ++i) {
        ref_xy.push_back(map_xy(reference.position[i]));
        ref_tz.push_back(map_tz(reference.t[i], reference.position[i].z()));
    }
    for (const auto &s : trace) {
        got_xy.push_back(map_xy(s.state.position));
        got_tz.push_back(map_tz(s.t, s.state.position.z()));
    }
    polyline(os, ref_xy, "gray", false);
    polyline(os, got_xy, "crimson", false);
    polyline(os, ref_tz, "gray", false);
    polyline(os, got_tz, "steelblue", false);
    os << "<text x='" << pad << "' y='18' font-family='monospace' font-size='12'>"
       << "top view (x, y)</text>\n"
       << "<text x='" << w / 2 + pad << "' y='18' font-family='monospace' font-size='12'>"
       << "depth (t, z); gray = reference</text>\n";
    os << "</svg>\n";
}

void svg_violin(const MatX &samples, std::ostream &os) {
    const int nt = static_cast<int>(samples.cols());
    const int w = std::max(80 * nt + 40, 200), h = 300, pad = 30;
    svg_header(os, w, h);

    const double max_v = std::max(samples.maxCoeff(), 1e-12);
    const int bins = 24;
    for (int tI = 0; tI < nt; ++tI) {
        std::vector<double> hist(bins, 0.0);
        for (int i = 0; i < samples.rows(); ++i) {
            const int b = std::min(bins - 1, static_cast<int>(samples(i, tI) / max_v * bins));
            hist[static_cast<std::size_t>(b)] += 1.0;
        }
        const double peak = *std::max_element(hist.begin(), hist.end());
        const double cx = 40.0 + 80.0 * tI + 20.0;
        std::vector<Vec2> left, right;
        for (int b = 0; b < bins; ++b) {
            const double y = h - pad - (b + 0.5) / bins * (h - 2 * pad);
            const double half_width = 32.0 * hist[static_cast<std::size_t>(b)] / peak;
            left.emplace_back(cx - half_width, y);
            right.emplace_back(cx + half_width, y);
        }
        std::vector<Vec2> outline = left;
        outline.insert(outline.end(), right.rbegin(), right.rend());
        polyline(os, outline, "seagreen", true);
        os << "<text x='" << cx - 6 << "' y='" << h - 8
           << "' font-family='monospace' font-size='11'>" << tI << "</text>\n";
    }
    os << "<text x='8' y='16' font-family='monospace' font-size='12'>|thrust| distribution "
          "per thruster (max="
       << max_v << " N)</text>\n";
    os << "</svg>\n";
}

} // namespace cubesim::harness
