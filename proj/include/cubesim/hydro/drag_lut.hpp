#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cubesim/core/types.hpp"
#include "cubesim/hydro/directions.hpp"
#include "cubesim/model/assembly.hpp"

namespace cubesim::hydro {

/// Direction-indexed drag table: per-direction frontal areas of the assembly
/// silhouette, with the fluid constants needed to turn them into wrenches.
struct DragLut {
    DirectionSet directions;
    std::vector<double> frontal_area; // [m^2], per direction
    double rho = 1000.0;              // [kg/m^3]
    double c_d = 1.05;
    std::uint64_t seed = 0;
    int samples_per_module = 0;
    double alpha = 0.0; // [m]; alpha-shape parameter actually used

    /// Area along an arbitrary unit direction: inverse-distance weighting
    /// over the 3 nearest stored directions.
    double area(const Vec3 &dir) const;

    /// Drag wrench for a body-frame relative twist (v_r, w):
    ///   force  = -1/2 rho C_d A(v_hat) |v| v
    ///   torque = -1/2 rho C_d A(w_hat) |w|^(5/3) w_hat
    /// Zero twist maps to zero wrench; the output never has positive inner
    /// product with the twist.
    Vec6 wrench(const Vec6 &relative_twist) const;
};

/// Uniform interior samples of every module cube, mapped into the assembly
/// frame. Deterministic for a fixed seed.
std::vector<Vec3> sample_body_points(const Assembly &assembly, int count_per_module,
                                     std::uint64_t seed);

/// Silhouette area of a point cloud as seen along direction d: rotate d onto
/// +z, drop z, take the alpha-shape area of the planar cloud.
/// If degenerate (collinear cloud), returns 0 and sets *degenerate.
double projected_area(const std::vector<Vec3> &points, const Vec3 &d, double alpha,
                      bool *degenerate = nullptr);

/// Production estimator used by the LUT builder: alpha chosen per projection
/// from the expected sample spacing sqrt(bbox_area / count), plus a
/// first-order boundary-support bias correction (the interior-sampled cloud
/// undershoots the true silhouette by about half the local boundary
/// spacing).
double projected_area_auto(const std::vector<Vec3> &points, const Vec3 &d,
                           bool *degenerate = nullptr);

struct DragLutParams {
    int n_s = 200;
    double rho = 1000.0;
    double c_d = 1.05;
    int samples_per_module = 20000;
    double alpha = 0.0; // <= 0: auto per projection (scaled sample spacing)
    std::uint64_t seed = 1;
    int threads = 0; // 0: hardware concurrency
};

/// Algorithm: sample interior points once, then for each Fibonacci direction
/// project and measure the alpha-shape frontal area. Deterministic given
/// (seed, n_s, samples); projections are computed in parallel and stored by
/// direction index.
DragLut build_drag_lut(const Assembly &assembly, const DragLutParams &params);

/// Versioned CSV round-trip (header carries n_s, rho, c_d, seed, samples,
/// alpha; rows carry direction and area at full precision).
void save_drag_lut_csv(const DragLut &lut, std::ostream &os);
DragLut load_drag_lut_csv(std::istream &is);

} // namespace cubesim::hydro
