#include "cubesim/capability/mie.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "cubesim/capability/hull3.hpp"
#include "cubesim/core/errors.hpp"

namespace cubesim::capability {

namespace {

// Symmetric 3x3 parameterization: (b00, b01, b02, b11, b12, b22).
Mat3 unpack_sym(const VecX &theta) {
    Mat3 b;
    b << theta(0), theta(1), theta(2), //
        theta(1), theta(3), theta(4),  //
        theta(2), theta(4), theta(5);
    return b;
}

struct Barrier {
    const std::vector<HullFace> &faces;
    double t;

    // Returns +inf outside the domain.
    double value(const VecX &theta) const {
        const Mat3 b = unpack_sym(theta);
        const Vec3 c = theta.segment<3>(6);
        Eigen::LLT<Mat3> llt(b);
        if (llt.info() != Eigen::Success) {
            return std::numeric_limits<double>::infinity();
        }
        const double logdet = 2.0 * std::log(llt.matrixL().determinant());
        double v = -t * logdet;
        for (const auto &f : faces) {
            const double g = f.offset - f.normal.dot(c) - (b * f.normal).norm();
            if (g <= 0.0) {
                return std::numeric_limits<double>::infinity();
            }
            v -= std::log(g);
        }
        return v;
    }

    VecX gradient(const VecX &theta) const {
        const Mat3 b = unpack_sym(theta);
        const Vec3 c = theta.segment<3>(6);
        const Mat3 binv = b.inverse();
        VecX grad = VecX::Zero(9);

        auto add_sym = [&grad](const Mat3 &m, double w) {
            grad(0) += w * m(0, 0);
            grad(1) += w * (m(0, 1) + m(1, 0));
            grad(2) += w * (m(0, 2) + m(2, 0));
            grad(3) += w * m(1, 1);
            grad(4) += w * (m(1, 2) + m(2, 1));
            grad(5) += w * m(2, 2);
        };

        add_sym(binv, -t); // d(-t log det B)
        for (const auto &f : faces) {
            const Vec3 h = b * f.normal;
            const double hn = h.norm();
            const double g = f.offset - f.normal.dot(c) - hn;
            const double w = 1.0 / g; // d(-log g) = -(1/g) dg; dg = -(d|h| + a.dc)
            add_sym(h * f.normal.transpose() / std::max(hn, 1e-300), w);
            grad.segment<3>(6) += w * f.normal;
        }
        return grad;
    }
};

} // namespace

MieResult mie_volume_points(const std::vector<Vec3> &points) {
    MieResult res;

    double scale = 0.0;
    for (const auto &p : points) {
        scale = std::max(scale, p.norm());
    }
    if (scale <= 0.0) {
        res.degenerate = true;
        return res;
    }

    std::vector<Vec3> scaled;
    scaled.reserve(points.size());
    Vec3 centroid = Vec3::Zero();
    for (const auto &p : points) {
        scaled.push_back(p / scale);
        centroid += scaled.back();
    }
    centroid /= static_cast<double>(scaled.size());

    std::vector<HullFace> faces;
    try {
        faces = convex_hull_3d(scaled);
    } catch (const NumericalError &) {
        res.degenerate = true;
        return res;
    }

    // Strictly interior start with a small ball.
    double r0 = std::numeric_limits<double>::infinity();
    for (const auto &f : faces) {
        r0 = std::min(r0, f.offset - f.normal.dot(centroid));
    }
    if (!(r0 > 1e-12)) {
        res.degenerate = true;
        return res;
    }

    VecX theta = VecX::Zero(9);
    theta(0) = theta(3) = theta(5) = 0.5 * r0;
    theta.segment<3>(6) = centroid;

    const int m = static_cast<int>(faces.size());
    double t = 1.0;
    Barrier barrier{faces, t};
    const double grad_h = 1e-7;

    while (t < static_cast<double>(m) / 1e-9) {
        barrier.t = t;
        for (int iter = 0; iter < 60; ++iter) {
            const VecX grad = barrier.gradient(theta);
            // Hessian by central differences of the analytic gradient.
            MatX hess(9, 9);
            for (int j = 0; j < 9; ++j) {
                VecX tp = theta, tm = theta;
                tp(j) += grad_h;
                tm(j) -= grad_h;
                hess.col(j) = (barrier.gradient(tp) - barrier.gradient(tm)) / (2.0 * grad_h);
            }
            hess = 0.5 * (hess + hess.transpose());

            VecX step;
            Eigen::LDLT<MatX> ldlt(hess);
            if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
                step = -ldlt.solve(grad);
            } else {
                step = -grad; // fall back to steepest descent
            }

            // Backtracking line search staying inside the domain.
            const double f0 = barrier.value(theta);
            double alpha = 1.0;
            VecX next = theta + alpha * step;
            while (alpha > 1e-14 &&
                   !(barrier.value(next) < f0 - 1e-12 * alpha * std::abs(grad.dot(step)))) {
                alpha *= 0.5;
                next = theta + alpha * step;
            }
            if (alpha <= 1e-14) {
                break;
            }
            theta = next;
            if (grad.norm() * alpha < 1e-10) {
                break;
            }
        }
        t *= 8.0;
    }

    const Mat3 b = unpack_sym(theta);
    res.shape = b * scale;
    res.center = theta.segment<3>(6) * scale;
    res.volume = 4.0 * M_PI / 3.0 * std::abs(res.shape.determinant());
    return res;
}

MieResult mie_volume(const WrenchSpace &space) {
    std::vector<Vec3> pts;
    pts.reserve(space.extents.size());
    double max_extent = 0.0;
    for (int i = 0; i < space.directions.size(); ++i) {
        const double lambda = space.extents[static_cast<std::size_t>(i)];
        max_extent = std::max(max_extent, lambda);
        pts.push_back(lambda * space.directions[i]);
    }
    if (max_extent <= 0.0) {
        MieResult res;
        res.degenerate = true;
        return res;
    }
    return mie_volume_points(pts);
}

} // namespace cubesim::capability
