#include "cubesim/morph/harmonics.hpp"

#include <cmath>

#include <Eigen/QR>

#include "cubesim/core/errors.hpp"

namespace cubesim::morph {

namespace {

// Associated Legendre P_l^m(x) for m >= 0 (Condon-Shortley phase included),
// by the standard stable recurrences.
double assoc_legendre(int l, int m, double x) {
    double pmm = 1.0;
    if (m > 0) {
        const double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
        double fact = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) {
        return pmm;
    }
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) {
        return pmmp1;
    }
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = ((2.0 * ll - 1.0) * x * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

double normalization(int l, int m) {
    // sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!), computed in log space.
    double log_ratio = 0.0;
    for (int k = l - m + 1; k <= l + m; ++k) {
        log_ratio -= std::log(static_cast<double>(k));
    }
    return std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) * std::exp(log_ratio));
}

} // namespace

double real_spherical_harmonic(int l, int m, const Vec3 &dir) {
    if (l < 0 || std::abs(m) > l) {
        throw ArgumentError("invalid spherical harmonic degree/order");
    }
    const Vec3 u = dir.normalized();
    const double cos_theta = u.z();
    const double phi = std::atan2(u.y(), u.x());
    const int am = std::abs(m);
    const double k = normalization(l, am);
    const double p = assoc_legendre(l, am, cos_theta);
    if (m == 0) {
        return k * p;
    }
    if (m > 0) {
        return std::sqrt(2.0) * k * p * std::cos(am * phi);
    }
    return std::sqrt(2.0) * k * p * std::sin(am * phi);
}

MatX spherical_harmonic_basis(const hydro::DirectionSet &directions, int l_max) {
    const int n = directions.size();
    const int cols = (l_max + 1) * (l_max + 1);
    MatX y(n, cols);
    for (int i = 0; i < n; ++i) {
        int col = 0;
        for (int l = 0; l <= l_max; ++l) {
            for (int m = -l; m <= l; ++m) {
                y(i, col++) = real_spherical_harmonic(l, m, directions[i]);
            }
        }
    }
    return y;
}

DirichletResult dirichlet_energy(const hydro::DirectionSet &directions,
                                 const std::vector<double> &radii, int l_max) {
    const int n = directions.size();
    const int cols = (l_max + 1) * (l_max + 1);
    if (n < cols) {
        throw ConditioningError("need at least (l_max+1)^2 directions for the harmonic fit");
    }
    if (radii.size() != static_cast<std::size_t>(n)) {
        throw ArgumentError("radii/directions size mismatch");
    }

    const MatX y = spherical_harmonic_basis(directions, l_max);
    Eigen::ColPivHouseholderQR<MatX> qr(y);
    qr.setThreshold(1e-10);
    if (qr.rank() < cols) {
        throw ConditioningError("spherical harmonic basis is rank deficient on these directions");
    }

    VecX r(n);
    for (int i = 0; i < n; ++i) {
        r(i) = radii[static_cast<std::size_t>(i)];
    }

    DirichletResult res;
    res.coefficients = qr.solve(r);
    const VecX diag = qr.matrixR().diagonal().cwiseAbs();
    res.condition = diag.maxCoeff() / diag.minCoeff();

    int col = 0;
    for (int l = 0; l <= l_max; ++l) {
        for (int m = -l; m <= l; ++m) {
            const double a = res.coefficients(col++);
            res.energy += static_cast<double>(l) * (l + 1.0) * a * a;
        }
    }
    return res;
}

} // namespace cubesim::morph
