#include <gtest/gtest.h>

#include <cmath>

#include "cubesim/capability/mie.hpp"
#include "cubesim/capability/simplex.hpp"
#include "cubesim/capability/spaces.hpp"
#include "cubesim/control/allocation.hpp"
#include "cubesim/core/rng.hpp"
#include "cubesim/model/mass_properties.hpp"
#include "support/oracles.hpp"

using namespace cubesim;
using namespace cubesim::capability;

namespace {

control::AllocationModel model_from_thrusters(const std::vector<ThrusterSpec> &thrusters) {
    Assembly a = make_line_assembly(make_cube_module(), 1);
    a.modules[0].spec.thrusters = thrusters;
    return control::build_allocation(a, compose_mass_properties(a));
}

ThrusterSpec simple_thruster(const Vec3 &pos, const Vec3 &dir, double f_min, double f_max) {
    ThrusterSpec t;
    // Positions here are in the module frame centered on the cube.
    t.position = pos;
    t.direction = dir.normalized();
    t.f_min = f_min;
    t.f_max = f_max;
    return t;
}

control::AllocationModel default_cube_model() {
    Assembly a = make_line_assembly(make_cube_module(), 1);
    return control::build_allocation(a, compose_mass_properties(a));
}

std::vector<ThrusterSpec> random_layout(Rng &rng, int count) {
    std::vector<ThrusterSpec> out;
    for (int i = 0; i < count; ++i) {
        Vec3 pos(rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1));
        Vec3 dir(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        while (dir.norm() < 0.2) {
            dir = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
        const double f = rng.uniform(4.0, 12.0);
        out.push_back(simple_thruster(pos, dir, -f, f));
    }
    return out;
}

} // namespace

TEST(Simplex, HandSolvableBoxLp) {
    // max x0 + x1 s.t. x0 + x1 <= handled via equality with slack:
    // x0 + x1 + s = 4, 0 <= x0 <= 3, 0 <= x1 <= 2, 0 <= s.
    MatX a(1, 3);
    a << 1, 1, 1;
    VecX b(1), c(3), lo(3), hi(3);
    b << 4;
    c << 1, 1, 0;
    lo << 0, 0, 0;
    hi << 3, 2, std::numeric_limits<double>::infinity();
    const LpResult res = solve_box_lp_max(c, a, b, lo, hi);
    ASSERT_TRUE(res.feasible);
    EXPECT_NEAR(res.objective, 4.0, 1e-9);
}

TEST(Simplex, DetectsInfeasible) {
    MatX a(1, 1);
    a << 1;
    VecX b(1), c(1), lo(1), hi(1);
    b << 5;
    c << 1;
    lo << 0;
    hi << 1;
    const LpResult res = solve_box_lp_max(c, a, b, lo, hi);
    EXPECT_FALSE(res.feasible);
}

TEST(Simplex, DetectsUnbounded) {
    MatX a(1, 2);
    a << 1, -1;
    VecX b(1), c(2), lo(2), hi(2);
    b << 0;
    c << 1, 0;
    lo << 0, 0;
    hi << std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity();
    const LpResult res = solve_box_lp_max(c, a, b, lo, hi);
    ASSERT_TRUE(res.feasible);
    EXPECT_FALSE(res.bounded);
}

TEST(WrenchExtent, SingleThrusterAxis) {
    auto model = model_from_thrusters({simple_thruster(Vec3::Zero(), Vec3::UnitX(), 0.0, 10.0)});
    EXPECT_NEAR(wrench_extent(model, Vec3::UnitX(), WrenchMode::force), 10.0, 1e-9);
    EXPECT_NEAR(wrench_extent(model, -Vec3::UnitX(), WrenchMode::force), 0.0, 1e-9);
    EXPECT_NEAR(wrench_extent(model, Vec3::UnitY(), WrenchMode::force), 0.0, 1e-9);
}

TEST(WrenchExtent, OpposedPairYawTorque) {
    // Two opposed +/- x thrusters at y = +/-0.1: pure z torque of 2 N m at
    // 10 N each.
    auto model = model_from_thrusters({
        simple_thruster(Vec3(0.0, 0.1, 0.0), Vec3::UnitX(), -10.0, 10.0),
        simple_thruster(Vec3(0.0, -0.1, 0.0), Vec3::UnitX(), -10.0, 10.0),
    });
    EXPECT_NEAR(wrench_extent(model, Vec3::UnitZ(), WrenchMode::torque), 2.0, 1e-9);
    EXPECT_NEAR(wrench_extent(model, -Vec3::UnitZ(), WrenchMode::torque), 2.0, 1e-9);
}

TEST(WrenchExtent, MatchesZonotopeOracle) {
    // Random small layouts: the LP extent must equal vertex-enumeration
    // ray-shooting through the box image.
    Rng rng(2024);
    for (int layout = 0; layout < 3; ++layout) {
        auto model = model_from_thrusters(random_layout(rng, 5 + layout));
        VecX f_min(model.thruster_count()), f_max(model.thruster_count());
        for (int i = 0; i < model.thruster_count(); ++i) {
            f_min(i) = model.thrusters[static_cast<std::size_t>(i)].f_min;
            f_max(i) = model.thrusters[static_cast<std::size_t>(i)].f_max;
        }
        const hydro::DirectionSet dirs = hydro::fibonacci_directions(40);
        for (int d = 0; d < dirs.size(); ++d) {
            for (const WrenchMode mode : {WrenchMode::force, WrenchMode::torque}) {
                const double lp = wrench_extent(model, dirs[d], mode);
                const double oracle = oracles::zonotope_ray_extent(
                    model.jacobian, f_min, f_max, embed_direction(dirs[d], mode));
                const double tol = 1e-6 * std::max(1.0, std::abs(oracle));
                EXPECT_NEAR(lp, oracle, tol) << "layout " << layout << " dir " << d;
            }
        }
    }
}

TEST(WrenchSpace, ScalesWithThrustLimits) {
    auto base_model = default_cube_model();
    const WrenchSpace base = reachable_wrench_space(base_model, WrenchMode::force, 30);

    Assembly a = make_line_assembly(make_cube_module(), 1);
    for (auto &t : a.modules[0].spec.thrusters) {
        t.f_min *= 2.0;
        t.f_max *= 2.0;
    }
    auto doubled_model = control::build_allocation(a, compose_mass_properties(a));
    const WrenchSpace doubled = reachable_wrench_space(doubled_model, WrenchMode::force, 30);
    for (std::size_t i = 0; i < base.extents.size(); ++i) {
        EXPECT_NEAR(doubled.extents[i], 2.0 * base.extents[i], 1e-8);
    }
}

TEST(WrenchSpace, AddingThrusterNeverShrinks) {
    Rng rng(7);
    auto layout = random_layout(rng, 6);
    auto model6 = model_from_thrusters(layout);
    layout.push_back(simple_thruster(Vec3(0.05, 0.0, 0.0), Vec3(1, 1, 0), -8.0, 8.0));
    auto model7 = model_from_thrusters(layout);
    const WrenchSpace w6 = reachable_wrench_space(model6, WrenchMode::force, 40);
    const WrenchSpace w7 = reachable_wrench_space(model7, WrenchMode::force, 40);
    for (std::size_t i = 0; i < w6.extents.size(); ++i) {
        EXPECT_GE(w7.extents[i] + 1e-9, w6.extents[i]);
    }
}

TEST(WrenchSpace, DefaultCubeSymmetryGroup) {
    // Rotations of the 24-element cube group that permute the thruster
    // lines (up to sign, since limits are symmetric) must leave the extent
    // field invariant.
    auto model = default_cube_model();
    const int nt = model.thruster_count();

    std::vector<int> preserving;
    for (int k = 0; k < 24; ++k) {
        const Mat3 rot = cube_rotation(k);
        bool preserved = true;
        for (int i = 0; i < nt && preserved; ++i) {
            const Vec3 p = rot * model.thrusters[static_cast<std::size_t>(i)].position;
            const Vec3 d = rot * model.thrusters[static_cast<std::size_t>(i)].direction;
            bool found = false;
            for (int j = 0; j < nt && !found; ++j) {
                const auto &t = model.thrusters[static_cast<std::size_t>(j)];
                if ((t.position - p).norm() < 1e-9 &&
                    ((t.direction - d).norm() < 1e-9 || (t.direction + d).norm() < 1e-9)) {
                    found = true;
                }
            }
            preserved = found;
        }
        if (preserved) {
            preserving.push_back(k);
        }
    }
    ASSERT_GE(preserving.size(), 4u); // at least the C4 subgroup about z

    const hydro::DirectionSet dirs = hydro::fibonacci_directions(26);
    for (int k : preserving) {
        const Mat3 rot = cube_rotation(k);
        for (int i = 0; i < dirs.size(); ++i) {
            const double lhs = wrench_extent(model, dirs[i], WrenchMode::force);
            const double rhs = wrench_extent(model, rot * dirs[i], WrenchMode::force);
            EXPECT_NEAR(lhs, rhs, 0.01 * std::max(1.0, lhs)) << "rot " << k << " dir " << i;
        }
    }
}

TEST(PowerSpace, ZeroOrderPolynomialGivesConstantPower) {
    Assembly a = make_line_assembly(make_cube_module(), 1);
    for (auto &t : a.modules[0].spec.thrusters) {
        t.power_poly = {3.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    }
    auto model = control::build_allocation(a, compose_mass_properties(a));
    const PowerSpace space = power_space(model, WrenchMode::force, 20);
    for (std::size_t i = 0; i < space.power.size(); ++i) {
        ASSERT_TRUE(space.attainable[i]);
        EXPECT_NEAR(space.power[i], 3.0 * 8, 1e-9);
    }
}

TEST(PowerSpace, SingleThrusterAlongAxis) {
    auto model = model_from_thrusters({simple_thruster(Vec3::Zero(), Vec3::UnitX(), -10, 10)});
    const PowerSpace space = power_space(model, WrenchMode::force, 16);
    for (int i = 0; i < space.directions.size(); ++i) {
        const Vec3 &d = space.directions[i];
        if (std::abs(std::abs(d.x()) - 1.0) < 1e-9) {
            EXPECT_TRUE(space.attainable[static_cast<std::size_t>(i)]);
            // P(1 N) with the default quadratic power polynomial.
            EXPECT_NEAR(space.power[static_cast<std::size_t>(i)], 25.0, 1e-9);
        } else {
            EXPECT_FALSE(space.attainable[static_cast<std::size_t>(i)]);
        }
    }
}

TEST(PowerSpace, SurgePowerMatchesSymmetricShare) {
    // Unit surge on the default cube: only the four horizontal thrusters
    // carry load, each at 1/(4 cos45) = sqrt(2)/4 N; quadratic power 25 f^2.
    auto model = default_cube_model();
    const PowerSpace space = power_space(model, WrenchMode::force, 200);
    // Find the direction closest to +x.
    int best = 0;
    double best_dot = -1.0;
    for (int i = 0; i < space.directions.size(); ++i) {
        if (space.directions[i].x() > best_dot) {
            best_dot = space.directions[i].x();
            best = i;
        }
    }
    const VecX f = model.pseudo_inverse * embed_direction(space.directions[best],
                                                          WrenchMode::force);
    double expected = 0.0;
    for (int j = 0; j < model.thruster_count(); ++j) {
        expected += 25.0 * f(j) * f(j);
    }
    EXPECT_NEAR(space.power[static_cast<std::size_t>(best)], expected, 1e-9);
    // The analytic symmetric share for exact +x: per-thruster sqrt(2)/4.
    const VecX fx = model.pseudo_inverse * embed_direction(Vec3::UnitX(), WrenchMode::force);
    for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(std::abs(fx(j)), std::sqrt(2.0) / 4.0, 1e-9);
    }
    for (int j = 4; j < 8; ++j) {
        EXPECT_NEAR(fx(j), 0.0, 1e-9);
    }
}

TEST(ThrustVariance, SymmetricLayoutUnderSymmetricDirections) {
    // A fully symmetric 6-thruster layout through the CoM: every thruster
    // sees the same distribution of |f| over a symmetric direction set.
    std::vector<ThrusterSpec> layout;
    for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
            Vec3 d = Vec3::Zero();
            d(axis) = sign;
            layout.push_back(simple_thruster(Vec3::Zero(), d, -10, 10));
        }
    }
    auto model = model_from_thrusters(layout);
    const ThrustVariance tv = thrust_variance(model, 512, VarianceWeighting::power,
                                              WrenchMode::force);
    EXPECT_LT(tv.variance, 1e-4 * tv.mean_abs_thrust.mean() * tv.mean_abs_thrust.mean() + 1e-12);
}

TEST(ThrustVariance, UnevenLeverArmsGiveSpread) {
    auto model = model_from_thrusters({
        simple_thruster(Vec3(0, 0.05, 0), Vec3::UnitX(), -10, 10),
        simple_thruster(Vec3(0, -0.1, 0), Vec3::UnitX(), -10, 10),
    });
    const ThrustVariance tv = thrust_variance(model, 64, VarianceWeighting::power,
                                              WrenchMode::force);
    EXPECT_GT(tv.variance, 1e-6);
    EXPECT_EQ(tv.samples.cols(), 2);
    EXPECT_EQ(tv.samples.rows(), 64);
}

TEST(Mie, UnitBallVolume) {
    WrenchSpace space;
    space.directions = hydro::fibonacci_directions(500);
    space.extents.assign(500, 1.0);
    const MieResult res = mie_volume(space);
    ASSERT_FALSE(res.degenerate);
    EXPECT_NEAR(res.volume, 4.0 * M_PI / 3.0, 0.05 * 4.0 * M_PI / 3.0);
}

TEST(Mie, BoxSupportGivesAnalyticEllipsoid) {
    // Radial support of an axis-aligned box with half-extents (a, b, c):
    // the inscribed ellipsoid has volume 4 pi a b c / 3.
    const Vec3 half(2.0, 1.0, 0.5);
    WrenchSpace space;
    space.directions = hydro::fibonacci_directions(600);
    space.extents.resize(600);
    for (int i = 0; i < 600; ++i) {
        const Vec3 &d = space.directions[i];
        double t = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 3; ++k) {
            if (std::abs(d(k)) > 1e-12) {
                t = std::min(t, half(k) / std::abs(d(k)));
            }
        }
        space.extents[static_cast<std::size_t>(i)] = t;
    }
    const MieResult res = mie_volume(space);
    ASSERT_FALSE(res.degenerate);
    const double expected = 4.0 * M_PI / 3.0 * half.prod();
    EXPECT_NEAR(res.volume, expected, 0.05 * expected);
}

TEST(Mie, AllZeroExtentsDegenerate) {
    WrenchSpace space;
    space.directions = hydro::fibonacci_directions(32);
    space.extents.assign(32, 0.0);
    const MieResult res = mie_volume(space);
    EXPECT_TRUE(res.degenerate);
    EXPECT_EQ(res.volume, 0.0);
}

TEST(Mie, RotationInvariantVolume) {
    // Sampling the same reachable set along a rotated direction set must
    // give the same inscribed-ellipsoid volume up to hull resolution.
    auto model = default_cube_model();
    const WrenchSpace space = reachable_wrench_space(model, WrenchMode::force, 400);
    const MieResult base = mie_volume(space);

    const Mat3 rot = Quat(Eigen::AngleAxisd(0.83, Vec3(1, 2, 3).normalized())).toRotationMatrix();
    WrenchSpace turned;
    turned.mode = WrenchMode::force;
    turned.directions = space.directions;
    for (auto &d : turned.directions.directions) {
        d = (rot * d).eval();
    }
    turned.extents.resize(static_cast<std::size_t>(turned.directions.size()));
    for (int i = 0; i < turned.directions.size(); ++i) {
        turned.extents[static_cast<std::size_t>(i)] =
            wrench_extent(model, turned.directions[i], WrenchMode::force);
    }
    const MieResult rotated = mie_volume(turned);
    EXPECT_NEAR(rotated.volume, base.volume, 0.02 * base.volume);
}
