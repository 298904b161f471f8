#include <gtest/gtest.h>

#include <cmath>

#include "cubesim/control/allocation.hpp"
#include "cubesim/control/pd.hpp"
#include "cubesim/control/thruster_model.hpp"
#include "cubesim/core/errors.hpp"
#include "cubesim/core/rng.hpp"
#include "cubesim/model/mass_properties.hpp"

using namespace cubesim;
using namespace cubesim::control;

namespace {

Assembly single_cube() { return make_line_assembly(make_cube_module(), 1); }

AllocationModel default_allocation() {
    Assembly a = single_cube();
    return build_allocation(a, compose_mass_properties(a));
}

} // namespace

TEST(ThrusterModel, PolynomialEvaluation) {
    ThrusterSpec t;
    t.cmd_poly = {0.0, 10.0, 0.0, 0.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(thrust_from_command(t, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(thrust_from_command(t, 0.5), 5.0);
    t.power_poly = {0.0, 0.0, 25.0, 0.0, 0.0, 0.0};
    EXPECT_DOUBLE_EQ(thruster_power(t, 5.0), 625.0);
}

TEST(ThrusterModel, CommandRoundTrip) {
    ThrusterSpec t;
    t.cmd_poly = {0.0, 8.0, 0.0, 1.5, 0.0, 0.5}; // monotone on [-1, 1]
    t.validate();
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        const double u = rng.uniform(-1.0, 1.0);
        const double f = thrust_from_command(t, u);
        EXPECT_NEAR(command_from_thrust(t, f), u, 1e-6);
    }
}

TEST(ThrusterModel, RejectsOutOfRange) {
    ThrusterSpec t;
    EXPECT_THROW(thrust_from_command(t, 1.5), ArgumentError);
    EXPECT_THROW(command_from_thrust(t, 11.0), ArgumentError);
}

TEST(BuildAllocation, SingleThrusterThroughCom) {
    Assembly a = single_cube();
    a.modules[0].spec.thrusters.clear();
    ThrusterSpec t;
    t.position = Vec3::Zero(); // at module center == CoM
    t.direction = Vec3::UnitX();
    a.modules[0].spec.thrusters.push_back(t);
    const AllocationModel model = build_allocation(a, compose_mass_properties(a));
    Vec6 col = model.jacobian.col(0);
    Vec6 expected;
    expected << 1, 0, 0, 0, 0, 0;
    EXPECT_LT((col - expected).norm(), 1e-12);
    EXPECT_EQ(model.rank, 1);
    EXPECT_FALSE(model.controllable);
}

TEST(BuildAllocation, TorqueRowIsCrossProduct) {
    Assembly a = single_cube();
    a.modules[0].spec.thrusters.clear();
    ThrusterSpec t;
    t.position = Vec3(0.0, 0.1, 0.0);
    t.direction = Vec3::UnitX();
    a.modules[0].spec.thrusters.push_back(t);
    const AllocationModel model = build_allocation(a, compose_mass_properties(a));
    // p x d = (0, 0.1, 0) x (1, 0, 0) = (0, 0, -0.1)
    EXPECT_NEAR(model.jacobian(5, 0), -0.1, 1e-12);
    EXPECT_NEAR(model.jacobian(3, 0), 0.0, 1e-12);
    EXPECT_NEAR(model.jacobian(4, 0), 0.0, 1e-12);
}

TEST(BuildAllocation, DefaultLayoutHasFullRank) {
    const AllocationModel model = default_allocation();
    EXPECT_EQ(model.rank, 6);
    EXPECT_TRUE(model.controllable);
    // The pseudo-inverse acts as a right inverse on the full space.
    const Mat6 jjp = model.jacobian * model.pseudo_inverse;
    EXPECT_LT((jjp - Mat6::Identity()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Allocate, ZeroWrenchZeroForces) {
    const AllocationModel model = default_allocation();
    const AllocationResult res = allocate(model, Vec6::Zero());
    EXPECT_LT(res.forces.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_FALSE(res.clipped);
}

TEST(Allocate, PureHeaveSharesLoadEqually) {
    const AllocationModel model = default_allocation();
    Vec6 tau = Vec6::Zero();
    tau(2) = 8.0; // +z force
    const AllocationResult res = allocate(model, tau);
    EXPECT_FALSE(res.clipped);
    EXPECT_LT(res.residual, 1e-9);
    // Four inclined thrusters (indices 4..7) share equally; the horizontal
    // group does not participate.
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(res.forces(i), 0.0, 1e-9) << i;
    }
    const double share = res.forces(4);
    EXPECT_GT(share, 0.1);
    for (int i = 5; i < 8; ++i) {
        EXPECT_NEAR(res.forces(i), share, 1e-9) << i;
    }
}

TEST(Allocate, MinimumNormAmongExactSolutions) {
    const AllocationModel model = default_allocation();
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Vec6 tau;
        for (int i = 0; i < 3; ++i) {
            tau(i) = rng.uniform(-5.0, 5.0);
            tau(i + 3) = rng.uniform(-0.5, 0.5);
        }
        const AllocationResult res = allocate(model, tau);
        ASSERT_LT(res.residual, 1e-9);
        // Perturb along the null space: norm must not decrease.
        Eigen::FullPivLU<MatX> lu(model.jacobian);
        const MatX null_space = lu.kernel();
        for (int k = 0; k < null_space.cols(); ++k) {
            for (double eps : {1e-3, -1e-3}) {
                const VecX alt = res.unclipped + eps * null_space.col(k);
                EXPECT_GE(alt.norm() + 1e-12, res.unclipped.norm());
            }
        }
    }
}

TEST(Allocate, SaturationReportsResidual) {
    const AllocationModel model = default_allocation();
    Vec6 tau = Vec6::Zero();
    tau(2) = 500.0; // far beyond 8 thrusters x 10 N
    const AllocationResult res = allocate(model, tau);
    EXPECT_TRUE(res.clipped);
    EXPECT_GT(res.residual, 1.0);
}

TEST(PdWrench, ZeroErrorZeroOutput) {
    GainSet gains;
    gains.kp = Vec6::Constant(10.0);
    gains.kd = Vec6::Constant(5.0);
    sim::PlantModel plant;
    plant.mass.diagonal() << 9, 9, 9, 0.07, 0.07, 0.07;
    plant.drag_enabled = false;
    const sim::BodyState state;
    const Reference ref;
    EXPECT_LT(pd_wrench(state, ref, gains, plant).norm(), 1e-12);
}

TEST(PdWrench, ProportionalTermOnly) {
    GainSet gains;
    gains.kp = Vec6::Constant(10.0);
    sim::PlantModel plant;
    plant.mass.diagonal() << 9, 9, 9, 0.07, 0.07, 0.07;
    plant.drag_enabled = false;
    const sim::BodyState state;
    Reference ref;
    ref.position = Vec3(1.0, 0.0, 0.0);
    const Vec6 tau = pd_wrench(state, ref, gains, plant);
    Vec6 expected = Vec6::Zero();
    expected(0) = 10.0;
    EXPECT_LT((tau - expected).norm(), 1e-12);
}

TEST(PdWrench, CruiseCompensatesDragAndCoriolis) {
    Assembly a = single_cube();
    hydro::DragLutParams params;
    params.n_s = 64;
    params.samples_per_module = 8000;
    params.seed = 12;
    sim::PlantModel plant;
    plant.mass.diagonal() << 9.261, 9.261, 9.261, 0.068, 0.068, 0.068;
    plant.drag = hydro::build_drag_lut(a, params);

    sim::BodyState state;
    state.twist << 0.4, 0.1, -0.2, 0.05, 0.2, -0.1;
    Reference ref;
    ref.position = state.position;
    ref.orientation = state.orientation;
    ref.velocity = state.orientation * state.linear();
    ref.angular_velocity = state.orientation * state.angular();

    GainSet gains;
    gains.kp = Vec6::Constant(25.0);
    gains.kd = Vec6::Constant(10.0);
    const Vec6 tau = pd_wrench(state, ref, gains, plant);

    const Vec6 nu = state.twist;
    const Vec6 expected = coriolis_from_mass_matrix(plant.mass, nu) * nu -
                          plant.drag.wrench(plant.relative_twist(state));
    EXPECT_LT((tau - expected).norm(), 1e-9);
}

TEST(PdWrench, FrameConsistency) {
    GainSet gains;
    gains.kp << 10, 12, 14, 2, 3, 4;
    gains.kd << 5, 5, 5, 1, 1, 1;
    sim::PlantModel plant;
    plant.mass.diagonal() << 9, 9, 9, 0.07, 0.07, 0.07;
    plant.drag_enabled = false;

    sim::BodyState state;
    state.position = Vec3(0.3, -0.2, 0.6);
    state.orientation = Quat(Eigen::AngleAxisd(0.4, Vec3(0, 0, 1)));
    state.twist << 0.1, 0.0, -0.2, 0.0, 0.1, 0.0;
    Reference ref;
    ref.position = Vec3(0.5, 0.1, 0.4);
    ref.orientation = Quat(Eigen::AngleAxisd(0.7, Vec3(0, 1, 0)));
    ref.velocity = Vec3(0.05, 0.02, 0.0);

    const Vec6 tau = pd_wrench(state, ref, gains, plant);

    const Quat rot(Eigen::AngleAxisd(1.3, Vec3(2, -1, 1).normalized()));
    sim::BodyState state_r = state;
    state_r.position = rot * state.position;
    state_r.orientation = rot * state.orientation;
    Reference ref_r = ref;
    ref_r.position = rot * ref.position;
    ref_r.orientation = rot * ref.orientation;
    ref_r.velocity = rot * ref.velocity;
    const Vec6 tau_r = pd_wrench(state_r, ref_r, gains, plant);

    // Body-frame wrench is invariant when the whole scene rotates.
    EXPECT_LT((tau - tau_r).norm(), 1e-9);
}
