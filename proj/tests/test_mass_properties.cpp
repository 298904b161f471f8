#include <gtest/gtest.h>

#include <cmath>

#include "cubesim/core/errors.hpp"
#include "cubesim/model/assembly.hpp"
#include "cubesim/model/mass_properties.hpp"

using namespace cubesim;

namespace {

ModuleSpec plain_module(double mass = 9.0, double edge = 0.21) {
    ModuleSpec m;
    m.edge_length = edge;
    m.mass = mass;
    m.inertia = Mat3::Identity() * (mass * edge * edge / 6.0);
    m.thrusters.clear();
    return m;
}

} // namespace

TEST(ComposeMassProperties, TwoModuleLineIsSymmetric) {
    Assembly a = make_line_assembly(plain_module(), 2);
    const MassProperties props = compose_mass_properties(a);
    EXPECT_NEAR(props.total_mass, 18.0, 1e-12);
    // CoM at the midpoint between the two module centers.
    const Vec3 mid = 0.5 * (a.modules[0].center() + a.modules[1].center());
    EXPECT_LT((props.com - mid).norm(), 1e-12);
    // First-moment invariant: sum m_i r_i = 0.
    Vec3 moment = Vec3::Zero();
    for (std::size_t i = 0; i < a.modules.size(); ++i) {
        moment += a.modules[i].spec.mass * props.module_offsets[i];
    }
    EXPECT_LT(moment.norm(), 1e-9 * props.total_mass * 0.21);
}

TEST(ComposeMassProperties, SingleModuleIsIdentity) {
    Assembly a = make_line_assembly(plain_module(), 1);
    const MassProperties props = compose_mass_properties(a);
    EXPECT_NEAR(props.total_mass, 9.0, 1e-12);
    EXPECT_LT((props.com - a.modules[0].center()).norm(), 1e-12);
    EXPECT_LT((props.inertia - a.modules[0].spec.inertia).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ComposeMassProperties, ParallelAxisTermMatchesHandComputation) {
    // m = 9 kg at offset r = (0.21, 0, 0): m (|r|^2 I - r r^T) has zero xx
    // entry and 9 * 0.21^2 = 0.3969 on yy/zz.
    const double m = 9.0;
    const Vec3 r(0.21, 0.0, 0.0);
    const Mat3 term = m * (r.squaredNorm() * Mat3::Identity() - r * r.transpose());
    EXPECT_NEAR(term(0, 0), 0.0, 1e-12);
    EXPECT_NEAR(term(1, 1), 0.3969, 1e-12);
    EXPECT_NEAR(term(2, 2), 0.3969, 1e-12);

    // The same contribution shows up in a two-module composition: compose a
    // line of two and subtract the rotated own-inertias.
    Assembly a = make_line_assembly(plain_module(), 2);
    const MassProperties props = compose_mass_properties(a);
    Mat3 expected = Mat3::Zero();
    for (std::size_t i = 0; i < 2; ++i) {
        const Vec3 ri = props.module_offsets[i];
        expected += a.modules[i].spec.inertia +
                    a.modules[i].spec.mass *
                        (ri.squaredNorm() * Mat3::Identity() - ri * ri.transpose());
    }
    EXPECT_LT((props.inertia - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ComposeMassProperties, RejectsOverlapAndDisconnection) {
    Assembly overlap;
    overlap.modules.push_back({plain_module(), {0, 0, 0}, 0});
    overlap.modules.push_back({plain_module(), {0, 0, 0}, 0});
    EXPECT_THROW(compose_mass_properties(overlap), StructuralError);

    Assembly gap;
    gap.modules.push_back({plain_module(), {0, 0, 0}, 0});
    gap.modules.push_back({plain_module(), {2, 0, 0}, 0});
    EXPECT_THROW(compose_mass_properties(gap), StructuralError);

    Assembly diagonal; // corner contact is not face adjacency
    diagonal.modules.push_back({plain_module(), {0, 0, 0}, 0});
    diagonal.modules.push_back({plain_module(), {1, 1, 0}, 0});
    EXPECT_THROW(compose_mass_properties(diagonal), StructuralError);
}

TEST(ComposeMassProperties, OriginTranslationLeavesInertiaUnchanged) {
    Assembly a = make_benchmark_assembly(3);
    const MassProperties base = compose_mass_properties(a);
    Assembly shifted = a;
    for (auto &m : shifted.modules) {
        m.cell += Eigen::Vector3i(5, -2, 7);
    }
    const MassProperties moved = compose_mass_properties(shifted);
    EXPECT_LT((base.inertia - moved.inertia).cwiseAbs().maxCoeff(), 1e-9);
    const Vec3 delta = Vec3(5, -2, 7) * 0.21;
    EXPECT_LT((moved.com - base.com - delta).norm(), 1e-9);
}

TEST(ComposeMassProperties, CubeRotationConjugatesInertia) {
    Assembly a = make_benchmark_assembly(3);
    const MassProperties base = compose_mass_properties(a);
    for (int k : {1, 5, 13, 23}) {
        const Mat3 rot = cube_rotation(k);
        // Rotate the whole lattice: cells and orientations.
        Assembly rotated;
        for (const auto &m : a.modules) {
            ModulePlacement p = m;
            const Vec3 c = rot * (m.cell.cast<double>() + Vec3::Constant(0.5).eval());
            p.cell = (c - Vec3::Constant(0.5)).array().round().cast<int>();
            p.orientation = cube_rotation_index(rot * m.rotation());
            rotated.modules.push_back(p);
        }
        const MassProperties turned = compose_mass_properties(rotated);
        const Mat3 expected = rot * base.inertia * rot.transpose();
        EXPECT_LT((turned.inertia - expected).cwiseAbs().maxCoeff(), 1e-9) << "rotation " << k;
    }
}

TEST(MassMatrix, ComReferenceIsBlockDiagonal) {
    MassProperties props;
    props.total_mass = 18.0;
    props.inertia = Mat3::Identity() * 0.5;
    const Mat6 m = mass_matrix(props);
    Mat6 expected = Mat6::Zero();
    expected.diagonal() << 18, 18, 18, 0.5, 0.5, 0.5;
    EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MassMatrix, OffsetReferenceHasSkewCouplingBlocks) {
    MassProperties props;
    props.total_mass = 18.0;
    props.inertia = Mat3::Identity() * 0.5;
    const Vec3 r(0.105, 0.0, 0.0);
    const Mat6 m = mass_matrix(props, Mat6::Zero(), r);
    EXPECT_LT((m.topRightCorner<3, 3>() + 18.0 * skew(r)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((m.bottomLeftCorner<3, 3>() - 18.0 * skew(r)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat6> es(m);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(MassMatrix, RejectsAsymmetricAddedMass) {
    MassProperties props;
    props.total_mass = 1.0;
    props.inertia = Mat3::Identity();
    Mat6 bad = Mat6::Zero();
    bad(0, 1) = 1.0;
    EXPECT_THROW(mass_matrix(props, bad), ArgumentError);
}

TEST(CoriolisMatrix, ZeroTwistGivesZeroMatrix) {
    MassProperties props;
    props.total_mass = 18.0;
    props.inertia = Mat3::Identity() * 0.5;
    const Mat6 c = coriolis_matrix(props, Mat6::Zero(), Vec6::Zero());
    EXPECT_LT(c.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CoriolisMatrix, IsSkewSymmetricAndWorkless) {
    MassProperties props;
    props.total_mass = 18.0;
    props.inertia = (Vec3(0.3, 0.5, 0.7)).asDiagonal();
    Mat6 added = Mat6::Zero();
    added.diagonal() << 1, 2, 3, 0.1, 0.2, 0.3;
    Vec6 nu;
    nu << 0.4, -1.2, 0.3, 0.5, 0.2, -0.7;
    const Mat6 c = coriolis_matrix(props, added, nu);
    EXPECT_LT((c + c.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(nu.dot(c * nu), 0.0, 1e-9);
}

TEST(CoriolisMatrix, TopRightBlockMatchesHandSkew) {
    MassProperties props;
    props.total_mass = 18.0;
    props.inertia = Mat3::Identity() * 0.5;
    Vec6 nu = Vec6::Zero();
    nu(0) = 1.0; // v = e_x
    const Mat6 c = coriolis_matrix(props, Mat6::Zero(), nu);
    const Mat3 expected = -skew(Vec3(18.0, 0.0, 0.0));
    EXPECT_LT((c.topRightCorner<3, 3>() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CubeRotations, AllProperAndDistinct) {
    for (int i = 0; i < 24; ++i) {
        const Mat3 r = cube_rotation(i);
        EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
        EXPECT_LT((r * r.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        for (int j = i + 1; j < 24; ++j) {
            EXPECT_GT((r - cube_rotation(j)).cwiseAbs().maxCoeff(), 0.5);
        }
        EXPECT_EQ(cube_rotation_index(r), i);
    }
    EXPECT_TRUE(cube_rotation(0).isIdentity(1e-12));
}
