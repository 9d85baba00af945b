#include <gtest/gtest.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "lasuscc/errors.hpp"
#include "lasuscc/fock.hpp"
#include "lasuscc/integrals.hpp"

using namespace lasuscc;

namespace {

nlohmann::json golden() {
    std::ifstream in(std::string(LASUSCC_TEST_DATA) + "/golden.json");
    return nlohmann::json::parse(in);
}

Geometry h2(double r) { return {{{"H", {0, 0, 0}}, {"H", {0, 0, r}}}, 0, 1}; }

} // namespace

TEST(Boys, SmallAndLargeArgumentsAgreeAtSwitch) {
    EXPECT_DOUBLE_EQ(boys_f0(0.0), 1.0);
    EXPECT_NEAR(boys_f0(12.0 - 1e-12), boys_f0(12.0 + 1e-12), 1e-12);
    // F0(t) = sqrt(pi/t) erf(sqrt t) / 2
    for (double t : {1e-6, 0.3, 2.0, 7.5, 11.9, 12.1, 30.0, 400.0})
        EXPECT_NEAR(boys_f0(t), 0.5 * std::sqrt(M_PI / t) * std::erf(std::sqrt(t)), 1e-13) << t;
}

TEST(Sto3g, SingleAtomIsNormalized) {
    const AoIntegrals ao = build_sto3g_hydrogen({{{"H", {0, 0, 0}}}, -1, 1});
    ASSERT_EQ(ao.overlap.rows(), 1);
    EXPECT_NEAR(ao.overlap(0, 0), 1.0, 1e-12);
    EXPECT_EQ(ao.h_core.rows(), 1);
}

TEST(Sto3g, RejectsOtherElementsAndCoincidentAtoms) {
    EXPECT_THROW(build_sto3g_hydrogen({{{"He", {0, 0, 0}}}, 0, 1}), UnsupportedElementError);
    EXPECT_THROW(build_sto3g_hydrogen({{{"H", {0, 0, 0}}, {"H", {0, 0, 1e-8}}}, 0, 1}), DegenerateGeometryError);
}

TEST(Sto3g, EriHasEightFoldSymmetry) {
    const AoIntegrals ao = build_sto3g_hydrogen(hydrogen_dimer_ladder(2, 1.46));
    IntegralSet s = IntegralSet::zeros(4, 2, 2);
    s.h = ao.h_core;
    s.g = ao.eri;
    EXPECT_NO_THROW(s.check(1e-12));
    Eigen::SelfAdjointEigenSolver<Matrix> es(ao.overlap);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(Rhf, H2MatchesGoldenAndHasGeradeUngeradeOrbitals) {
    const auto gold = golden()["h2"];
    const AoIntegrals ao = build_sto3g_hydrogen(h2(0.7414));
    const ScfResult hf = rhf(ao);
    EXPECT_NEAR(hf.energy, gold["e_rhf"].get<double>(), 1e-9);
    const Matrix& c = hf.coefficients;
    EXPECT_NEAR(std::abs(c(0, 0)), std::abs(c(1, 0)), 1e-10);
    EXPECT_NEAR(c(0, 0), c(1, 0), 1e-10);  // bonding: same sign
    EXPECT_NEAR(c(0, 1), -c(1, 1), 1e-10); // antibonding: opposite sign
    EXPECT_TRUE((c.transpose() * ao.overlap * c).isIdentity(1e-10));
}

TEST(Rhf, H2FciFromDenseOracleMatchesGolden) {
    // Four-determinant FCI built from explicit ladder operators on the MO integrals.
    const auto gold = golden()["h2"];
    const AoIntegrals ao = build_sto3g_hydrogen(h2(0.7414));
    const IntegralSet mo = ao_to_mo(ao, rhf(ao).coefficients, 2);
    const Matrix block = fixtures::restrict_to_sector(fixtures::fock_space_hamiltonian(mo), {2, 1, 1});
    Eigen::SelfAdjointEigenSolver<Matrix> es(block);
    EXPECT_NEAR(es.eigenvalues()[0], gold["e_fci"].get<double>(), 1e-10);
    EXPECT_NEAR(casci_ground_state(mo, {2, 1, 1}).energy, es.eigenvalues()[0], 1e-12);
}

TEST(Rhf, HydrideOccupiesTheNormalizedAo) {
    const AoIntegrals ao = build_sto3g_hydrogen({{{"H", {0, 0, 0}}}, -1, 1});
    const ScfResult hf = rhf(ao);
    EXPECT_NEAR(std::abs(hf.coefficients(0, 0)), 1.0, 1e-12);
}

TEST(Rhf, AboveFciOnH4AndH8) {
    for (int k : {2, 4}) {
        const auto sys = fixtures::hydrogen_ladder(k);
        const double fci = casci_ground_state(sys.ints, {2 * k, k, k}).energy;
        EXPECT_GT(*sys.rhf_energy, fci) << k;
    }
}

TEST(Rhf, RejectsOpenShell) {
    EXPECT_THROW(rhf(build_sto3g_hydrogen({{{"H", {0, 0, 0}}}, 0, 2})), ValidationError);
}

TEST(Rhf, ReportsNonConvergence) {
    ScfSettings s;
    s.max_iter = 1;
    try {
        rhf(build_sto3g_hydrogen(hydrogen_dimer_ladder(2, 1.46)), s);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.history().size(), 1u);
    }
}

TEST(Localize, NonInteractingLimitGivesIsolatedOrbitals) {
    const AoIntegrals ao = build_sto3g_hydrogen(hydrogen_dimer_ladder(2, 100.0));
    const ScfResult hf = rhf(ao);
    const Matrix c = localize_per_fragment(ao.overlap, hf.fock, {{0, 1}, {2, 3}});
    const Matrix iso = rhf(build_sto3g_hydrogen(h2(1.0))).coefficients;
    for (int frag = 0; frag < 2; ++frag)
        for (int col = 0; col < 2; ++col) {
            const Eigen::Vector2d mine = c.block(2 * frag, 2 * frag + col, 2, 1);
            const Eigen::Vector2d ref = iso.col(col);
            EXPECT_NEAR(std::min((mine - ref).cwiseAbs().maxCoeff(), (mine + ref).cwiseAbs().maxCoeff()), 0.0, 1e-6);
        }
    EXPECT_NEAR(c.block(0, 2, 2, 2).cwiseAbs().maxCoeff(), 0.0, 1e-6);
}

TEST(Localize, OrthonormalAndFragmentPermutationInvariant) {
    const Geometry geo = hydrogen_dimer_ladder(2, 1.46);
    const AoIntegrals ao = build_sto3g_hydrogen(geo);
    const ScfResult hf = rhf(ao);
    const Matrix c = localize_per_fragment(ao.overlap, hf.fock, {{0, 1}, {2, 3}});
    EXPECT_TRUE((c.transpose() * ao.overlap * c).isIdentity(1e-10));
    const Matrix c2 = localize_per_fragment(ao.overlap, hf.fock, {{2, 3}, {0, 1}});
    EXPECT_TRUE(c.isApprox(c2, 1e-12));
    const double e1 = casci_ground_state(ao_to_mo(ao, c, 4), {4, 2, 2}).energy;
    const double e2 = casci_ground_state(ao_to_mo(ao, hf.coefficients, 4), {4, 2, 2}).energy;
    EXPECT_NEAR(e1, e2, 1e-8);
    EXPECT_THROW(localize_per_fragment(ao.overlap, hf.fock, {{0, 1}, {1, 2, 3}}), ValidationError);
}

TEST(Localize, SingularOverlapIsReported) {
    Matrix s = Matrix::Ones(2, 2);
    EXPECT_THROW(localize_per_fragment(s, Matrix::Identity(2, 2), {{0}, {1}}), IllConditionedBasisError);
}

TEST(AoToMo, IdentityTransformKeepsOneBodyMatrix) {
    AoIntegrals ao;
    const IntegralSet r = fixtures::random_integrals(3, 1, 1, 7);
    ao.overlap = Matrix::Identity(3, 3);
    ao.h_core = r.h;
    ao.eri = r.g;
    ao.nuclear_repulsion = 0.25;
    const IntegralSet mo = ao_to_mo(ao, Matrix::Identity(3, 3), 2);
    EXPECT_TRUE(mo.h.isApprox(r.h, 1e-14));
    EXPECT_DOUBLE_EQ(mo.e_core, 0.25);
}

TEST(AoToMo, TraceInvariantUnderOrthogonalRotation) {
    AoIntegrals ao;
    const IntegralSet r = fixtures::random_integrals(4, 2, 2, 11);
    ao.overlap = Matrix::Identity(4, 4);
    ao.h_core = r.h;
    ao.eri = r.g;
    const Matrix q = Eigen::HouseholderQR<Matrix>(Matrix::Random(4, 4)).householderQ();
    const IntegralSet mo = ao_to_mo(ao, q, 4);
    EXPECT_NEAR(mo.h.trace(), r.h.trace(), 1e-10);
    EXPECT_NO_THROW(mo.check(1e-12));
    EXPECT_NEAR(casci_ground_state(mo, {4, 2, 2}).energy,
                casci_ground_state(ao_to_mo(ao, Matrix::Identity(4, 4), 4), {4, 2, 2}).energy, 1e-8);
}

TEST(AoToMo, FrozenCoreGoesIntoCoreEnergy) {
    const AoIntegrals ao = build_sto3g_hydrogen(hydrogen_dimer_ladder(2, 1.46));
    const ScfResult hf = rhf(ao);
    const IntegralSet core = ao_to_mo(ao, hf.coefficients, 2, 1);
    EXPECT_EQ(core.n_orb, 3u);
    const IntegralSet all = ao_to_mo(ao, hf.coefficients, 4);
    // Single determinant with the frozen orbital doubly occupied: same energy both ways.
    EXPECT_NEAR(determinant_energy(core, 1, 1), determinant_energy(all, 2, 2), 1e-10);
    EXPECT_NEAR(determinant_energy(all, 2, 2), hf.energy, 1e-9);
}

TEST(AoToMo, ShapeMismatchThrows) {
    const AoIntegrals ao = build_sto3g_hydrogen(h2(0.74));
    EXPECT_THROW(ao_to_mo(ao, Matrix::Identity(3, 3), 2), ShapeError);
}
