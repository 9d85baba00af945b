#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "lasuscc/errors.hpp"
#include "lasuscc/fock.hpp"

using namespace lasuscc;

namespace {

std::span<const double> view(const Vector& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

} // namespace

TEST(Strings, AscendingOrderAndRank) {
    const auto s = enumerate_strings(5, 2);
    ASSERT_EQ(s.size(), 10u);
    for (std::size_t i = 0; i < s.size(); ++i) {
        EXPECT_EQ(std::popcount(s[i]), 2);
        if (i) {
            EXPECT_LT(s[i - 1], s[i]);
        }
        EXPECT_EQ(string_rank(s[i]), i);
    }
    EXPECT_EQ(enumerate_strings(4, 0), std::vector<Bitmask>{0});
    EXPECT_EQ(enumerate_strings(3, 3), std::vector<Bitmask>{7});
    EXPECT_THROW(enumerate_strings(2, 3), ValidationError);
    EXPECT_THROW(enumerate_strings(64, 1), ValidationError);
    EXPECT_EQ(binomial(10, 5), 252u);
}

TEST(Strings, ExcitationSignCountsPassedElectrons) {
    // orbitals 0,1,3 occupied: moving 3 -> 2 passes nobody, 0 -> 2 passes orbital 1.
    EXPECT_EQ(excitation_sign(0b1011, 2, 3), 1);
    EXPECT_EQ(excitation_sign(0b1011, 2, 0), -1);
    EXPECT_EQ(excitation_sign(0b1011, 1, 1), 1);
}

TEST(Sigma, MatchesFockSpaceOracleOnAllSmallSectors) {
    for (unsigned seed = 0; seed < 3; ++seed) {
        for (int n = 1; n <= 4; ++n) {
            const IntegralSet ints = fixtures::random_integrals(static_cast<std::size_t>(n), 0, 0, seed * 10 + static_cast<unsigned>(n));
            const Matrix full = fixtures::fock_space_hamiltonian(ints);
            for (int na = 0; na <= n; ++na)
                for (int nb = 0; nb <= n; ++nb) {
                    const Sector sec{n, na, nb};
                    const Matrix ref = fixtures::restrict_to_sector(full, sec);
                    const CIHamiltonian h(ints, sec);
                    const Matrix dense = h.dense();
                    EXPECT_LE((dense - ref).cwiseAbs().maxCoeff(), 1e-12) << n << ' ' << na << ' ' << nb;
                    EXPECT_LE((h.diagonal() - Vector(ref.diagonal())).cwiseAbs().maxCoeff(), 1e-12);
                    const Vector v = fixtures::random_unit(static_cast<Eigen::Index>(sec.dim()), seed);
                    EXPECT_LE((h.apply(view(v)) - ref * v).cwiseAbs().maxCoeff(), 1e-12);
                }
        }
    }
}

TEST(Sigma, SpinDependentOneBodyTerm) {
    const IntegralSet ints = fixtures::random_integrals(3, 0, 0, 42);
    Matrix hb = ints.h;
    hb(0, 1) += 0.3;
    hb(1, 0) += 0.3;
    const Sector sec{3, 2, 1};
    const CIHamiltonian split(ints.e_core, ints.h, hb, ints.g, sec);
    // Difference must equal 0.3 (E_01 + E_10) acting on beta strings only.
    const Matrix diff = split.dense() - CIHamiltonian(ints, sec).dense();
    const auto alpha = enumerate_strings(3, 2);
    const auto beta = enumerate_strings(3, 1);
    Matrix expect = Matrix::Zero(static_cast<Eigen::Index>(sec.dim()), static_cast<Eigen::Index>(sec.dim()));
    for (std::size_t ia = 0; ia < alpha.size(); ++ia)
        for (std::size_t ib = 0; ib < beta.size(); ++ib)
            for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 0}}) {
                const Bitmask b = beta[ib];
                if (!(b >> q & 1) || (p != q && (b >> p & 1))) continue;
                const Bitmask t = (b & ~(Bitmask{1} << q)) | (Bitmask{1} << p);
                // beta creators sit right of the two alpha creators: even count, no extra sign.
                const int sign = excitation_sign(b, p, q);
                expect(static_cast<Eigen::Index>(ia * beta.size() + string_rank(t)),
                       static_cast<Eigen::Index>(ia * beta.size() + ib)) += 0.3 * sign;
            }
    EXPECT_LE((diff - expect).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Sigma, OneOrbitalClosedForm) {
    IntegralSet ints = IntegralSet::zeros(1, 1, 1);
    ints.e_core = 0.7;
    ints.h(0, 0) = -1.3;
    ints.g.set_symmetric(0, 0, 0, 0, 0.55);
    const CasciResult r = casci_ground_state(ints, Sector{1, 1, 1});
    EXPECT_NEAR(r.energy, 0.7 - 2.6 + 0.55, 1e-14);
}

TEST(Sigma, NumberOperatorAndShapeChecks) {
    IntegralSet ints = IntegralSet::zeros(3, 0, 0);
    ints.h.setIdentity();
    for (int na = 0; na <= 3; ++na)
        for (int nb = 0; nb <= 3; ++nb) {
            const Sector sec{3, na, nb};
            const Matrix d = CIHamiltonian(ints, sec).dense();
            EXPECT_LE((d - Matrix::Identity(d.rows(), d.cols()) * (na + nb)).cwiseAbs().maxCoeff(), 1e-14);
        }
    const CIHamiltonian h(ints, Sector{3, 1, 1});
    EXPECT_THROW(h.apply(std::vector<double>(3)), ShapeError);
}

TEST(Casci, DavidsonMatchesDenseDiagonalization) {
    const IntegralSet ints = fixtures::random_integrals(6, 3, 3, 7);
    const Sector sec{6, 3, 3};
    CasciSettings dense_only;
    dense_only.dense_threshold = 100000;
    CasciSettings dav;
    dav.force_davidson = true;
    const CasciResult a = casci_ground_state(ints, sec, dense_only);
    const CasciResult b = casci_ground_state(ints, sec, dav);
    EXPECT_FALSE(a.used_davidson);
    EXPECT_TRUE(b.used_davidson);
    EXPECT_NEAR(a.energy, b.energy, 1e-9);
    EXPECT_NEAR(std::abs(a.state.coeffs.dot(b.state.coeffs)), 1.0, 1e-7);
    EXPECT_LE(b.residual, 1e-7);
    Eigen::SelfAdjointEigenSolver<Matrix> es(CIHamiltonian(ints, sec).dense());
    EXPECT_NEAR(a.energy, es.eigenvalues()[0], 1e-10);
}

TEST(Casci, DavidsonReportsResidualHistoryOnFailure) {
    const IntegralSet ints = fixtures::random_integrals(6, 3, 3, 8);
    const CIHamiltonian h(ints, Sector{6, 3, 3});
    DavidsonSettings s;
    s.max_iterations = 2;
    s.residual_tol = 1e-14;
    try {
        davidson_lowest([&](const Vector& v) { return h.apply(view(v)); }, h.diagonal(), s);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_FALSE(e.history().empty());
    }
}

TEST(Rdm, TraceAndHermiticity) {
    const IntegralSet ints = fixtures::random_integrals(4, 2, 1, 3);
    const CasciResult r = casci_ground_state(ints, Sector{4, 2, 1});
    const Rdm1 d = make_rdm1(r.state);
    EXPECT_NEAR(d.alpha.trace(), 2.0, 1e-12);
    EXPECT_NEAR(d.beta.trace(), 1.0, 1e-12);
    EXPECT_LE((d.alpha - d.alpha.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    // Energy from <H> = sum h gamma + 2-body; check the one-body part against a finite difference.
    IntegralSet bumped = ints;
    const double dh = 1e-6;
    bumped.h(1, 2) += dh;
    bumped.h(2, 1) += dh;
    const Vector v = r.state.coeffs;
    const double e0 = v.dot(CIHamiltonian(ints, r.state.sector).apply(view(v)));
    const double e1 = v.dot(CIHamiltonian(bumped, r.state.sector).apply(view(v)));
    EXPECT_NEAR((e1 - e0) / dh, 2.0 * (d.alpha(1, 2) + d.beta(1, 2)), 1e-8);
}

TEST(SpinSquared, KnownStates) {
    auto basis = [](Sector s, std::size_t idx) {
        CIVector c{s, Vector::Zero(static_cast<Eigen::Index>(s.dim()))};
        c.coeffs[static_cast<Eigen::Index>(idx)] = 1.0;
        return c;
    };
    EXPECT_NEAR(s_squared_expectation(basis({2, 1, 1}, 0)), 0.0, 1e-14); // closed shell
    EXPECT_NEAR(s_squared_expectation(basis({2, 1, 0}, 0)), 0.75, 1e-14);
    EXPECT_NEAR(s_squared_expectation(basis({2, 2, 0}, 0)), 2.0, 1e-14);
    // Open-shell singlet and Ms=0 triplet: (|0a1b> -+ |1a0b>)/sqrt2.
    for (double sgn : {-1.0, 1.0}) {
        CIVector c{{2, 1, 1}, Vector::Zero(4)};
        c.coeffs[1] = 1.0; // alpha 0, beta 1
        c.coeffs[2] = sgn; // alpha 1, beta 0
        c.normalize();
        EXPECT_NEAR(s_squared_expectation(c), sgn > 0 ? 0.0 : 2.0, 1e-14) << sgn;
    }
}
