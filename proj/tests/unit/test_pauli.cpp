#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "lasuscc/errors.hpp"
#include "lasuscc/pauli.hpp"
#include "lasuscc/statevector.hpp"

using namespace lasuscc;

namespace {

using CMatrix = Eigen::MatrixXcd;

/// Kronecker-product matrix of a Pauli string, qubit 0 least significant.
CMatrix kron_matrix(const PauliString& p, int n) {
    const Complex i(0, 1);
    CMatrix m = CMatrix::Identity(1, 1) * p.phase_factor();
    for (int q = n - 1; q >= 0; --q) {
        CMatrix s(2, 2);
        const bool x = p.x >> q & 1, z = p.z >> q & 1;
        if (x && z) s << 0, -i, i, 0;
        else if (x) s << 0, 1, 1, 0;
        else if (z) s << 1, 0, 0, -1;
        else s << 1, 0, 0, 1;
        CMatrix next(m.rows() * 2, m.cols() * 2);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            for (Eigen::Index c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
        m = next;
    }
    return m;
}

CMatrix sum_matrix(const PauliSum& s, int n) {
    CMatrix m = CMatrix::Zero(1 << n, 1 << n);
    for (const auto& t : s.terms()) m += t.coefficient * kron_matrix(t.string, n);
    return m;
}

/// Matrix of a ladder-operator product built directly on occupation bitstrings.
CMatrix ladder_matrix(const std::vector<Ladder>& ops, int n) {
    CMatrix m = CMatrix::Zero(1 << n, 1 << n);
    std::vector<std::pair<int, bool>> v;
    for (auto o : ops) v.emplace_back(o.mode, o.dagger);
    for (std::uint64_t b = 0; b < (1u << n); ++b) {
        std::uint64_t out = b;
        if (const int s = fixtures::apply_ladder(out, v)) m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) += s;
    }
    return m;
}

} // namespace

TEST(PauliString, SingleQubitProductTable) {
    const auto X = PauliString::parse("X"), Y = PauliString::parse("Y"), Z = PauliString::parse("Z");
    EXPECT_EQ(X * Y, (PauliString{0, 1, 1}));   // iZ
    EXPECT_EQ(Y * Z, (PauliString{1, 0, 1}));   // iX
    EXPECT_EQ(Z * X, (PauliString{1, 1, 1}));   // iY
    EXPECT_EQ(Y * X, (PauliString{0, 1, 3}));   // -iZ
    EXPECT_EQ(Y * Y, PauliString{});
    EXPECT_FALSE(X.commutes_with(Y));
    EXPECT_TRUE(PauliString::parse("XX").commutes_with(PauliString::parse("YY")));
}

TEST(PauliString, ProductsMatchKroneckerMatrices) {
    std::mt19937 rng(11);
    const int n = 4;
    for (int trial = 0; trial < 200; ++trial) {
        PauliString a{rng() & 15u, rng() & 15u, static_cast<int>(rng() % 4)};
        PauliString b{rng() & 15u, rng() & 15u, static_cast<int>(rng() % 4)};
        const CMatrix lhs = kron_matrix(a * b, n);
        const CMatrix rhs = kron_matrix(a, n) * kron_matrix(b, n);
        ASSERT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
        const bool comm = ((kron_matrix(a, n) * kron_matrix(b, n)) - (kron_matrix(b, n) * kron_matrix(a, n)))
                              .cwiseAbs()
                              .maxCoeff() < 1e-12;
        EXPECT_EQ(a.commutes_with(b), comm);
    }
}

TEST(PauliString, LettersRoundTrip) {
    const auto p = PauliString::parse("XIZY");
    EXPECT_EQ(p.letters(4), "XIZY");
    EXPECT_EQ(p.x, 0b1001u);
    EXPECT_EQ(p.z, 0b1100u);
    EXPECT_EQ(PauliString{}.letters(3), "III");
    EXPECT_THROW(PauliString::parse("XQ"), ValidationError);
}

TEST(PauliSum, CanonicalFormMergesAndPrunes) {
    const auto X = PauliString::parse("X");
    PauliSum s = PauliSum::from_string(X, 0.5) + PauliSum::from_string(X, 0.5) + PauliSum::identity(1e-16);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_DOUBLE_EQ(s.terms()[0].coefficient.real(), 1.0);
    EXPECT_TRUE((s - s).empty());
    // Phases are folded into coefficients.
    const PauliSum y = PauliSum::from_terms({{1.0, PauliString{1, 1, 1}}});
    EXPECT_EQ(y.terms()[0].string.phase, 0);
    EXPECT_NEAR(std::abs(y.terms()[0].coefficient - Complex(0, 1)), 0.0, 1e-15);
    EXPECT_FALSE(y.is_hermitian());
    EXPECT_TRUE((y * y.adjoint()).distance(PauliSum::identity()) < 1e-15);
}

TEST(JordanWigner, TextbookImages) {
    const Complex i(0, 1);
    // a^dagger_0 on one qubit = (X - iY)/2
    const PauliSum c0 = jw_map({{0, true}}, 1.0, 1);
    const PauliSum expect = PauliSum::from_string(PauliString::parse("X"), 0.5) +
                            PauliSum::from_string(PauliString::parse("Y"), -0.5 * i);
    EXPECT_LT(c0.distance(expect), 1e-15);
    // n_1 = (I - Z_1)/2
    const PauliSum n1 = jw_map({{1, true}, {1, false}}, 1.0, 3);
    EXPECT_LT(n1.distance(PauliSum::identity(0.5) + PauliSum::from_string(PauliString::parse("IZI"), -0.5)), 1e-15);
    // a^dagger_2 a_0 + h.c. = (X Z X + Y Z Y)/2 on qubits 0..2
    const PauliSum hop = jw_map({{2, true}, {0, false}}, 1.0, 3) + jw_map({{0, true}, {2, false}}, 1.0, 3);
    EXPECT_LT(hop.distance(PauliSum::from_string(PauliString::parse("XZX"), 0.5) +
                           PauliSum::from_string(PauliString::parse("YZY"), 0.5)),
              1e-15);
}

TEST(JordanWigner, CanonicalAnticommutation) {
    for (int n = 1; n <= 8; ++n)
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const PauliSum ap = jw_map({{p, false}}, 1.0, n);
                const PauliSum aq_dag = jw_map({{q, true}}, 1.0, n);
                const PauliSum aq = jw_map({{q, false}}, 1.0, n);
                const PauliSum anti = ap * aq_dag + aq_dag * ap;
                EXPECT_LT(anti.distance(p == q ? PauliSum::identity() : PauliSum{}), 1e-14) << n << p << q;
                EXPECT_TRUE((ap * aq + aq * ap).empty());
            }
}

TEST(JordanWigner, MatchesOccupationNumberAction) {
    std::mt19937 rng(5);
    const int n = 5;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Ladder> ops;
        const int len = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < len; ++k) ops.push_back({static_cast<int>(rng() % n), static_cast<bool>(rng() & 1)});
        const PauliSum s = jw_map(ops, 1.0, n);
        ASSERT_LE((sum_matrix(s, n) - ladder_matrix(ops, n)).cwiseAbs().maxCoeff(), 1e-14);
        // The statevector action agrees with the matrix too.
        const auto b = static_cast<std::uint64_t>(rng() % 32);
        const Statevector out = apply(s, Statevector::basis_state(n, b));
        const CMatrix m = ladder_matrix(ops, n);
        for (std::size_t k = 0; k < out.size(); ++k)
            EXPECT_LE(std::abs(out[k] - m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(b))), 1e-14);
    }
    EXPECT_THROW(jw_map({{5, true}}, 1.0, 5), ValidationError);
}

TEST(JordanWigner, HamiltonianIsHermitianAndClosed) {
    const IntegralSet ints = fixtures::random_integrals(3, 1, 1, 2);
    const PauliSum h = qubit_hamiltonian(ints, QubitMap::identity(3));
    EXPECT_TRUE(h.is_hermitian());
    EXPECT_LT(h.adjoint().distance(h), 1e-14);
    // Closure: H^2 is again a canonical sum whose matrix is the square.
    const PauliSum h2 = h * h;
    const CMatrix m = sum_matrix(h, 6);
    EXPECT_LE((sum_matrix(h2, 6) - m * m).cwiseAbs().maxCoeff(), 1e-11);
}
