#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "lasuscc/errors.hpp"
#include "lasuscc/las.hpp"
#include "lasuscc/vqe.hpp"

using namespace lasuscc;

namespace {

struct H4 {
    PreparedSystem sys = fixtures::hydrogen_ladder(2);
    QubitMap map{sys.layout};
    QubitHamiltonian h{sys.ints, map};
    Statevector ref = assemble_statevector(lasci(sys.ints, sys.layout), map);
    GeneratorPool pool = [this] {
        GeneratorPool p = enumerate_pool(sys.layout);
        screen_gradients(p, ref, h);
        return p;
    }();
};

const H4& h4() {
    static const H4 s;
    return s;
}

} // namespace

TEST(Bfgs, Rosenbrock) {
    const Objective f = [](std::span<const double> x, std::span<double> g) {
        const double a = 1 - x[0], b = x[1] - x[0] * x[0];
        g[0] = -2 * a - 400 * x[0] * b;
        g[1] = 200 * b;
        return a * a + 100 * b * b;
    };
    const BfgsResult r = bfgs(f, Eigen::Vector2d(-1.2, 1.0), {});
    EXPECT_TRUE(r.converged) << r.exit_reason;
    EXPECT_NEAR(r.x[0], 1.0, 1e-6);
    EXPECT_NEAR(r.x[1], 1.0, 1e-6);
    for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);

    OptimizerSettings capped;
    capped.max_iterations = 3;
    const BfgsResult c = bfgs(f, Eigen::Vector2d(-1.2, 1.0), capped);
    EXPECT_FALSE(c.converged);
    EXPECT_EQ(c.iterations, 3);
    capped.gradient_tolerance = 0.0;
    EXPECT_THROW(bfgs(f, Eigen::Vector2d(0, 0), capped), ValidationError);
}

TEST(Vqe, AdjointGradientMatchesFiniteDifferences) {
    const H4& s = h4();
    std::vector<std::size_t> sel = select_top(s.pool, 25);
    for (auto kernel : {TrotterAnsatz::Kernel::Pairwise, TrotterAnsatz::Kernel::Pauli}) {
        const TrotterAnsatz ansatz(s.pool, sel, s.map, kernel);
        const VqeProblem problem(ansatz, s.ref, s.h);
        std::mt19937 rng(1);
        std::vector<double> t(ansatz.size());
        for (auto& x : t) x = std::uniform_real_distribution<double>(-0.3, 0.3)(rng);
        std::vector<double> g(t.size());
        const double e = problem.energy_and_gradient(t, g);
        EXPECT_NEAR(e, problem.energy(t), 1e-13);
        for (std::size_t k = 0; k < t.size(); ++k) {
            auto tp = t, tm = t;
            tp[k] += 1e-5;
            tm[k] -= 1e-5;
            EXPECT_NEAR(g[k], (problem.energy(tp) - problem.energy(tm)) / 2e-5, 1e-8) << k;
        }
    }
}

TEST(Vqe, KernelsGiveTheSameEnergy) {
    const H4& s = h4();
    const auto sel = select(s.pool, 0.0);
    const TrotterAnsatz a(s.pool, sel, s.map, TrotterAnsatz::Kernel::Pairwise);
    const TrotterAnsatz b(s.pool, sel, s.map, TrotterAnsatz::Kernel::Pauli);
    std::vector<double> t(a.size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = 0.01 * std::sin(double(k));
    EXPECT_NEAR(VqeProblem(a, s.ref, s.h).energy(t), VqeProblem(b, s.ref, s.h).energy(t), 1e-12);
    EXPECT_TRUE(std::is_sorted(a.order().begin(), a.order().end()));
}

TEST(Vqe, ZeroAmplitudesReproduceTheReference) {
    const H4& s = h4();
    const TrotterAnsatz a(s.pool, select(s.pool, 1e-3), s.map);
    const VqeProblem p(a, s.ref, s.h);
    EXPECT_NEAR(p.energy(std::vector<double>(a.size(), 0.0)), s.h.expectation(s.ref), 1e-13);
    EXPECT_THROW(TrotterAnsatz(s.pool, {0, 0}, s.map), ValidationError);
    EXPECT_THROW(TrotterAnsatz(s.pool, {s.pool.size()}, s.map), ValidationError);
    EXPECT_THROW(p.energy(std::vector<double>(a.size() + 1)), ShapeError);
}

TEST(Vqe, FullPoolReachesCasci) {
    const H4& s = h4();
    const double e_casci = casci_ground_state(s.sys.ints, Sector{4, 2, 2}).energy;
    const TrotterAnsatz a(s.pool, select(s.pool, 0.0), s.map);
    const VqeResult r = minimize(VqeProblem(a, s.ref, s.h), std::vector<double>(a.size(), 0.0));
    EXPECT_TRUE(r.converged) << r.exit_reason;
    EXPECT_NEAR(r.energy, e_casci, 1e-8);
    EXPECT_GE(r.energy, e_casci - 1e-10);
    EXPECT_LT(r.energy, r.initial_energy);
}

TEST(Sweep, WarmStartedLadderIsMonotone) {
    const H4& s = h4();
    int calls = 0;
    const auto records = sweep(s.pool, {0.05, 0.01, 0.0}, true, s.ref, s.h, {},
                               [&](const SweepRecord&) { ++calls; });
    ASSERT_EQ(records.size(), 3u);
    EXPECT_EQ(calls, 3);
    for (std::size_t i = 1; i < records.size(); ++i) {
        EXPECT_GE(records[i].n_params, records[i - 1].n_params);
        EXPECT_LE(records[i].result.energy, records[i - 1].result.energy + 1e-10);
    }
    EXPECT_EQ(records.back().n_params, s.pool.size());
    EXPECT_EQ(records.back().gates.n_cnot, estimate(8, 138).n_cnot);
    EXPECT_THROW(sweep(s.pool, {0.01, 0.05}, true, s.ref, s.h), ValidationError);
    EXPECT_THROW(sweep(s.pool, {-1.0}, true, s.ref, s.h), ValidationError);
}

TEST(Yamaguchi, FormulaAndDegenerateSpins) {
    EXPECT_NEAR(yamaguchi_j(-1.0, -1.0 - 1e-3, 6.0, 0.0), 1e-3 / (0.0 - 6.0) * kHartreeToWavenumber, 1e-9);
    EXPECT_THROW(yamaguchi_j(0.0, 0.0, 1.0, 1.0), ValidationError);
}
