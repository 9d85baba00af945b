#include <gtest/gtest.h>

#include "helpers.hpp"
#include "lasuscc/errors.hpp"
#include "lasuscc/resources.hpp"

using namespace lasuscc;

TEST(Resources, PerExcitationCosts) {
    EXPECT_EQ(sqg_per_excitation(1), 10);
    EXPECT_EQ(cnot_per_excitation(1), 4);
    EXPECT_EQ(sqg_per_excitation(2), 72);
    EXPECT_EQ(cnot_per_excitation(2), 48);
    EXPECT_EQ(sqg_per_excitation(3), 13 * 32);
    EXPECT_EQ(cnot_per_excitation(3), 5 * 64);
    EXPECT_THROW(sqg_per_excitation(0), ValidationError);
}

TEST(Resources, TotalsAndBreakdown) {
    const GateCountEstimate e = estimate(4, 19);
    EXPECT_EQ(e.n_sqg, 4 * 10 + 19 * 72);
    EXPECT_EQ(e.n_cnot, 4 * 4 + 19 * 48);
    EXPECT_EQ(e.singles_cnot + e.doubles_cnot, e.n_cnot);
    EXPECT_EQ(e.singles_sqg + e.doubles_sqg, e.n_sqg);
    EXPECT_NEAR(percent_cnot(e, estimate(8, 138)), 100.0 * 928 / 6656, 1e-12);
    EXPECT_THROW(percent_cnot(e, estimate(0, 0)), ValidationError);
}

TEST(Resources, EstimateFromSelection) {
    const GeneratorPool pool = enumerate_pool(fixtures::pairs_layout(2));
    const std::vector<std::size_t> sel{0, 1, pool.n_singles, pool.n_singles + 5};
    const GateCountEstimate e = estimate(pool, sel);
    EXPECT_EQ(e.n_cnot, estimate(2, 2).n_cnot);
    EXPECT_EQ(e.n_sqg, estimate(2, 2).n_sqg);
}

TEST(Resources, SplitRoundTrip) {
    for (std::int64_t s = 0; s < 30; ++s)
        for (std::int64_t d = 0; d < 30; ++d) {
            const auto e = estimate(static_cast<std::size_t>(s), static_cast<std::size_t>(d));
            const auto split = solve_split(s + d, e.n_sqg, e.n_cnot);
            ASSERT_TRUE(split);
            EXPECT_EQ(split->first, s);
            EXPECT_EQ(split->second, d);
        }
    EXPECT_FALSE(solve_split(5, 100, 101));
    EXPECT_FALSE(solve_split(1, 72, 48 + 44)); // would need negative singles
}
