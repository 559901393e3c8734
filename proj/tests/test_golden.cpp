#include "splitexp/golden.hpp"
#include "splitexp/selfcheck.hpp"
#include "splitexp/study.hpp"

#include <gtest/gtest.h>

using namespace splitexp;

TEST(Golden, SeriesCounts)
{
    EXPECT_EQ(golden_series(1).size(), 4u);
    EXPECT_EQ(golden_series(2).size(), 20u);
    EXPECT_EQ(golden_series(3).size(), 12u);
    EXPECT_EQ(golden_series(4).size(), 8u);
    EXPECT_THROW((void)golden_series(0), Error);
}

TEST(Golden, EverySeriesIsWellFormed)
{
    for (int fig = 1; fig <= 4; ++fig) {
        for (const auto& s : golden_series(fig)) {
            EXPECT_EQ(s.provenance, "published");
            ASSERT_EQ(s.taus.size(), 5u);
            ASSERT_EQ(s.errors.size(), 5u);
            for (std::size_t i = 1; i < 5; ++i) {
                EXPECT_LT(s.taus[i], s.taus[i - 1]);
            }
            for (double e : s.errors) {
                EXPECT_GT(e, 0.0);
            }
        }
    }
}

TEST(Golden, KnownEntries)
{
    const auto& fig1 = golden_series(1);
    EXPECT_EQ(fig1.front().power, 0);
    EXPECT_DOUBLE_EQ(fig1.front().errors.front(), 1.17872951576602e-3);
    bool found = false;
    for (const auto& s : golden_series(2)) {
        if (s.function == "v3" && s.kind == "phi1phi1") {
            EXPECT_DOUBLE_EQ(s.errors.front(), 2.03068735090024e-5);
            found = true;
        }
    }
    EXPECT_TRUE(found);
    const auto& fig4 = golden_series(4).front();
    EXPECT_EQ(fig4.dim, 3u);
    EXPECT_EQ(fig4.scheme, "erk2l");
    EXPECT_DOUBLE_EQ(fig4.errors.front(), 9.97869689627173e-4);
    EXPECT_EQ(fig4.steps.front(), 4u);
}

TEST(Golden, DeviationMeasure)
{
    EXPECT_NEAR(golden_deviation(1.01, 1.0), 0.01, 1e-14);
    EXPECT_NEAR(golden_deviation(2e-12, 1e-12), 1.0, 1e-15);
    EXPECT_NEAR(golden_deviation(0.5e-12, 1e-12), 1.0, 1e-15);
}

TEST(Invariants, SuitePasses)
{
    for (const auto& r : run_invariant_suite()) {
        EXPECT_TRUE(r.passed) << format_check(r);
    }
}
