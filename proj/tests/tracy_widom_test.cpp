#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <string>

#include <spikecount/tracy_widom.hpp>

#include "oracles/tw1_fredholm.hpp"

using namespace spikecount;

#ifndef SPIKECOUNT_DATA_DIR
#define SPIKECOUNT_DATA_DIR "data"
#endif

namespace {
const std::string kTablePath = std::string(SPIKECOUNT_DATA_DIR) + "/tw1_table.txt";
}

TEST(TW1Oracle, QuadratureConverged) {
    for (double s : {-5.0, -1.27, 0.98, 2.42}) EXPECT_NEAR(oracle::tw1_cdf(s, 80), oracle::tw1_cdf(s, 120), 1e-12);
}

TEST(TW1Table, EveryKnotMatchesOracle) {
    const auto& table = TW1Table::builtin();
    for (const auto& k : table.knots()) EXPECT_NEAR(k.prob, oracle::tw1_cdf(k.s), 1e-3) << "s=" << k.s;
    // far tighter than the contract; documents how good the knots are
    for (const auto& k : table.knots()) EXPECT_NEAR(k.prob, oracle::tw1_cdf(k.s), 1e-10) << "s=" << k.s;
}

TEST(TW1Table, ShippedFileMatchesCompiledTable) {
    const TW1Table file = TW1Table::load(kTablePath);
    const auto& builtin = TW1Table::builtin();
    ASSERT_EQ(file.knots().size(), builtin.knots().size());
    for (std::size_t i = 0; i < file.knots().size(); ++i) {
        EXPECT_EQ(file.knots()[i].s, builtin.knots()[i].s);
        EXPECT_EQ(file.knots()[i].prob, builtin.knots()[i].prob);
    }
}

TEST(TW1Table, Coverage) {
    const auto& k = TW1Table::builtin().knots();
    EXPECT_GE(k.size(), 50u);
    EXPECT_LE(k.front().prob, 0.001);
    EXPECT_GE(k.back().prob, 0.999);
}

TEST(TW1Quantile, ReferenceValues) {
    EXPECT_NEAR(tw1_quantile(0.05), 0.979, 2e-3);
    EXPECT_NEAR(tw1_quantile(0.005), 2.42, 5e-3);
    EXPECT_GT(tw1_quantile(0.01), tw1_quantile(0.05));
    // interpolated quantiles agree with the oracle CDF
    for (double g : {0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5})
        EXPECT_NEAR(oracle::tw1_cdf(tw1_quantile(g)), 1.0 - g, 1e-4) << "gamma=" << g;
}

TEST(TW1Quantile, StrictlyDecreasing) {
    double prev = tw1_quantile(0.001);
    for (int i = 2; i <= 500; ++i) {
        const double q = tw1_quantile(0.001 * i);
        EXPECT_LT(q, prev);
        prev = q;
    }
}

TEST(TW1Quantile, OutOfRange) {
    EXPECT_THROW(tw1_quantile(0.0), std::out_of_range);
    EXPECT_THROW(tw1_quantile(0.6), std::out_of_range);
    EXPECT_THROW(tw1_quantile(-0.1), std::out_of_range);
    EXPECT_THROW(tw1_quantile(1e-9), std::out_of_range);
}

TEST(TW1Cdf, Values) {
    EXPECT_NEAR(tw1_cdf(-1.27), 0.5, 5e-3);
    EXPECT_LE(tw1_cdf(-10.0), 0.001);
    EXPECT_GE(tw1_cdf(10.0), 0.999);
    EXPECT_NEAR(tw1_cdf(tw1_quantile(0.05)), 0.95, 1e-3);
}

TEST(TW1Cdf, InverseOfQuantile) {
    for (int i = 1; i <= 500; ++i) {
        const double g = 0.001 * i;
        EXPECT_NEAR(tw1_cdf(tw1_quantile(g)), 1.0 - g, 1e-9);
    }
    for (double s = -5.5; s < 5.5; s += 0.0137) {
        const double f = tw1_cdf(s);
        if (f >= 0.5 && f < 1.0 - 0.001) {
            EXPECT_NEAR(tw1_quantile(1.0 - f), s, 1e-7);
        }
    }
}

TEST(TW1Cdf, MonotoneWithoutOvershoot) {
    const auto& k = TW1Table::builtin().knots();
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        for (int t = 0; t <= 20; ++t) {
            const double s = k[i].s + (k[i + 1].s - k[i].s) * t / 20.0;
            const double f = tw1_cdf(s);
            EXPECT_GE(f, k[i].prob - 1e-15);
            EXPECT_LE(f, k[i + 1].prob + 1e-15);
            EXPECT_GE(f, prev);
            prev = f;
        }
    }
    // interpolation error between knots, against the oracle
    for (double s = -5.9; s < 5.9; s += 0.173) EXPECT_NEAR(tw1_cdf(s), oracle::tw1_cdf(s), 1e-4) << "s=" << s;
}

TEST(TW1Table, LoadRejectsMalformedFiles) {
    const std::string path = ::testing::TempDir() + "/bad_tw1.txt";
    {
        std::ofstream out(path);
        out << "# comment\n0.0 0.5\n1.0 0.4\n";
    }
    EXPECT_THROW(TW1Table::load(path), DataError);
    {
        std::ofstream out(path);
        out << "0.0 0.5 7\n";
    }
    EXPECT_THROW(TW1Table::load(path), DataError);
    {
        std::ofstream out(path);
        out << "# header\n-1 0.2   # trailing comment\n\n1 0.8\n";
    }
    const TW1Table t = TW1Table::load(path);
    EXPECT_EQ(t.knots().size(), 2u);
    EXPECT_NEAR(t.quantile(0.5), 0.0, 1e-12);
    EXPECT_THROW(TW1Table::load(path + ".missing"), DataError);
}
