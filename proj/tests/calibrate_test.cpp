#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <spikecount/calibrate.hpp>

using namespace spikecount;

TEST(Calibrate, ConstantIsScaledThreshold) {
    const auto cal = calibrate_C(60, 40, 100, 3);
    const double n = 40.0;
    EXPECT_NEAR(cal.C_tilde / cal.s_hat, std::cbrt(n * n) / std::sqrt(2.0 * std::log(std::log(n))), 1e-12);
}

TEST(Calibrate, RankedSpacingsFromIndependentDraws) {
    const std::size_t reps = 150;  // ceil(0.02 * 150) = 3: mean of the 3rd and 4th largest
    std::vector<double> gaps;
    for (std::size_t r = 0; r < reps; ++r) gaps.push_back(wishart_top_gap(50, 30, derive_seed(9, kCalibrationStream, r)));
    std::sort(gaps.begin(), gaps.end(), std::greater<>());
    EXPECT_DOUBLE_EQ(calibrate_C(50, 30, reps, 9).s_hat, 0.5 * (gaps[2] + gaps[3]));
}

TEST(Calibrate, DeterministicAcrossWorkers) {
    const auto a = calibrate_C(80, 40, 200, 17, 1);
    const auto b = calibrate_C(80, 40, 200, 17, 4);
    EXPECT_EQ(a.s_hat, b.s_hat);
    EXPECT_EQ(a.C_tilde, b.C_tilde);
    EXPECT_NE(calibrate_C(80, 40, 200, 18).s_hat, a.s_hat);
}

TEST(Calibrate, Preconditions) {
    EXPECT_THROW(calibrate_C(100, 100, 99), std::invalid_argument);
    EXPECT_THROW(calibrate_C(15, 100, 100), std::invalid_argument);
    EXPECT_THROW(calibrate_C(100, 15, 100), std::invalid_argument);
}

TEST(Calibrate, SpreadAcrossSeedsIsSmall) {
    std::vector<double> s;
    for (std::uint64_t seed = 0; seed < 20; ++seed) s.push_back(calibrate_C(200, 200, 500, 1000 + seed).s_hat);
    std::sort(s.begin(), s.end());
    // quartiles of 20 values by linear interpolation at positions 4.75 and 14.25
    const double q1 = s[4] + 0.75 * (s[5] - s[4]);
    const double q3 = s[14] + 0.25 * (s[15] - s[14]);
    EXPECT_LE(q3 - q1, 0.05);
}

TEST(Calibrate, SlowlyVaryingInN) {
    const double small = calibrate_C(200, 200, 500, 21).C_tilde;
    const double large = calibrate_C(600, 600, 500, 22).C_tilde;
    EXPECT_LE(std::abs(large - small), 1.0);
}
