#pragma once

// Automatic choice of the gap-threshold constant C from the upper 2% point of
// the top spacing lambda_1 - lambda_2 of white Wishart sample covariances.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "estimators.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "simulate.hpp"

namespace spikecount {

struct Calibration {
    /// Empirical 98% point of lambda_1 - lambda_2.
    double s_hat = 0.0;
    /// s_hat * n^(2/3) / sqrt(2 log log n).
    double C_tilde = 0.0;
};

inline constexpr std::uint64_t kCalibrationStream = 0xCA11B4A7EULL;

/// Mean of the ceil(0.02 reps)-th and next largest top spacings over `reps`
/// white draws, and the constant C that turns it into d_n.
inline Calibration calibrate_C(std::size_t p, std::size_t n, std::size_t reps = 500, std::uint64_t seed = 0,
                               std::size_t workers = 1) {
    if (reps < 100) throw std::invalid_argument("calibrate_C: need reps >= 100");
    if (p < 16 || n < 16) throw std::invalid_argument("calibrate_C: need p, n >= 16");
    std::vector<double> gaps(reps);
    parallel_for(reps, workers, [&](std::size_t r) {
        gaps[r] = wishart_top_gap(p, n, derive_seed(seed, kCalibrationStream, r));
    });
    std::sort(gaps.begin(), gaps.end(), std::greater<>());
    const auto rank = static_cast<std::size_t>(std::ceil(0.02 * static_cast<double>(reps) - 1e-9));
    Calibration out;
    out.s_hat = 0.5 * (gaps[rank - 1] + gaps[rank]);
    out.C_tilde = out.s_hat / gap_threshold(1.0, n);
    return out;
}

}  // namespace spikecount
