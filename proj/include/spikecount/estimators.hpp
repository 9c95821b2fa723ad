#pragma once

// Factor-count estimators on a descending sample spectrum:
//   * gap threshold (PY): first index whose following one or two eigenvalue
//     gaps fall below d_n = C n^(-2/3) sqrt(2 log log n);
//   * sequential Tracy-Widom test (KN): largest remaining eigenvalue against the
//     white-Wishart edge law at level gamma;
// and the two noise-level estimators they rely on when sigma2 is unknown.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "simulate.hpp"
#include "spectra.hpp"
#include "tracy_widom.hpp"

namespace spikecount {

struct PYSettings {
    double C = 11.0;
    /// Preliminary bound on the number of factors; 0 selects min(20, p - 3, n - 3).
    std::size_t s_max = 0;
    bool two_gap_rule = true;
    std::optional<double> sigma2;
};

struct KNSettings {
    double gamma = 0.005;
    std::optional<double> sigma2;
};

struct EstimateResult {
    std::size_t q_hat = 0;
    /// delta_j = (lambda_j - lambda_{j+1}) / sigma2_used, j = 1, 2, ...
    std::vector<double> gaps;
    /// d_n for the gap estimator; unused by the sequential test.
    double threshold = 0.0;
    /// Per-step thresholds of the sequential test, k = 1, ..., q_hat + 1.
    std::vector<double> kn_thresholds;
    double sigma2_used = 1.0;
    /// The scan reached its bound without the stopping rule firing.
    bool saturated = false;
    /// False if the bias-corrected noise estimate hit its iteration cap.
    bool sigma2_converged = true;
};

struct NoiseEstimate {
    double sigma2 = 1.0;
    bool converged = true;
    std::size_t iterations = 0;
};

inline double gap_threshold(double C, std::size_t n) {
    if (n < 16) throw std::invalid_argument("gap_threshold: need n >= 16");
    if (!(C > 0.0)) throw std::invalid_argument("gap_threshold: C must be positive");
    const double nd = static_cast<double>(n);
    return C * std::pow(nd, -2.0 / 3.0) * std::sqrt(2.0 * std::log(std::log(nd)));
}

inline std::size_t default_s_max(std::size_t p, std::size_t n) {
    const std::size_t lim = std::min(p, n);
    if (lim < 4) return 0;
    return std::min<std::size_t>(20, lim - 3);
}

/// Mean of the p - q smallest eigenvalues.
inline double sigma2_mle(const EigenSpectrum& eigs, std::size_t q) {
    if (q >= eigs.p) throw std::invalid_argument("sigma2_mle: need q < p");
    return eigs.tail_sum(q) / static_cast<double>(eigs.p - q);
}

/// Noise level corrected for the energy the q leading eigenvalues draw from
/// the bulk. Each leading lambda_j is matched to its population spike
/// rho_j = sigma2 invert_phi(lambda_j / sigma2, c) and the trace balance
///     trace = sum_j rho_j + (p - q) sigma2
/// is iterated to a fixed point from the MLE. Eigenvalues that fall below the
/// bulk edge during the iteration are counted as noise.
inline NoiseEstimate sigma2_corrected(const EigenSpectrum& eigs, std::size_t q, double c,
                                      double rel_tol = 1e-10, std::size_t max_iter = 200) {
    if (q >= eigs.p) throw std::invalid_argument("sigma2_corrected: need q < p");
    if (!(c > 0.0)) throw std::invalid_argument("sigma2_corrected: c must be positive");
    NoiseEstimate est{sigma2_mle(eigs, q), true, 0};
    if (q == 0) return est;
    if (!(est.sigma2 > 0.0)) throw NumericalError("sigma2_corrected: zero noise energy in the tail");

    const double tail = eigs.tail_sum(q);
    const double edge = bulk_edge(1.0, c);
    for (std::size_t it = 1; it <= max_iter; ++it) {
        double numer = tail;
        std::size_t bulk_count = eigs.p - q;
        for (std::size_t j = 0; j < q; ++j) {
            const double m = eigs.values[j] / est.sigma2;
            if (m >= edge) {
                numer += eigs.values[j] - est.sigma2 * invert_phi(m, c);
            } else {
                numer += eigs.values[j];
                ++bulk_count;
            }
        }
        const double next = numer / static_cast<double>(bulk_count);
        const double change = std::abs(next - est.sigma2) / est.sigma2;
        est.sigma2 = next;
        est.iterations = it;
        if (change < rel_tol) return est;
    }
    est.converged = false;
    return est;
}

namespace detail {

inline void require_values(const EigenSpectrum& eigs, std::size_t count, const char* who) {
    if (eigs.values.size() < count)
        throw std::invalid_argument(std::string(who) + ": spectrum too short, need at least " +
                                    std::to_string(count) + " eigenvalues");
}

// Smallest j in {0, ..., s_max} with delta_{j+1} < d (and delta_{j+2} < d).
inline std::size_t gap_scan(const std::vector<double>& gaps, double d, std::size_t s_max, bool two_gap,
                            bool& saturated) {
    for (std::size_t j = 0; j <= s_max; ++j) {
        const bool first = gaps[j] < d;
        if (first && (!two_gap || gaps[j + 1] < d)) {
            saturated = false;
            return j;
        }
    }
    saturated = true;
    return s_max;
}

}  // namespace detail

inline EstimateResult py_estimate(const EigenSpectrum& eigs, const PYSettings& settings) {
    const std::size_t s_max = settings.s_max == 0 ? default_s_max(eigs.p, eigs.n) : settings.s_max;
    if (s_max < 1) throw std::invalid_argument("py_estimate: s_max must be at least 1 (spectrum too small)");
    if (eigs.p < s_max + 3) throw std::invalid_argument("py_estimate: need p >= s_max + 3");
    detail::require_values(eigs, s_max + 3, "py_estimate");

    EstimateResult res;
    res.threshold = gap_threshold(settings.C, eigs.n);

    auto scan_with = [&](double sigma2) {
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw std::invalid_argument("py_estimate: sigma2 must be positive");
        res.gaps.assign(s_max + 2, 0.0);
        for (std::size_t j = 0; j < s_max + 2; ++j)
            res.gaps[j] = (eigs.values[j] - eigs.values[j + 1]) / sigma2;
        res.sigma2_used = sigma2;
        return detail::gap_scan(res.gaps, res.threshold, s_max, settings.two_gap_rule, res.saturated);
    };

    if (settings.sigma2) {
        res.q_hat = scan_with(*settings.sigma2);
        return res;
    }
    // crude pass with the MLE at the preliminary bound, then refine at the first-pass count
    const std::size_t first = scan_with(sigma2_mle(eigs, s_max));
    const NoiseEstimate refined = sigma2_corrected(eigs, first, eigs.c());
    res.q_hat = scan_with(refined.sigma2);
    res.sigma2_converged = refined.converged;
    return res;
}

inline EstimateResult kn_estimate(const EigenSpectrum& eigs, const KNSettings& settings,
                                  const TW1Table& table = TW1Table::builtin()) {
    if (eigs.p < 2 || eigs.n < 2) throw std::invalid_argument("kn_estimate: need p, n >= 2");
    if (!(settings.gamma > 0.0) || !(settings.gamma < 0.5))
        throw std::invalid_argument("kn_estimate: gamma must lie in (0, 0.5)");
    if (settings.sigma2 && !(*settings.sigma2 > 0.0))
        throw std::invalid_argument("kn_estimate: sigma2 must be positive");
    const double s_gamma = table.quantile(settings.gamma);
    const double n = static_cast<double>(eigs.n);
    const double n23 = std::pow(n, 2.0 / 3.0);
    const std::size_t k_max = std::min(eigs.p, eigs.n) - 1;

    EstimateResult res;
    res.saturated = true;
    res.q_hat = k_max;
    for (std::size_t k = 1; k <= k_max; ++k) {
        if (k > eigs.values.size()) {
            res.q_hat = k - 1;
            break;
        }
        const std::size_t rest = eigs.p - k;
        const double c_k = static_cast<double>(rest) / n;
        double sigma2 = 0.0;
        if (settings.sigma2) {
            sigma2 = *settings.sigma2;
        } else {
            const NoiseEstimate est = sigma2_corrected(eigs, k, c_k);
            sigma2 = est.sigma2;
            res.sigma2_converged = res.sigma2_converged && est.converged;
        }
        const double threshold = sigma2 * (beta_np(eigs.n, rest) / n23 * s_gamma + bulk_edge(1.0, c_k));
        res.kn_thresholds.push_back(threshold);
        res.sigma2_used = sigma2;
        if (!(eigs.values[k - 1] > threshold)) {
            res.q_hat = k - 1;
            res.saturated = false;
            break;
        }
    }
    const std::size_t shown = std::min(res.q_hat + 2, eigs.values.size() - 1);
    for (std::size_t j = 0; j < shown; ++j)
        res.gaps.push_back((eigs.values[j] - eigs.values[j + 1]) / res.sigma2_used);
    return res;
}

}  // namespace spikecount
