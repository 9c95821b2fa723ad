#pragma once

// Monte Carlo experiments: replicate generate -> eigenvalues -> estimators
// over a grid of (p, n) or factor strengths and aggregate misestimation rates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "calibrate.hpp"
#include "estimators.hpp"
#include "parallel.hpp"
#include "presets.hpp"
#include "rng.hpp"
#include "simulate.hpp"
#include "spectra.hpp"

namespace spikecount {

enum class Estimator { PY, KN };
enum class Sigma2Mode { known, estimated };
/// dense: full observation matrix and Gram eigendecomposition.
/// gaussian_fast: bidiagonal Wishart model plus Lanczos (Gaussian data only).
enum class Sampler { dense, gaussian_fast };

inline const char* to_string(Estimator e) { return e == Estimator::PY ? "PY" : "KN"; }
inline const char* to_string(Sigma2Mode m) { return m == Sigma2Mode::known ? "known" : "estimated"; }

struct GridPoint {
    std::size_t p = 0;
    std::size_t n = 0;
    std::optional<double> alpha;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct ExperimentConfig {
    /// Preset name, or "custom" for an explicit spectrum.
    std::string model = "custom";
    std::vector<double> strengths;
    std::size_t alpha_multiplicity = 0;
    double sigma2 = 1.0;

    std::vector<GridPoint> grid;
    std::vector<Estimator> estimators{Estimator::PY};
    /// nullopt: calibrate C for every grid point.
    std::optional<double> C = 5.0;
    double gamma = 0.005;
    Sigma2Mode sigma2_mode = Sigma2Mode::known;
    std::size_t reps = 500;
    std::uint64_t master_seed = 0;
    std::size_t workers = 1;

    Sampler sampler = Sampler::dense;
    NoiseLaw noise_law = NoiseLaw::gaussian;
    bool rotate_basis = false;
    bool two_gap_rule = true;
    std::size_t s_max = 0;
    std::size_t calibration_reps = 500;

    /// Start from a preset: strengths, alpha template, sigma2 and C.
    static ExperimentConfig from_preset(const std::string& name) {
        const ModelPreset& m = find_preset(name);
        ExperimentConfig cfg;
        cfg.model = m.name;
        cfg.strengths = m.strengths;
        cfg.alpha_multiplicity = m.alpha_multiplicity;
        cfg.sigma2 = m.sigma2;
        cfg.C = m.C;
        return cfg;
    }

    /// n-grid at a fixed aspect ratio, p = round(c n).
    static std::vector<GridPoint> n_grid(double c, const std::vector<std::size_t>& ns) {
        std::vector<GridPoint> g;
        for (std::size_t n : ns) g.push_back({static_cast<std::size_t>(std::llround(c * static_cast<double>(n))), n, {}});
        return g;
    }

    static std::vector<GridPoint> alpha_grid(std::size_t p, std::size_t n, const std::vector<double>& alphas) {
        std::vector<GridPoint> g;
        for (double a : alphas) g.push_back({p, n, a});
        return g;
    }

    /// Population spectrum at one grid point.
    SpikeSpec spec_at(const GridPoint& g) const {
        std::vector<double> all = strengths;
        if (g.alpha) all.insert(all.end(), alpha_multiplicity, *g.alpha);
        return SpikeSpec::from_strengths(std::move(all), sigma2, g.p);
    }

    void validate() const {
        if (grid.empty()) throw std::invalid_argument("experiment: grid is empty");
        if (reps < 1) throw std::invalid_argument("experiment: reps must be >= 1");
        if (estimators.empty()) throw std::invalid_argument("experiment: no estimator selected");
        if (C && !(*C > 0.0)) throw std::invalid_argument("experiment: C must be positive");
        if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("experiment: gamma must lie in (0, 0.5)");
        if (sampler == Sampler::gaussian_fast && noise_law != NoiseLaw::gaussian)
            throw std::invalid_argument("experiment: the gaussian_fast sampler requires Gaussian noise");
        for (const auto& g : grid) {
            if (g.p < 4 || g.n < 16) throw std::invalid_argument("experiment: grid points need p >= 4 and n >= 16");
            if (g.alpha && alpha_multiplicity == 0)
                throw std::invalid_argument("experiment: alpha grid given for a model without an alpha template");
            if (!g.alpha && alpha_multiplicity > 0)
                throw std::invalid_argument("experiment: model '" + model + "' is an alpha template and needs an alpha grid");
            if (g.alpha && *g.alpha < 0.0) throw std::invalid_argument("experiment: alpha must be non-negative");
            (void)spec_at(g);
        }
    }
};

struct RateRow {
    std::string model;
    Estimator estimator = Estimator::PY;
    GridPoint point;
    std::size_t q0 = 0;
    /// C used (explicit or calibrated); NaN for KN rows.
    double C = 0.0;
    /// gamma used; NaN for PY rows.
    double gamma = 0.0;
    Sigma2Mode sigma2_mode = Sigma2Mode::known;
    std::size_t reps = 0;
    std::size_t over = 0;
    std::size_t under = 0;
    std::size_t failures = 0;
    double mean_sigma2 = 0.0;
    double seconds = 0.0;

    double c() const { return static_cast<double>(point.p) / static_cast<double>(point.n); }
    double overest() const { return static_cast<double>(over) / static_cast<double>(reps); }
    double underest() const { return static_cast<double>(under) / static_cast<double>(reps); }
    double misest() const { return static_cast<double>(over + under) / static_cast<double>(reps); }

    static double standard_error(double rate, std::size_t reps) {
        return std::sqrt(rate * (1.0 - rate) / static_cast<double>(reps));
    }
};

struct RateReport {
    std::vector<RateRow> rows;

    const RateRow& find(Estimator e, std::size_t grid_index) const {
        std::size_t seen = 0;
        for (const auto& r : rows)
            if (r.estimator == e && seen++ == grid_index) return r;
        throw std::out_of_range("RateReport: no such row");
    }
};

namespace detail {

struct RepOutcome {
    std::size_t q_hat = 0;
    double sigma2 = 0.0;
    bool failed = false;
};

inline EigenSpectrum draw_spectrum(const ExperimentConfig& cfg, const SpikeSpec& spec, std::size_t n,
                                   std::uint64_t seed, std::size_t leading) {
    if (cfg.sampler == Sampler::gaussian_fast) return sample_leading_eigs_gaussian(spec, n, leading, seed);
    return sample_cov_eigs(generate_observations(spec, n, {seed, cfg.noise_law, cfg.rotate_basis}));
}

}  // namespace detail

/// Runs cfg.reps replications per grid point. Replication r of grid point g
/// draws from derive_seed(master_seed, g, r), so the report does not depend on
/// the worker count. Estimator failures are counted, not thrown.
inline RateReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    RateReport report;
    const std::size_t n_est = cfg.estimators.size();

    for (std::size_t gi = 0; gi < cfg.grid.size(); ++gi) {
        const auto start = std::chrono::steady_clock::now();
        const GridPoint& g = cfg.grid[gi];
        const SpikeSpec spec = cfg.spec_at(g);
        const std::size_t q0 = spec.q0();

        double C = 0.0;
        const bool uses_py = std::find(cfg.estimators.begin(), cfg.estimators.end(), Estimator::PY) != cfg.estimators.end();
        if (uses_py) {
            C = cfg.C ? *cfg.C
                      : calibrate_C(g.p, g.n, cfg.calibration_reps, derive_seed(cfg.master_seed, kCalibrationStream, gi),
                                    cfg.workers)
                            .C_tilde;
        }

        PYSettings py;
        py.C = C;
        py.s_max = cfg.s_max == 0 ? default_s_max(g.p, g.n) : cfg.s_max;
        py.two_gap_rule = cfg.two_gap_rule;
        KNSettings kn;
        kn.gamma = cfg.gamma;
        if (cfg.sigma2_mode == Sigma2Mode::known) {
            py.sigma2 = spec.sigma2();
            kn.sigma2 = spec.sigma2();
        }
        const std::size_t leading = std::min(std::min(g.p, g.n), std::max<std::size_t>(py.s_max + 3, q0 + 12));

        std::vector<detail::RepOutcome> outcomes(cfg.reps * n_est);
        parallel_for(cfg.reps, cfg.workers, [&](std::size_t r) {
            EigenSpectrum eigs;
            try {
                eigs = detail::draw_spectrum(cfg, spec, g.n, derive_seed(cfg.master_seed, gi, r), leading);
            } catch (const std::exception&) {
                for (std::size_t e = 0; e < n_est; ++e) outcomes[r * n_est + e].failed = true;
                return;
            }
            for (std::size_t e = 0; e < n_est; ++e) {
                auto& out = outcomes[r * n_est + e];
                try {
                    const EstimateResult res =
                        cfg.estimators[e] == Estimator::PY ? py_estimate(eigs, py) : kn_estimate(eigs, kn);
                    out.q_hat = res.q_hat;
                    out.sigma2 = res.sigma2_used;
                } catch (const std::exception&) {
                    out.failed = true;
                }
            }
        });
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        for (std::size_t e = 0; e < n_est; ++e) {
            RateRow row;
            row.model = cfg.model;
            row.estimator = cfg.estimators[e];
            row.point = g;
            row.q0 = q0;
            row.C = row.estimator == Estimator::PY ? C : std::nan("");
            row.gamma = row.estimator == Estimator::KN ? cfg.gamma : std::nan("");
            row.sigma2_mode = cfg.sigma2_mode;
            row.reps = cfg.reps;
            row.seconds = seconds;
            double sigma_sum = 0.0;
            for (std::size_t r = 0; r < cfg.reps; ++r) {
                const auto& out = outcomes[r * n_est + e];
                if (out.failed) {
                    ++row.failures;
                    continue;
                }
                if (out.q_hat > q0) ++row.over;
                if (out.q_hat < q0) ++row.under;
                sigma_sum += out.sigma2;
            }
            const std::size_t ok = cfg.reps - row.failures;
            row.mean_sigma2 = ok > 0 ? sigma_sum / static_cast<double>(ok) : std::nan("");
            report.rows.push_back(row);
        }
    }
    return report;
}

/// run_experiment restricted to factor-strength sweeps at a fixed (p, n).
inline RateReport sweep_alpha(const ExperimentConfig& cfg) {
    if (cfg.alpha_multiplicity == 0) throw std::invalid_argument("sweep_alpha: model has no alpha template");
    for (const auto& g : cfg.grid)
        if (!g.alpha) throw std::invalid_argument("sweep_alpha: every grid point needs an alpha value");
    return run_experiment(cfg);
}

/// First alpha at which the misestimation rate of `e` drops to `level`,
/// linearly interpolated between sweep points; nullopt if it never does.
inline std::optional<double> misestimation_crossing(const RateReport& report, Estimator e, double level = 0.5) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& r : report.rows)
        if (r.estimator == e && r.point.alpha) curve.emplace_back(*r.point.alpha, r.misest());
    std::sort(curve.begin(), curve.end());
    for (std::size_t i = 1; i < curve.size(); ++i) {
        const auto [a0, m0] = curve[i - 1];
        const auto [a1, m1] = curve[i];
        if (m0 > level && m1 <= level) return a0 + (m0 - level) / (m0 - m1) * (a1 - a0);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

struct ScalingPoint {
    std::size_t n = 0;
    std::size_t p = 0;
    double noise_gap = 0.0;
    std::optional<double> equal_gap;
    std::optional<double> distinct_gap;
};

struct ScalingReport {
    std::vector<ScalingPoint> points;
    double noise_slope = 0.0;
    std::optional<double> equal_slope;
    /// sigma2 |phi(a'_1) - phi(a'_2)| at the probe's aspect ratio.
    std::optional<double> distinct_limit;
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 matched points");
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

inline constexpr std::uint64_t kScalingStream = 0x5CA1E0ULL;

/// Median gaps over n at fixed c: the first noise gap delta_{q0+1}, the first
/// gap inside a repeated spike, and the gap between the two leading distinct
/// spikes, with log-log slopes against n.
inline ScalingReport rate_scaling_probe(const std::vector<double>& strengths, double sigma2, double c,
                                        const std::vector<std::size_t>& n_grid, std::size_t reps,
                                        std::uint64_t master_seed = 0, Sampler sampler = Sampler::gaussian_fast,
                                        std::size_t workers = 1) {
    if (n_grid.size() < 4) throw std::invalid_argument("rate_scaling_probe: need at least 4 grid points");
    const auto [lo, hi] = std::minmax_element(n_grid.begin(), n_grid.end());
    if (static_cast<double>(*hi) < 8.0 * static_cast<double>(*lo))
        throw std::invalid_argument("rate_scaling_probe: grid must span at least a factor of 8 in n");
    if (reps < 1) throw std::invalid_argument("rate_scaling_probe: reps must be >= 1");

    ExperimentConfig cfg;
    cfg.sampler = sampler;
    ScalingReport out;
    std::vector<double> ns;
    std::vector<double> noise;
    std::vector<double> equal;

    for (std::size_t gi = 0; gi < n_grid.size(); ++gi) {
        const std::size_t n = n_grid[gi];
        const auto p = static_cast<std::size_t>(std::llround(c * static_cast<double>(n)));
        const SpikeSpec spec = SpikeSpec::from_strengths(strengths, sigma2, p);
        const std::size_t q0 = spec.q0();

        std::optional<std::size_t> equal_at;
        std::optional<std::size_t> distinct_at;
        std::size_t offset = 0;
        for (std::size_t k = 0; k < spec.distinct(); ++k) {
            const std::size_t m = spec.spikes()[k].multiplicity;
            if (!equal_at && m >= 2) equal_at = offset;
            if (k == 0 && spec.distinct() >= 2) distinct_at = m - 1;
            offset += m;
        }
        if (gi == 0 && spec.distinct() >= 2)
            out.distinct_limit = sigma2 * std::abs(phi(spec.normalized(0), c) - phi(spec.normalized(1), c));

        const std::size_t leading = std::min(std::min(p, n), q0 + 3);
        std::vector<double> g_noise(reps);
        std::vector<double> g_equal(reps);
        std::vector<double> g_distinct(reps);
        parallel_for(reps, workers, [&](std::size_t r) {
            const EigenSpectrum eigs =
                detail::draw_spectrum(cfg, spec, n, derive_seed(master_seed, kScalingStream + gi, r), leading);
            const auto& v = eigs.values;
            g_noise[r] = v[q0] - v[q0 + 1];
            if (equal_at) g_equal[r] = v[*equal_at] - v[*equal_at + 1];
            if (distinct_at) g_distinct[r] = v[*distinct_at] - v[*distinct_at + 1];
        });

        auto median = [](std::vector<double> x) {
            const std::size_t mid = x.size() / 2;
            std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid), x.end());
            const double upper = x[mid];
            if (x.size() % 2 == 1) return upper;
            return 0.5 * (upper + *std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(mid)));
        };
        ScalingPoint pt;
        pt.n = n;
        pt.p = p;
        pt.noise_gap = median(g_noise);
        if (equal_at) pt.equal_gap = median(g_equal);
        if (distinct_at) pt.distinct_gap = median(g_distinct);
        out.points.push_back(pt);
        ns.push_back(static_cast<double>(n));
        noise.push_back(pt.noise_gap);
        if (pt.equal_gap) equal.push_back(*pt.equal_gap);
    }
    out.noise_slope = loglog_slope(ns, noise);
    if (equal.size() == ns.size()) out.equal_slope = loglog_slope(ns, equal);
    return out;
}

}  // namespace spikecount
