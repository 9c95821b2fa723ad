#pragma once

// Synthetic observations from the strict factor model x = A f + sigma n and
// the descending eigenvalues of their sample covariance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "lanczos.hpp"
#include "rng.hpp"
#include "spectra.hpp"

namespace spikecount {

/// Descending sample covariance eigenvalues.
///
/// `values` is either the complete spectrum (length p, padded with exact
/// zeros beyond rank min(p, n)) or only the leading eigenvalues. `trace`
/// always holds the sum of all p eigenvalues, so tail sums stay available for
/// noise estimation when only the leading part was computed.
struct EigenSpectrum {
    std::vector<double> values;
    std::size_t p = 0;
    std::size_t n = 0;
    double trace = 0.0;

    bool complete() const noexcept { return values.size() == p; }
    double c() const noexcept { return static_cast<double>(p) / static_cast<double>(n); }

    /// Sum of eigenvalues with (0-based) index >= q.
    double tail_sum(std::size_t q) const {
        if (q > p) throw std::invalid_argument("EigenSpectrum::tail_sum: q exceeds p");
        if (complete()) {
            double s = 0.0;
            for (std::size_t i = p; i-- > q;) s += values[i];
            return s;
        }
        if (q > values.size()) throw std::invalid_argument("EigenSpectrum::tail_sum: q beyond leading values");
        double head = 0.0;
        for (std::size_t i = 0; i < q; ++i) head += values[i];
        return std::max(0.0, trace - head);
    }

    /// Builds a complete spectrum from arbitrary-order values; tiny negative
    /// roundoff is clamped to zero.
    static EigenSpectrum from_values(std::vector<double> values, std::size_t n) {
        if (values.empty()) throw std::invalid_argument("EigenSpectrum: empty spectrum");
        if (n == 0) throw std::invalid_argument("EigenSpectrum: n must be positive");
        for (double& v : values) {
            if (!std::isfinite(v)) throw DataError("EigenSpectrum: non-finite eigenvalue");
            if (v < 0.0) {
                if (v < -1e-8 * (1.0 + std::abs(values.front())))
                    throw std::invalid_argument("EigenSpectrum: negative eigenvalue");
                v = 0.0;
            }
        }
        std::sort(values.begin(), values.end(), std::greater<>());
        EigenSpectrum out;
        out.p = values.size();
        out.n = n;
        out.trace = std::accumulate(values.begin(), values.end(), 0.0);
        out.values = std::move(values);
        return out;
    }
};

enum class NoiseLaw { gaussian, symmetric_subexponential };

struct GeneratorSettings {
    std::uint64_t seed = 0;
    NoiseLaw noise_law = NoiseLaw::gaussian;
    bool rotate_basis = false;
};

namespace detail {

inline double draw_noise(NoiseLaw law, Engine& rng, std::normal_distribution<double>& normal,
                         std::exponential_distribution<double>& expo) {
    if (law == NoiseLaw::gaussian) return normal(rng);
    // Laplace(0, 1/sqrt(2)) has unit variance
    const double e = expo(rng) * 0.70710678118654752440;
    return (rng() & 1U) ? e : -e;
}

/// Haar-distributed orthogonal matrix: Q of a Gaussian QR with the sign of R's diagonal fixed.
inline Eigen::MatrixXd haar_orthogonal(std::size_t p, Engine& rng) {
    const auto dim = static_cast<Eigen::Index>(p);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const auto& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j)
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    return q;
}

}  // namespace detail

/// n x p matrix whose rows are i.i.d. x(t) = A f(t) + sigma n(t). Factors are
/// standard normal; loadings sit on the first q0 canonical axes (or on a
/// seeded Haar-random basis when rotate_basis is set).
inline Eigen::MatrixXd generate_observations(const SpikeSpec& spec, std::size_t n,
                                             const GeneratorSettings& settings) {
    if (n < 2) throw std::invalid_argument("generate_observations: need n >= 2 observations");
    const std::size_t p = spec.p();
    Engine rng(settings.seed);
    std::normal_distribution<double> normal;
    std::exponential_distribution<double> expo(1.0);
    const double sigma = std::sqrt(spec.sigma2());

    std::vector<double> loading;
    for (const auto& s : spec.spikes()) loading.insert(loading.end(), s.multiplicity, std::sqrt(s.strength));

    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(p);
    Eigen::MatrixXd x(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) x(i, j) = sigma * detail::draw_noise(settings.noise_law, rng, normal, expo);
    }
    for (std::size_t k = 0; k < loading.size(); ++k) {
        const auto j = static_cast<Eigen::Index>(k);
        for (Eigen::Index i = 0; i < rows; ++i) x(i, j) += loading[k] * normal(rng);
    }
    if (settings.rotate_basis) {
        const Eigen::MatrixXd w = detail::haar_orthogonal(p, rng);
        x = x * w.transpose();
    }
    return x;
}

/// Eigenvalues of S = X^T X / n through the smaller of the two Gram matrices,
/// padded with exact zeros to length p.
inline EigenSpectrum sample_cov_eigs(const Eigen::Ref<const Eigen::MatrixXd>& x) {
    const auto n = x.rows();
    const auto p = x.cols();
    if (n < 1 || p < 1) throw std::invalid_argument("sample_cov_eigs: empty observation matrix");
    if (!x.allFinite()) throw DataError("sample_cov_eigs: observation matrix has non-finite entries");

    const Eigen::Index m = std::min(n, p);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
    const double scale = 1.0 / static_cast<double>(n);
    if (n < p)
        gram.selfadjointView<Eigen::Lower>().rankUpdate(x, scale);
    else
        gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), scale);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.compute(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("sample_cov_eigs: eigensolver failed");

    std::vector<double> values(static_cast<std::size_t>(p), 0.0);
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index i = 0; i < m; ++i) values[static_cast<std::size_t>(i)] = ev(m - 1 - i);
    return EigenSpectrum::from_values(std::move(values), static_cast<std::size_t>(n));
}

/// lambda_1 - lambda_2 of one white (sigma2 = 1) sample covariance draw.
inline double wishart_top_gap(std::size_t p, std::size_t n, std::uint64_t seed) {
    if (p < 2 || n < 2) throw std::invalid_argument("wishart_top_gap: need p, n >= 2");
    const SpikeSpec white({}, 1.0, p);
    const auto eigs = sample_cov_eigs(generate_observations(white, n, {seed, NoiseLaw::gaussian, false}));
    return eigs.values[0] - eigs.values[1];
}

/// Leading eigenvalues of the sample covariance of Gaussian data without
/// forming the n x p observation matrix.
///
/// The white columns enter only through X2 X2^T, whose spectrum equals that of
/// B^T B for a bidiagonal B with independent chi entries (Golub-Kahan
/// reduction of a Gaussian matrix). The spike columns are isotropic Gaussians
/// in R^n independent of X2, so they are unchanged in law by the orthogonal
/// factors of that reduction. The n x n operator B^T B + Y Y^T therefore has
/// exactly the law of the Gram matrix; its top eigenvalues come from Lanczos.
/// Valid for Gaussian noise and factors only; rotate_basis has no effect on
/// the law.
inline EigenSpectrum sample_leading_eigs_gaussian(const SpikeSpec& spec, std::size_t n, std::size_t leading,
                                                  std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_leading_eigs_gaussian: need n >= 2");
    const std::size_t p = spec.p();
    const std::size_t r = spec.q0();
    const std::size_t white = p - r;
    Engine rng(seed);
    std::normal_distribution<double> normal;
    auto chi = [&rng](std::size_t dof) {
        if (dof == 0) return 0.0;
        std::chi_squared_distribution<double> c2(static_cast<double>(dof));
        return std::sqrt(c2(rng));
    };

    // upper bidiagonal U of size b x b, diag d, superdiag e
    const std::size_t b = std::min(white, n);
    std::vector<double> d(b);
    std::vector<double> e(b > 0 ? b - 1 : 0);
    const std::size_t tall = std::max(white, n);
    for (std::size_t i = 0; i < b; ++i) d[i] = chi(tall - i);
    for (std::size_t i = 0; i + 1 < b; ++i) e[i] = chi(b - 1 - i);
    // white >= n: X2 X2^T ~ U^T U; white < n: X2 X2^T ~ diag(U U^T, 0)
    const bool gram_of_columns = white >= n;

    const auto rows = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd y(rows, static_cast<Eigen::Index>(r));
    {
        Eigen::Index col = 0;
        for (const auto& s : spec.spikes()) {
            const double sd = std::sqrt(s.strength + spec.sigma2());
            for (std::size_t m = 0; m < s.multiplicity; ++m, ++col)
                for (Eigen::Index i = 0; i < rows; ++i) y(i, col) = sd * normal(rng);
        }
    }

    double trace = y.squaredNorm();
    {
        double t = 0.0;
        for (double v : d) t += v * v;
        for (double v : e) t += v * v;
        trace += spec.sigma2() * t;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    const double sigma2 = spec.sigma2();
    std::vector<double> tmp(b);

    auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
        out.setZero(in.size());
        if (gram_of_columns) {
            // U^T U in: tmp = U in, out = U^T tmp
            for (std::size_t i = 0; i < b; ++i)
                tmp[i] = d[i] * in(static_cast<Eigen::Index>(i)) + (i + 1 < b ? e[i] * in(static_cast<Eigen::Index>(i + 1)) : 0.0);
            for (std::size_t i = 0; i < b; ++i)
                out(static_cast<Eigen::Index>(i)) = d[i] * tmp[i] + (i > 0 ? e[i - 1] * tmp[i - 1] : 0.0);
        } else {
            // U U^T on the first b coordinates: tmp = U^T in, out = U tmp
            for (std::size_t i = 0; i < b; ++i)
                tmp[i] = d[i] * in(static_cast<Eigen::Index>(i)) + (i > 0 ? e[i - 1] * in(static_cast<Eigen::Index>(i - 1)) : 0.0);
            for (std::size_t i = 0; i < b; ++i)
                out(static_cast<Eigen::Index>(i)) = d[i] * tmp[i] + (i + 1 < b ? e[i] * tmp[i + 1] : 0.0);
        }
        out *= sigma2;
        if (r > 0) out.noalias() += y * (y.transpose() * in);
        out *= inv_n;
    };

    const std::size_t rank = std::min(p, n);
    const std::size_t k = std::min(leading, rank);
    EigenSpectrum eigs;
    eigs.values = lanczos_leading(apply, n, k, rng);
    for (double& v : eigs.values) v = std::max(v, 0.0);
    eigs.p = p;
    eigs.n = n;
    eigs.trace = trace * inv_n;
    return eigs;
}

}  // namespace spikecount
