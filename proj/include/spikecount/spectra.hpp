#pragma once

// Population spectra of the spiked covariance model and the deterministic
// limits of their sample eigenvalues.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikecount {

/// One distinct factor strength and how many times it repeats.
struct Spike {
    double strength = 0.0;
    std::size_t multiplicity = 1;

    friend bool operator==(const Spike&, const Spike&) = default;
};

/// Dimension and sample size. The ratio is always recomputed from p and n.
class AspectRatio {
public:
    AspectRatio(std::size_t p, std::size_t n) : p_(p), n_(n) {
        if (p == 0 || n == 0) throw std::invalid_argument("AspectRatio: p and n must be positive");
    }

    std::size_t p() const noexcept { return p_; }
    std::size_t n() const noexcept { return n_; }
    double c() const noexcept { return static_cast<double>(p_) / static_cast<double>(n_); }

private:
    std::size_t p_;
    std::size_t n_;
};

/// Population covariance spectrum: sigma2 * (alpha'_1, ..., alpha'_1, ..., 1, ..., 1)
/// with alpha'_k = strength_k / sigma2 + 1 repeated multiplicity_k times.
class SpikeSpec {
public:
    SpikeSpec(std::vector<Spike> spikes, double sigma2, std::size_t p)
        : spikes_(std::move(spikes)), sigma2_(sigma2), p_(p) {
        if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_))
            throw std::invalid_argument("SpikeSpec: sigma2 must be positive and finite");
        if (p_ == 0) throw std::invalid_argument("SpikeSpec: p must be positive");
        for (std::size_t k = 0; k < spikes_.size(); ++k) {
            const auto& s = spikes_[k];
            if (!(s.strength > 0.0) || !std::isfinite(s.strength))
                throw std::invalid_argument("SpikeSpec: factor strengths must be positive");
            if (s.multiplicity == 0)
                throw std::invalid_argument("SpikeSpec: multiplicities must be positive");
            if (k > 0 && !(s.strength < spikes_[k - 1].strength))
                throw std::invalid_argument("SpikeSpec: strengths must be strictly decreasing");
        }
        if (q0() >= p_)
            throw std::invalid_argument("SpikeSpec: number of factors q0 = " + std::to_string(q0()) +
                                        " must be below p = " + std::to_string(p_));
    }

    /// Groups equal strengths into multiplicities, drops zeros and sorts descending.
    static SpikeSpec from_strengths(std::vector<double> strengths, double sigma2, std::size_t p) {
        std::vector<Spike> spikes;
        std::sort(strengths.begin(), strengths.end(), std::greater<>());
        for (double a : strengths) {
            if (a < 0.0) throw std::invalid_argument("SpikeSpec: negative factor strength");
            if (a == 0.0) continue;
            if (!spikes.empty() && spikes.back().strength == a)
                ++spikes.back().multiplicity;
            else
                spikes.push_back({a, 1});
        }
        return SpikeSpec(std::move(spikes), sigma2, p);
    }

    const std::vector<Spike>& spikes() const noexcept { return spikes_; }
    double sigma2() const noexcept { return sigma2_; }
    std::size_t p() const noexcept { return p_; }
    std::size_t distinct() const noexcept { return spikes_.size(); }

    std::size_t q0() const noexcept {
        std::size_t q = 0;
        for (const auto& s : spikes_) q += s.multiplicity;
        return q;
    }

    double normalized(std::size_t k) const { return spikes_.at(k).strength / sigma2_ + 1.0; }

    /// Population eigenvalues in descending order, length p.
    std::vector<double> population_eigenvalues() const {
        std::vector<double> out;
        out.reserve(p_);
        for (const auto& s : spikes_)
            out.insert(out.end(), s.multiplicity, s.strength + sigma2_);
        out.resize(p_, sigma2_);
        return out;
    }

private:
    std::vector<Spike> spikes_;
    double sigma2_;
    std::size_t p_;
};

/// phi(a) = a + c a / (a - 1): almost-sure limit of a sample spike eigenvalue
/// (in units of sigma2) for a normalized population spike a > 1 + sqrt(c).
inline double phi(double alpha_prime, double c) {
    if (alpha_prime == 1.0) throw std::domain_error("phi: pole at alpha' = 1");
    return alpha_prime + c * alpha_prime / (alpha_prime - 1.0);
}

/// Inverse of phi on the branch alpha' >= 1 + sqrt(c): the larger root of
/// a^2 + (c - 1 - m) a + m = 0.
inline double invert_phi(double m, double c) {
    if (!(c > 0.0)) throw std::domain_error("invert_phi: c must be positive");
    const double edge = (1.0 + std::sqrt(c)) * (1.0 + std::sqrt(c));
    if (m < edge) throw std::domain_error("invert_phi: value below the bulk edge (1+sqrt(c))^2");
    const double b = m + 1.0 - c;
    const double disc = std::max(0.0, b * b - 4.0 * m);
    return 0.5 * (b + std::sqrt(disc));
}

/// Right edge sigma2 (1 + sqrt(c))^2 of the Marchenko-Pastur bulk.
inline double bulk_edge(double sigma2, double c) {
    const double r = 1.0 + std::sqrt(c);
    return sigma2 * r * r;
}

/// Finite-size scaling constant (1 + sqrt(p/n)) (1 + sqrt(n/p))^(1/3)
/// of the largest white Wishart eigenvalue.
inline double beta_np(std::size_t n, std::size_t p) {
    if (n == 0 || p == 0) throw std::invalid_argument("beta_np: n and p must be positive");
    const double ratio = static_cast<double>(p) / static_cast<double>(n);
    return (1.0 + std::sqrt(ratio)) * std::cbrt(1.0 + std::sqrt(1.0 / ratio));
}

/// Per distinct spike: does it separate from the bulk (alpha > sigma2 sqrt(c))?
inline std::vector<bool> detectable(const SpikeSpec& spec, double c) {
    std::vector<bool> out;
    out.reserve(spec.distinct());
    const double threshold = spec.sigma2() * std::sqrt(c);
    for (const auto& s : spec.spikes()) out.push_back(s.strength > threshold);
    return out;
}

}  // namespace spikecount
