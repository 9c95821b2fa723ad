#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <spikecount/lanczos.hpp>
#include <spikecount/simulate.hpp>

#include "oracles/brute_force.hpp"

using namespace spikecount;

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double stderr_of_mean(const std::vector<double>& v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / (v.size() - 1) / v.size());
}

}  // namespace

TEST(SampleCovEigs, RankOne) {
    Eigen::MatrixXd x(1, 2);
    x << 3.0, 4.0;
    const auto e = sample_cov_eigs(x);
    ASSERT_EQ(e.values.size(), 2u);
    EXPECT_NEAR(e.values[0], 25.0, 1e-12);
    EXPECT_EQ(e.values[1], 0.0);
    EXPECT_NEAR(e.trace, 25.0, 1e-12);
}

TEST(SampleCovEigs, OrthogonalRows) {
    const std::vector<double> v{7.0, 3.0, 2.5, 0.5};
    const int n = 4;
    const int p = 6;
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, p);
    // rows in shuffled axis order so the descending sort is exercised
    const int axis[] = {3, 0, 5, 1};
    for (int i = 0; i < n; ++i) x(i, axis[i]) = std::sqrt(n * v[i]);
    const auto e = sample_cov_eigs(x);
    ASSERT_EQ(e.values.size(), 6u);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.values[i], v[i], 1e-12);
    EXPECT_EQ(e.values[4], 0.0);
    EXPECT_EQ(e.values[5], 0.0);
}

TEST(SampleCovEigs, RejectsNonFinite) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 3);
    x(1, 2) = std::nan("");
    EXPECT_THROW(sample_cov_eigs(x), DataError);
}

TEST(SampleCovEigs, GramTrickMatchesDirectDecomposition) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dim(1, 30);
    for (int t = 0; t < 100; ++t) {
        const int n = dim(rng);
        const int p = dim(rng);
        const SpikeSpec spec = p > 2 ? SpikeSpec({{4.0, 1}}, 1.0, p) : SpikeSpec({}, 1.0, p);
        Eigen::MatrixXd x = n >= 2 ? generate_observations(spec, n, {rng(), NoiseLaw::gaussian, true})
                                   : Eigen::MatrixXd::Random(n, p);
        const auto fast = sample_cov_eigs(x);
        const auto direct = oracle::dense_cov_eigs(x);
        ASSERT_EQ(fast.values.size(), direct.size());
        for (std::size_t i = 0; i < direct.size(); ++i)
            EXPECT_NEAR(fast.values[i], std::max(direct[i], 0.0), 1e-8) << "n=" << n << " p=" << p << " i=" << i;
        if (p > n) {
            for (int i = n; i < p; ++i) EXPECT_EQ(fast.values[static_cast<std::size_t>(i)], 0.0);
        }
    }
}

TEST(SampleCovEigs, TraceIdentity) {
    for (auto [p, n] : {std::pair{50, 20}, std::pair{20, 50}, std::pair{40, 40}}) {
        const SpikeSpec spec({{6.0, 1}, {2.0, 2}}, 1.5, p);
        const Eigen::MatrixXd x = generate_observations(spec, n, {static_cast<std::uint64_t>(p * n)});
        const auto e = sample_cov_eigs(x);
        const double direct = x.squaredNorm() / n;
        EXPECT_NEAR(std::accumulate(e.values.begin(), e.values.end(), 0.0), direct, 1e-8 * direct);
        EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end(), std::greater<>()));
        EXPECT_GE(e.values.back(), 0.0);
    }
}

TEST(GenerateObservations, DeterministicForSeed) {
    const SpikeSpec spec({{10.0, 1}, {5.0, 1}}, 1.0, 40);
    for (bool rotate : {false, true}) {
        for (auto law : {NoiseLaw::gaussian, NoiseLaw::symmetric_subexponential}) {
            const GeneratorSettings s{1234, law, rotate};
            const Eigen::MatrixXd a = generate_observations(spec, 30, s);
            const Eigen::MatrixXd b = generate_observations(spec, 30, s);
            EXPECT_TRUE(a == b);
            const Eigen::MatrixXd c = generate_observations(spec, 30, {1235, law, rotate});
            EXPECT_FALSE(a == c);
        }
    }
}

TEST(GenerateObservations, Preconditions) {
    const SpikeSpec spec({{1.0, 1}}, 1.0, 4);
    EXPECT_THROW(generate_observations(spec, 1, {}), std::invalid_argument);
    EXPECT_THROW(SpikeSpec({{1.0, 4}}, 1.0, 4), std::invalid_argument);
}

TEST(GenerateObservations, WhiteColumnMeansVanish) {
    const SpikeSpec white({}, 1.0, 8);
    const Eigen::MatrixXd x = generate_observations(white, 20000, {5});
    const Eigen::VectorXd means = x.colwise().mean();
    EXPECT_LT(means.cwiseAbs().maxCoeff(), 4.0 / std::sqrt(20000.0) * 1.5);
    const Eigen::VectorXd var = x.colwise().squaredNorm() / 20000.0;
    for (int j = 0; j < 8; ++j) EXPECT_NEAR(var(j), 1.0, 0.05);
}

TEST(GenerateObservations, PopulationCovarianceOfModelB) {
    // Model B inputs: strengths (10, 5), sigma2 = 1
    const SpikeSpec spec({{10.0, 1}, {5.0, 1}}, 1.0, 10);
    const int n = 40000;
    const Eigen::MatrixXd x = generate_observations(spec, n, {17});
    const Eigen::MatrixXd s = x.transpose() * x / n;
    const auto pop = spec.population_eigenvalues();
    for (int j = 0; j < 10; ++j) EXPECT_NEAR(s(j, j), pop[j], 5.0 * pop[j] * std::sqrt(2.0 / n));
    EXPECT_NEAR(s(0, 1), 0.0, 0.15);
}

TEST(GenerateObservations, LaplaceNoiseHasUnitVarianceAndHeavyTails) {
    const SpikeSpec white({}, 1.0, 4);
    const int n = 100000;
    const Eigen::MatrixXd x = generate_observations(white, n, {3, NoiseLaw::symmetric_subexponential, false});
    for (int j = 0; j < 4; ++j) {
        const double m2 = x.col(j).squaredNorm() / n;
        const double m4 = x.col(j).array().pow(4).sum() / n;
        EXPECT_NEAR(m2, 1.0, 0.02);
        EXPECT_NEAR(m4 / (m2 * m2), 6.0, 0.5);  // Laplace kurtosis
        EXPECT_NEAR(x.col(j).mean(), 0.0, 0.02);
    }
}

TEST(GenerateObservations, RotationPreservesSpectrumLaw) {
    // same draw, rotated basis: sample eigenvalues follow the same law; the
    // population trace is basis-free, so the sample trace matches in mean
    const SpikeSpec spec({{8.0, 1}}, 1.0, 20);
    std::vector<double> plain, rotated;
    for (int r = 0; r < 300; ++r) {
        plain.push_back(sample_cov_eigs(generate_observations(spec, 40, {static_cast<std::uint64_t>(r)})).values[0]);
        rotated.push_back(
            sample_cov_eigs(generate_observations(spec, 40, {static_cast<std::uint64_t>(r + 7777), NoiseLaw::gaussian, true}))
                .values[0]);
    }
    const double se = std::hypot(stderr_of_mean(plain), stderr_of_mean(rotated));
    EXPECT_LT(std::abs(mean(plain) - mean(rotated)), 4.0 * se);
}

TEST(SampleCovEigs, WhiteTopEigenvalueNearBulkEdge) {
    std::vector<double> top;
    for (int r = 0; r < 100; ++r) {
        const SpikeSpec white({}, 1.0, 200);
        top.push_back(sample_cov_eigs(generate_observations(white, 200, {static_cast<std::uint64_t>(1000 + r)})).values[0]);
    }
    std::nth_element(top.begin(), top.begin() + 50, top.end());
    EXPECT_GT(top[50], 3.6);
    EXPECT_LT(top[50], 4.2);
}

TEST(WishartTopGap, NonNegative) {
    for (std::uint64_t s = 0; s < 20; ++s) EXPECT_GE(wishart_top_gap(30, 20, s), 0.0);
    EXPECT_THROW(wishart_top_gap(1, 20, 0), std::invalid_argument);
}

TEST(Lanczos, MatchesDenseSolver) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> normal;
    for (int dim : {10, 60, 200}) {
        Eigen::MatrixXd g(dim, dim + 5);
        for (int i = 0; i < g.size(); ++i) g.data()[i] = normal(rng);
        const Eigen::MatrixXd a = g * g.transpose();
        Engine eng(dim);
        const auto top = lanczos_leading([&](const Eigen::VectorXd& in, Eigen::VectorXd& out) { out = a * in; },
                                         dim, 6, eng);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
        for (int i = 0; i < 6; ++i) EXPECT_NEAR(top[i], es.eigenvalues()(dim - 1 - i), 1e-8 * es.eigenvalues()(dim - 1));
    }
}

// The bidiagonal sampler must reproduce the law of the dense pipeline, in both
// the p - q0 >= n and p - q0 < n regimes.
TEST(GaussianFastSampler, MatchesDenseLaw) {
    struct Case {
        std::size_t p, n;
        SpikeSpec spec;
    };
    const std::vector<Case> cases{
        {80, 40, SpikeSpec({{12.0, 1}, {6.0, 2}}, 1.0, 80)},
        {30, 60, SpikeSpec({{4.0, 1}}, 2.0, 30)},
        {50, 50, SpikeSpec({}, 1.0, 50)},
    };
    const int reps = 400;
    for (const auto& cs : cases) {
        const std::size_t q0 = cs.spec.q0();
        std::vector<std::vector<double>> dense(4), fast(4);
        for (int r = 0; r < reps; ++r) {
            const auto a = sample_cov_eigs(generate_observations(cs.spec, cs.n, {static_cast<std::uint64_t>(r)}));
            const auto b = sample_leading_eigs_gaussian(cs.spec, cs.n, q0 + 3, 100000 + r);
            ASSERT_EQ(b.values.size(), q0 + 3);
            EXPECT_FALSE(b.complete());
            for (auto [e, out] : {std::pair{&a, &dense}, std::pair{&b, &fast}}) {
                (*out)[0].push_back(e->values[0]);
                (*out)[1].push_back(e->values[q0]);
                (*out)[2].push_back(e->values[q0] - e->values[q0 + 1]);
                (*out)[3].push_back(e->trace);
            }
        }
        for (int s = 0; s < 4; ++s) {
            const double se = std::hypot(stderr_of_mean(dense[s]), stderr_of_mean(fast[s]));
            EXPECT_LT(std::abs(mean(dense[s]) - mean(fast[s])), 4.0 * se)
                << "p=" << cs.p << " n=" << cs.n << " statistic " << s;
        }
    }
}

TEST(GaussianFastSampler, DeterministicAndSorted) {
    const SpikeSpec spec({{5.0, 2}}, 1.0, 400);
    const auto a = sample_leading_eigs_gaussian(spec, 400, 8, 42);
    const auto b = sample_leading_eigs_gaussian(spec, 400, 8, 42);
    EXPECT_EQ(a.values, b.values);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_TRUE(std::is_sorted(a.values.begin(), a.values.end(), std::greater<>()));
    // leading spikes near phi(6, 1) = 7.2
    EXPECT_NEAR(a.values[0], 7.2, 1.5);
    EXPECT_NEAR(a.values[2], 4.0, 0.3);
}

TEST(EigenSpectrum, TailSums) {
    const auto e = EigenSpectrum::from_values({1.0, 5.0, 2.0, 2.0}, 10);
    EXPECT_EQ(e.values, (std::vector<double>{5.0, 2.0, 2.0, 1.0}));
    EXPECT_DOUBLE_EQ(e.tail_sum(0), 10.0);
    EXPECT_DOUBLE_EQ(e.tail_sum(1), 5.0);
    EXPECT_DOUBLE_EQ(e.tail_sum(4), 0.0);

    EigenSpectrum partial;
    partial.values = {5.0, 2.0};
    partial.p = 4;
    partial.n = 10;
    partial.trace = 10.0;
    EXPECT_DOUBLE_EQ(partial.tail_sum(1), 5.0);
    EXPECT_THROW(partial.tail_sum(3), std::invalid_argument);
    EXPECT_THROW(EigenSpectrum::from_values({1.0, -1.0}, 3), std::invalid_argument);
}
