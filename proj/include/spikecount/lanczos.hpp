#pragma once

// Leading eigenvalues of a symmetric positive semi-definite operator by
// Lanczos iteration with full reorthogonalization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "rng.hpp"

namespace spikecount {

struct LanczosOptions {
    /// Ritz residual target relative to the largest Ritz value.
    double tolerance = 1e-10;
    std::size_t check_every = 20;
    std::size_t max_steps = 0;  // 0: dimension of the operator
};

/// Returns the k largest eigenvalues (descending) of the dim x dim operator
/// `apply(in, out)`. Throws NumericalError if the residual target is missed.
template <typename Apply>
std::vector<double> lanczos_leading(Apply&& apply, std::size_t dim, std::size_t k, Engine& rng,
                                    const LanczosOptions& opt = {}) {
    using Eigen::Index;
    using Eigen::VectorXd;
    k = std::min(k, dim);
    if (k == 0) return {};
    const std::size_t max_steps = opt.max_steps == 0 ? dim : std::min(opt.max_steps, dim);

    std::normal_distribution<double> normal;
    Eigen::MatrixXd basis(static_cast<Index>(dim), static_cast<Index>(std::min(max_steps, 2 * k + 64)));
    std::vector<double> alpha;
    std::vector<double> beta;

    VectorXd v(static_cast<Index>(dim));
    for (Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    v.normalize();
    VectorXd w(v.size());

    for (std::size_t m = 0; m < max_steps; ++m) {
        if (static_cast<Index>(m) == basis.cols())
            basis.conservativeResize(Eigen::NoChange, std::min<Index>(2 * basis.cols(), static_cast<Index>(max_steps)));
        basis.col(static_cast<Index>(m)) = v;
        apply(v, w);
        const double a = v.dot(w);
        alpha.push_back(a);

        // two passes of classical Gram-Schmidt against the whole basis
        auto active = basis.leftCols(static_cast<Index>(m + 1));
        for (int pass = 0; pass < 2; ++pass) w.noalias() -= active * (active.transpose() * w);
        const double b = w.norm();

        const bool breakdown = b <= 1e-14 * std::max(1.0, std::abs(alpha.front()));
        const bool last = m + 1 == max_steps || breakdown;
        const bool check = last || (m + 1 >= k + 8 && (m + 1) % opt.check_every == 0);
        if (check) {
            Eigen::VectorXd diag = Eigen::Map<const VectorXd>(alpha.data(), static_cast<Index>(alpha.size()));
            Eigen::VectorXd sub = Eigen::Map<const VectorXd>(beta.data(), static_cast<Index>(beta.size()));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
            const auto& theta = tri.eigenvalues();
            const auto& s = tri.eigenvectors();
            const Index size = theta.size();
            const std::size_t have = std::min<std::size_t>(k, static_cast<std::size_t>(size));
            const double scale = std::max(std::abs(theta(size - 1)), 1e-300);
            // an invariant subspace smaller than k cannot deliver the remaining eigenvalues
            bool converged = have == k;
            for (std::size_t j = 0; j < have && converged; ++j) {
                const Index col = size - 1 - static_cast<Index>(j);
                if (!breakdown && b * std::abs(s(size - 1, col)) > opt.tolerance * scale) converged = false;
            }
            if (converged || last) {
                if (!converged)
                    throw NumericalError("lanczos_leading: Ritz values did not converge");
                std::vector<double> ritz;
                for (std::size_t j = 0; j < have; ++j) ritz.push_back(theta(size - 1 - static_cast<Index>(j)));
                return ritz;
            }
        }
        if (breakdown) break;
        beta.push_back(b);
        v = w / b;
    }
    throw NumericalError("lanczos_leading: exhausted iteration budget");
}

}  // namespace spikecount
