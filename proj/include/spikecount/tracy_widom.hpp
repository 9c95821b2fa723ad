#pragma once

// Tracy-Widom (beta = 1) distribution from a tabulated CDF with monotone
// piecewise-cubic Hermite interpolation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "tw1_knots.hpp"

namespace spikecount {

class TW1Table {
public:
    struct Knot {
        double s;
        double prob;
    };

    explicit TW1Table(std::vector<Knot> knots) : knots_(std::move(knots)) {
        if (knots_.size() < 2) throw DataError("TW1Table: need at least two knots");
        for (std::size_t i = 1; i < knots_.size(); ++i) {
            if (!(knots_[i].s > knots_[i - 1].s) || !(knots_[i].prob > knots_[i - 1].prob))
                throw DataError("TW1Table: knots must be strictly increasing in s and F1(s)");
        }
        if (knots_.front().prob <= 0.0 || knots_.back().prob >= 1.0)
            throw DataError("TW1Table: knot probabilities must lie in (0, 1)");
        compute_slopes();
    }

    /// Table compiled into the library.
    static const TW1Table& builtin() {
        static const TW1Table table = [] {
            std::vector<Knot> k;
            k.reserve(detail::tw1_knots.size());
            for (const auto& [s, f] : detail::tw1_knots) k.push_back({s, f});
            return TW1Table(std::move(k));
        }();
        return table;
    }

    /// Reads "s F1(s)" pairs, one per line; '#' starts a comment.
    static TW1Table load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw DataError("TW1Table: cannot open " + path);
        std::vector<Knot> knots;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            std::istringstream fields(line);
            double s = 0.0;
            double f = 0.0;
            if (!(fields >> s)) continue;
            std::string rest;
            if (!(fields >> f) || (fields >> rest))
                throw DataError(path + ":" + std::to_string(lineno) + ": expected two columns \"s F1(s)\"");
            knots.push_back({s, f});
        }
        return TW1Table(std::move(knots));
    }

    const std::vector<Knot>& knots() const noexcept { return knots_; }

    /// F1(s); saturates to the end-knot probabilities outside the table.
    double cdf(double s) const {
        if (s <= knots_.front().s) return knots_.front().prob;
        if (s >= knots_.back().s) return knots_.back().prob;
        const std::size_t i = segment_of_s(s);
        return eval(i, s);
    }

    /// s(gamma) with F1(s(gamma)) = 1 - gamma, for gamma in (0, 0.5].
    double quantile(double gamma) const {
        if (!(gamma > 0.0) || gamma > 0.5) throw std::out_of_range("tw1_quantile: gamma must lie in (0, 0.5]");
        const double target = 1.0 - gamma;
        if (target < knots_.front().prob || target > knots_.back().prob)
            throw std::out_of_range("tw1_quantile: gamma outside table coverage");
        auto it = std::lower_bound(knots_.begin(), knots_.end(), target,
                                   [](const Knot& k, double v) { return k.prob < v; });
        if (it == knots_.begin()) return knots_.front().s;
        const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
        if (it->prob == target) return it->s;
        // the cubic is monotone on the segment, so bisection is safe
        double lo = knots_[i].s;
        double hi = knots_[i + 1].s;
        for (int iter = 0; iter < 100 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (eval(i, mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }

private:
    std::size_t segment_of_s(double s) const {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), s, [](double v, const Knot& k) { return v < k.s; });
        return static_cast<std::size_t>(it - knots_.begin()) - 1;
    }

    double eval(std::size_t i, double s) const {
        const double h = knots_[i + 1].s - knots_[i].s;
        const double t = (s - knots_[i].s) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * knots_[i].prob + h10 * h * slopes_[i] + h01 * knots_[i + 1].prob + h11 * h * slopes_[i + 1];
    }

    // Fritsch-Butland weighted harmonic mean slopes; shape-preserving.
    void compute_slopes() {
        const std::size_t m = knots_.size();
        std::vector<double> h(m - 1);
        std::vector<double> delta(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            h[i] = knots_[i + 1].s - knots_[i].s;
            delta[i] = (knots_[i + 1].prob - knots_[i].prob) / h[i];
        }
        slopes_.assign(m, 0.0);
        for (std::size_t i = 1; i + 1 < m; ++i) {
            const double w1 = 2 * h[i] + h[i - 1];
            const double w2 = h[i] + 2 * h[i - 1];
            slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
        auto end_slope = [](double h0, double h1, double d0, double d1) {
            double d = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
            if (d * d0 <= 0.0) return 0.0;
            if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3 * d0)) return 3 * d0;
            return d;
        };
        if (m == 2) {
            slopes_[0] = slopes_[1] = delta[0];
        } else {
            slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            slopes_[m - 1] = end_slope(h[m - 2], h[m - 3], delta[m - 2], delta[m - 3]);
        }
    }

    std::vector<Knot> knots_;
    std::vector<double> slopes_;
};

inline double tw1_quantile(double gamma) { return TW1Table::builtin().quantile(gamma); }
inline double tw1_cdf(double s) { return TW1Table::builtin().cdf(s); }

}  // namespace spikecount
