#pragma once

// Estimators applied to a user-supplied observation matrix.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "calibrate.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "io.hpp"
#include "simulate.hpp"

namespace spikecount {

struct FileEstimateSettings {
    bool run_py = true;
    bool run_kn = true;
    PYSettings py;
    KNSettings kn;
    /// Calibrate C from (p, n) instead of using py.C.
    bool auto_C = true;
    std::size_t calibration_reps = 500;
    std::uint64_t seed = 0;
    /// Subtract column means before forming the sample covariance.
    bool center = false;
    std::size_t workers = 1;
};

struct FileEstimate {
    std::size_t p = 0;
    std::size_t n = 0;
    double C = 0.0;
    std::optional<EstimateResult> py;
    std::optional<EstimateResult> kn;
};

inline FileEstimate estimate_matrix(Eigen::MatrixXd x, const FileEstimateSettings& settings) {
    if (x.rows() < 2)
        throw DataError("need at least n >= 2 observations (rows), got " + std::to_string(x.rows()));
    if (settings.center) x.rowwise() -= x.colwise().mean();
    const EigenSpectrum eigs = sample_cov_eigs(x);

    FileEstimate out;
    out.p = eigs.p;
    out.n = eigs.n;
    if (settings.run_py) {
        PYSettings py = settings.py;
        if (settings.auto_C) py.C = calibrate_C(eigs.p, eigs.n, settings.calibration_reps, settings.seed, settings.workers).C_tilde;
        out.C = py.C;
        out.py = py_estimate(eigs, py);
    }
    if (settings.run_kn) out.kn = kn_estimate(eigs, settings.kn);
    return out;
}

inline FileEstimate estimate_file(const std::string& path, const FileEstimateSettings& settings) {
    return estimate_matrix(read_matrix_csv(path), settings);
}

inline Json file_estimate_to_json(const FileEstimate& f) {
    Json j;
    j["p"] = f.p;
    j["n"] = f.n;
    if (f.py) {
        j["PY"] = result_to_json(*f.py);
        j["PY"]["C"] = f.C;
    }
    if (f.kn) j["KN"] = result_to_json(*f.kn);
    return j;
}

}  // namespace spikecount
