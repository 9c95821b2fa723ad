#pragma once

// JSON forms of experiment configurations, model presets and single
// estimates.
//
// Experiment document:
//   {
//     "model": "B"                                   (preset name)
//            | {"strengths": [10, 5], "alpha_multiplicity": 0, "sigma2": 1},
//     "grid": {"pairs": [[300, 300], [3000, 300]]}   (explicit (p, n))
//           | {"c": 10, "n": [150, 300, 500]}        (p = round(c n))
//           | {"p": 2000, "n": 500, "alpha": [0.5, 1.0]}  (alpha sweep),
//     "estimators": ["PY", "KN"], "C": 11 | "auto", "gamma": 0.005,
//     "sigma2_mode": "known" | "estimated", "reps": 500, "master_seed": 0,
//     "workers": 1, "sampler": "dense" | "gaussian_fast",
//     "noise_law": "gaussian" | "symmetric_subexponential",
//     "rotate_basis": false, "two_gap_rule": true, "s_max": 0,
//     "calibration_reps": 500
//   }
// Only "model" and "grid" are required; for alpha-template presets the
// sweep grid may omit p and n.

#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "estimators.hpp"
#include "harness.hpp"
#include "presets.hpp"

namespace spikecount {

using Json = nlohmann::json;

namespace detail {

inline void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
}

template <typename T>
T get_or(const Json& obj, const char* key, T fallback) {
    return obj.contains(key) ? obj.at(key).get<T>() : fallback;
}

}  // namespace detail

inline Json preset_to_json(const ModelPreset& m) {
    Json j;
    j["name"] = m.name;
    j["strengths"] = m.strengths;
    j["alpha_multiplicity"] = m.alpha_multiplicity;
    j["c"] = m.c;
    j["C"] = m.C;
    j["sigma2"] = m.sigma2;
    if (m.pn) {
        j["p"] = m.pn->first;
        j["n"] = m.pn->second;
    } else {
        j["p"] = nullptr;
        j["n"] = nullptr;
    }
    return j;
}

inline ModelPreset preset_from_json(const Json& j) {
    detail::reject_unknown_keys(j, {"name", "strengths", "alpha_multiplicity", "c", "C", "sigma2", "p", "n"}, "preset");
    ModelPreset m;
    m.name = j.at("name").get<std::string>();
    m.strengths = j.at("strengths").get<std::vector<double>>();
    m.alpha_multiplicity = j.at("alpha_multiplicity").get<std::size_t>();
    m.c = j.at("c").get<double>();
    m.C = j.at("C").get<double>();
    m.sigma2 = j.at("sigma2").get<double>();
    if (!j.at("p").is_null()) m.pn = std::pair{j.at("p").get<std::size_t>(), j.at("n").get<std::size_t>()};
    return m;
}

inline Estimator estimator_from_string(const std::string& s) {
    if (s == "PY" || s == "py") return Estimator::PY;
    if (s == "KN" || s == "kn") return Estimator::KN;
    throw std::invalid_argument("unknown estimator '" + s + "' (expected PY or KN)");
}

inline Sigma2Mode sigma2_mode_from_string(const std::string& s) {
    if (s == "known") return Sigma2Mode::known;
    if (s == "estimated") return Sigma2Mode::estimated;
    throw std::invalid_argument("unknown sigma2_mode '" + s + "' (expected known or estimated)");
}

inline Sampler sampler_from_string(const std::string& s) {
    if (s == "dense") return Sampler::dense;
    if (s == "gaussian_fast") return Sampler::gaussian_fast;
    throw std::invalid_argument("unknown sampler '" + s + "' (expected dense or gaussian_fast)");
}

inline NoiseLaw noise_law_from_string(const std::string& s) {
    if (s == "gaussian") return NoiseLaw::gaussian;
    if (s == "symmetric_subexponential") return NoiseLaw::symmetric_subexponential;
    throw std::invalid_argument("unknown noise_law '" + s + "'");
}

inline const char* to_string(Sampler s) { return s == Sampler::dense ? "dense" : "gaussian_fast"; }
inline const char* to_string(NoiseLaw l) {
    return l == NoiseLaw::gaussian ? "gaussian" : "symmetric_subexponential";
}

inline ExperimentConfig config_from_json(const Json& j) {
    using detail::get_or;
    detail::reject_unknown_keys(j,
                                {"model", "grid", "estimators", "C", "gamma", "sigma2_mode", "reps", "master_seed",
                                 "workers", "sampler", "noise_law", "rotate_basis", "two_gap_rule", "s_max",
                                 "calibration_reps"},
                                "config");
    if (!j.contains("model")) throw std::invalid_argument("config: missing 'model'");
    if (!j.contains("grid")) throw std::invalid_argument("config: missing 'grid'");

    ExperimentConfig cfg;
    std::optional<ModelPreset> preset;
    const Json& model = j.at("model");
    if (model.is_string()) {
        preset = find_preset(model.get<std::string>());
        cfg = ExperimentConfig::from_preset(preset->name);
    } else {
        detail::reject_unknown_keys(model, {"name", "strengths", "alpha_multiplicity", "sigma2"}, "config.model");
        cfg.model = get_or<std::string>(model, "name", "custom");
        cfg.strengths = get_or<std::vector<double>>(model, "strengths", {});
        cfg.alpha_multiplicity = get_or<std::size_t>(model, "alpha_multiplicity", 0);
        cfg.sigma2 = get_or<double>(model, "sigma2", 1.0);
    }

    const Json& grid = j.at("grid");
    detail::reject_unknown_keys(grid, {"pairs", "c", "n", "p", "alpha"}, "config.grid");
    if (grid.contains("pairs")) {
        for (const auto& pr : grid.at("pairs")) {
            if (!pr.is_array() || pr.size() != 2) throw std::invalid_argument("config.grid.pairs: expected [p, n] pairs");
            cfg.grid.push_back({pr.at(0).get<std::size_t>(), pr.at(1).get<std::size_t>(), {}});
        }
    } else if (grid.contains("alpha")) {
        std::size_t p = 0;
        std::size_t n = 0;
        if (grid.contains("p") && grid.contains("n")) {
            p = grid.at("p").get<std::size_t>();
            n = grid.at("n").get<std::size_t>();
        } else if (preset && preset->pn) {
            std::tie(p, n) = *preset->pn;
        } else {
            throw std::invalid_argument("config.grid: alpha sweep needs p and n");
        }
        cfg.grid = ExperimentConfig::alpha_grid(p, n, grid.at("alpha").get<std::vector<double>>());
    } else if (grid.contains("n")) {
        double c = 0.0;
        if (grid.contains("c"))
            c = grid.at("c").get<double>();
        else if (preset)
            c = preset->c;
        else
            throw std::invalid_argument("config.grid: n-grid needs c");
        cfg.grid = ExperimentConfig::n_grid(c, grid.at("n").get<std::vector<std::size_t>>());
    } else {
        throw std::invalid_argument("config.grid: expected 'pairs', 'n' or 'alpha'");
    }

    if (j.contains("estimators")) {
        cfg.estimators.clear();
        for (const auto& e : j.at("estimators")) cfg.estimators.push_back(estimator_from_string(e.get<std::string>()));
    }
    if (j.contains("C")) {
        const Json& c = j.at("C");
        if (c.is_string()) {
            if (c.get<std::string>() != "auto") throw std::invalid_argument("config: C must be a number or \"auto\"");
            cfg.C.reset();
        } else {
            cfg.C = c.get<double>();
        }
    }
    cfg.gamma = get_or(j, "gamma", cfg.gamma);
    if (j.contains("sigma2_mode")) cfg.sigma2_mode = sigma2_mode_from_string(j.at("sigma2_mode").get<std::string>());
    cfg.reps = get_or(j, "reps", cfg.reps);
    cfg.master_seed = get_or(j, "master_seed", cfg.master_seed);
    cfg.workers = get_or(j, "workers", cfg.workers);
    if (j.contains("sampler")) cfg.sampler = sampler_from_string(j.at("sampler").get<std::string>());
    if (j.contains("noise_law")) cfg.noise_law = noise_law_from_string(j.at("noise_law").get<std::string>());
    cfg.rotate_basis = get_or(j, "rotate_basis", cfg.rotate_basis);
    cfg.two_gap_rule = get_or(j, "two_gap_rule", cfg.two_gap_rule);
    cfg.s_max = get_or(j, "s_max", cfg.s_max);
    cfg.calibration_reps = get_or(j, "calibration_reps", cfg.calibration_reps);
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw DataError(path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const Json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline Json result_to_json(const EstimateResult& r) {
    Json j;
    j["q_hat"] = r.q_hat;
    j["sigma2"] = r.sigma2_used;
    j["gaps"] = r.gaps;
    j["saturated"] = r.saturated;
    j["sigma2_converged"] = r.sigma2_converged;
    if (!r.kn_thresholds.empty())
        j["thresholds"] = r.kn_thresholds;
    else
        j["threshold"] = r.threshold;
    return j;
}

}  // namespace spikecount
