#pragma once

// Simulation models used to evaluate the estimators. Models with an
// alpha multiplicity are templates: alpha is repeated that many times next to
// the fixed strengths, and the experiment sweeps alpha at a fixed (p, n).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spikecount {

struct ModelPreset {
    std::string name;
    std::vector<double> strengths;
    std::size_t alpha_multiplicity = 0;
    double c = 1.0;
    double C = 5.0;
    /// Fixed (p, n) of alpha-sweep templates.
    std::optional<std::pair<std::size_t, std::size_t>> pn;
    double sigma2 = 1.0;

    bool is_template() const noexcept { return alpha_multiplicity > 0; }

    friend bool operator==(const ModelPreset&, const ModelPreset&) = default;
};

inline const std::vector<ModelPreset>& model_presets() {
    static const std::vector<ModelPreset> presets = {
        {"single-c0.25", {}, 1, 0.25, 5.5, std::pair<std::size_t, std::size_t>{200, 800}, 1.0},
        {"single-c4", {}, 1, 4.0, 9.0, std::pair<std::size_t, std::size_t>{2000, 500}, 1.0},
        {"A", {6.0, 5.0}, 0, 10.0, 11.0, std::nullopt, 1.0},
        {"B", {10.0, 5.0}, 0, 10.0, 11.0, std::nullopt, 1.0},
        {"C", {1.5}, 0, 1.0, 5.0, std::nullopt, 1.0},
        {"D", {2.5, 1.5}, 0, 1.0, 5.0, std::nullopt, 1.0},
        {"E", {5.0}, 2, 0.25, 6.0, std::pair<std::size_t, std::size_t>{200, 800}, 1.0},
        {"F", {15.0}, 2, 4.0, 9.9, std::pair<std::size_t, std::size_t>{2000, 500}, 1.0},
        {"G", {6.0, 5.0, 5.0}, 0, 10.0, 9.9, std::nullopt, 1.0},
        {"H", {10.0, 5.0, 5.0}, 0, 10.0, 9.9, std::nullopt, 1.0},
        {"I", {1.5, 1.5}, 0, 1.0, 5.0, std::nullopt, 1.0},
        {"J", {2.5, 1.5, 1.5}, 0, 1.0, 5.0, std::nullopt, 1.0},
        {"K", {}, 0, 1.0, 8.0, std::nullopt, 1.0},
        {"K10", {}, 0, 10.0, 15.0, std::nullopt, 1.0},
    };
    return presets;
}

inline const ModelPreset& find_preset(const std::string& name) {
    const auto& all = model_presets();
    auto it = std::find_if(all.begin(), all.end(), [&](const ModelPreset& m) { return m.name == name; });
    if (it == all.end()) throw std::invalid_argument("unknown model preset '" + name + "'");
    return *it;
}

inline std::string preset_names() {
    std::string out;
    for (const auto& m : model_presets()) out += (out.empty() ? "" : ", ") + m.name;
    return out;
}

}  // namespace spikecount
