// spikecount: estimate the number of factors in data, and run the Monte Carlo
// experiments that evaluate the estimators.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <spikecount/spikecount.hpp>

using namespace spikecount;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Parses "PY", "KN" or "both".
std::vector<Estimator> parse_estimators(const std::vector<std::string>& names) {
    std::vector<Estimator> out;
    for (const auto& n : names) {
        if (n == "both") {
            out = {Estimator::PY, Estimator::KN};
            continue;
        }
        out.push_back(estimator_from_string(n));
    }
    return out;
}

// Parses "300x300,3000x300" into grid points.
std::vector<GridPoint> parse_pairs(const std::vector<std::string>& pairs) {
    std::vector<GridPoint> out;
    for (const auto& s : pairs) {
        const auto x = s.find('x');
        if (x == std::string::npos) throw UsageError("--pairs: expected PxN, got '" + s + "'");
        try {
            out.push_back({std::stoul(s.substr(0, x)), std::stoul(s.substr(x + 1)), {}});
        } catch (const std::logic_error&) {
            throw UsageError("--pairs: expected PxN, got '" + s + "'");
        }
    }
    return out;
}

// Experiment flags; each overrides the config file or preset when given.
struct ExperimentFlags {
    std::string config;
    std::string model;
    std::vector<double> strengths;
    double sigma2 = 1.0;
    std::vector<std::string> pairs;
    double c = 0.0;
    std::vector<std::size_t> ns;
    std::size_t p = 0;
    std::size_t n = 0;
    std::vector<double> alphas;
    std::vector<std::string> estimators;
    std::string C;
    double gamma = 0.005;
    std::string sigma2_mode;
    std::size_t reps = 500;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::string sampler;
    std::string noise;
    bool rotate = false;
    bool single_gap = false;
    std::size_t s_max = 0;
    std::size_t calibration_reps = 500;
    std::string out;
    bool no_timing = false;

    std::map<std::string, CLI::Option*> opts;

    void attach(CLI::App* app, bool alpha_only) {
        opts["config"] = app->add_option("--config", config, "JSON experiment file")->check(CLI::ExistingFile);
        opts["model"] = app->add_option("--model", model, "Model preset: " + preset_names());
        opts["strengths"] = app->add_option("--strengths", strengths, "Explicit factor strengths (custom model)")
                                ->delimiter(',');
        opts["sigma2"] = app->add_option("--sigma2", sigma2, "Noise level of a custom model");
        if (!alpha_only) {
            opts["pairs"] = app->add_option("--pairs", pairs, "Grid of PxN pairs, e.g. 300x300,3000x300")->delimiter(',');
            opts["c"] = app->add_option("--c", c, "Aspect ratio of an n-grid (p = round(c n))");
            opts["ns"] = app->add_option("--n-grid", ns, "Sample sizes of an n-grid")->delimiter(',');
        }
        opts["p"] = app->add_option("--p", p, "Dimension of an alpha sweep");
        opts["n"] = app->add_option("--n", n, "Sample size of an alpha sweep");
        opts["alpha"] = app->add_option("--alpha", alphas, "Factor strengths swept by a template model")->delimiter(',');
        opts["estimators"] = app->add_option("--estimator", estimators, "PY, KN or both")->delimiter(',');
        opts["C"] = app->add_option("--C", C, "Gap-threshold constant, or 'auto' to calibrate per grid point");
        opts["gamma"] = app->add_option("--gamma", gamma, "Significance level of the sequential test");
        opts["sigma2_mode"] = app->add_option("--sigma2-mode", sigma2_mode, "known or estimated");
        opts["reps"] = app->add_option("--reps", reps, "Replications per grid point");
        opts["seed"] = app->add_option("--seed", seed, "Master seed");
        opts["workers"] = app->add_option("--workers", workers, "Worker threads");
        opts["sampler"] = app->add_option("--sampler", sampler, "dense or gaussian_fast");
        opts["noise"] = app->add_option("--noise", noise, "gaussian or symmetric_subexponential");
        opts["rotate"] = app->add_flag("--rotate", rotate, "Rotate the factor basis by a random orthogonal matrix");
        opts["single_gap"] = app->add_flag("--single-gap", single_gap, "Stop on one small gap instead of two");
        opts["s_max"] = app->add_option("--s-max", s_max, "Bound on the number of factors (0: default)");
        opts["calibration_reps"] = app->add_option("--calibration-reps", calibration_reps, "Draws for C = auto");
        app->add_option("--out", out, "Write the CSV report here instead of stdout");
        app->add_flag("--no-timing", no_timing, "Write 0 in the seconds column (byte-reproducible reports)");
    }

    bool given(const std::string& key) const {
        auto it = opts.find(key);
        return it != opts.end() && it->second->count() > 0;
    }

    ExperimentConfig build() const {
        ExperimentConfig cfg;
        std::optional<ModelPreset> preset;
        if (!config.empty()) {
            cfg = load_config(config);
            for (const auto& m : model_presets())
                if (m.name == cfg.model) preset = m;
        }
        if (given("model")) {
            if (given("strengths")) throw UsageError("--model and --strengths are exclusive");
            preset = find_preset(model);
            const ExperimentConfig base = ExperimentConfig::from_preset(model);
            cfg.model = base.model;
            cfg.strengths = base.strengths;
            cfg.alpha_multiplicity = base.alpha_multiplicity;
            cfg.sigma2 = base.sigma2;
            cfg.C = base.C;
        } else if (given("strengths")) {
            cfg.model = "custom";
            cfg.strengths = strengths;
            cfg.alpha_multiplicity = 0;
            cfg.C = 5.0;
        } else if (config.empty()) {
            throw UsageError("give --config, --model or --strengths");
        }
        if (given("sigma2")) cfg.sigma2 = sigma2;

        if (given("pairs")) {
            cfg.grid = parse_pairs(pairs);
        } else if (given("ns")) {
            double ratio = c;
            if (!given("c")) {
                if (!preset) throw UsageError("--n-grid needs --c for a custom model");
                ratio = preset->c;
            }
            cfg.grid = ExperimentConfig::n_grid(ratio, ns);
        } else if (given("alpha")) {
            std::size_t pp = p;
            std::size_t nn = n;
            if (!given("p") || !given("n")) {
                if (!preset || !preset->pn) throw UsageError("--alpha needs --p and --n for this model");
                pp = preset->pn->first;
                nn = preset->pn->second;
            }
            cfg.grid = ExperimentConfig::alpha_grid(pp, nn, alphas);
        } else if (given("p") || given("n")) {
            if (!given("p") || !given("n")) throw UsageError("--p and --n go together");
            cfg.grid = {{p, n, {}}};
        }
        if (cfg.grid.empty()) throw UsageError("no grid: give --pairs, --n-grid, --alpha or --p/--n");

        if (given("estimators")) cfg.estimators = parse_estimators(estimators);
        if (given("C")) {
            if (C == "auto") {
                cfg.C.reset();
            } else {
                try {
                    cfg.C = std::stod(C);
                } catch (const std::logic_error&) {
                    throw UsageError("--C: expected a number or 'auto', got '" + C + "'");
                }
            }
        }
        if (given("gamma")) cfg.gamma = gamma;
        if (given("sigma2_mode")) cfg.sigma2_mode = sigma2_mode_from_string(sigma2_mode);
        if (given("reps")) cfg.reps = reps;
        if (given("seed")) cfg.master_seed = seed;
        if (given("workers")) cfg.workers = workers;
        if (given("sampler")) cfg.sampler = sampler_from_string(sampler);
        if (given("noise")) cfg.noise_law = noise_law_from_string(noise);
        if (given("rotate")) cfg.rotate_basis = rotate;
        if (given("single_gap")) cfg.two_gap_rule = !single_gap;
        if (given("s_max")) cfg.s_max = s_max;
        if (given("calibration_reps")) cfg.calibration_reps = calibration_reps;
        cfg.validate();
        return cfg;
    }

    void emit(const RateReport& report) const {
        if (out.empty()) {
            write_report_csv(std::cout, report, !no_timing);
            return;
        }
        std::ofstream f(out);
        if (!f) throw DataError("cannot write " + out);
        write_report_csv(f, report, !no_timing);
    }
};

void print_estimate_text(const FileEstimate& est) {
    std::printf("p = %zu, n = %zu\n", est.p, est.n);
    auto show = [](const char* name, const EstimateResult& r) {
        std::printf("%s: q_hat = %zu, sigma2 = %.6g%s%s\n", name, r.q_hat, r.sigma2_used,
                    r.saturated ? " (saturated)" : "", r.sigma2_converged ? "" : " (noise estimate not converged)");
        std::printf("  gaps:");
        for (double g : r.gaps) std::printf(" %.6g", g);
        std::printf("\n");
    };
    if (est.py) {
        show("PY", *est.py);
        std::printf("  C = %.6g, d_n = %.6g\n", est.C, est.py->threshold);
    }
    if (est.kn) {
        show("KN", *est.kn);
        std::printf("  thresholds:");
        for (double t : est.kn->kn_thresholds) std::printf(" %.6g", t);
        std::printf("\n");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Estimate the number of factors of high-dimensional data from sample covariance eigenvalues.\n"
                 "Model presets: " + preset_names()};
    app.require_subcommand(1);

    // estimate
    auto* est_cmd = app.add_subcommand("estimate", "Estimate the number of factors of a CSV data matrix (rows = observations)");
    std::string data_path;
    std::string est_which = "both";
    std::string est_C = "auto";
    double est_gamma = 0.005;
    std::optional<double> est_sigma2;
    std::size_t est_cal_reps = 500;
    std::uint64_t est_seed = 0;
    std::size_t est_s_max = 0;
    bool est_center = false;
    bool est_single_gap = false;
    bool est_json = false;
    est_cmd->add_option("file", data_path, "CSV file, one observation per row")->required();
    est_cmd->add_option("--estimator", est_which, "PY, KN or both")->check(CLI::IsMember({"PY", "KN", "both"}));
    est_cmd->add_option("--C", est_C, "Gap-threshold constant, or 'auto' to calibrate from (p, n)");
    est_cmd->add_option("--gamma", est_gamma, "Significance level of the sequential test");
    est_cmd->add_option("--sigma2", est_sigma2, "Known noise level (estimated when omitted)");
    est_cmd->add_option("--calibration-reps", est_cal_reps, "Draws for C = auto");
    est_cmd->add_option("--seed", est_seed, "Seed of the C calibration");
    est_cmd->add_option("--s-max", est_s_max, "Bound on the number of factors (0: default)");
    est_cmd->add_flag("--center", est_center, "Subtract column means first");
    est_cmd->add_flag("--single-gap", est_single_gap, "Stop on one small gap instead of two");
    est_cmd->add_flag("--json", est_json, "JSON output");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Run a Monte Carlo experiment and write a CSV rate report");
    ExperimentFlags sim;
    sim.attach(sim_cmd, false);
    std::string dump_path;
    sim_cmd->add_option("--dump-observations", dump_path,
                        "Write the first replication's data matrix at the first grid point as CSV and exit");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the strength of a template model (single-c0.25, single-c4, E, F)");
    ExperimentFlags sweep;
    sweep.attach(sweep_cmd, true);
    double level = 0.5;
    sweep_cmd->add_option("--level", level, "Misestimation level whose crossing is reported on stderr");

    // calibrate
    auto* cal_cmd = app.add_subcommand("calibrate", "Calibrate C from simulated white top spacings");
    std::size_t cal_p = 0;
    std::size_t cal_n = 0;
    std::size_t cal_reps = 500;
    std::uint64_t cal_seed = 0;
    std::size_t cal_workers = 1;
    cal_cmd->add_option("--p", cal_p, "Dimension")->required();
    cal_cmd->add_option("--n", cal_n, "Sample size")->required();
    cal_cmd->add_option("--reps", cal_reps, "White draws (>= 100)");
    cal_cmd->add_option("--seed", cal_seed, "Seed");
    cal_cmd->add_option("--workers", cal_workers, "Worker threads");

    // twq
    auto* twq_cmd = app.add_subcommand("twq", "Tracy-Widom (order 1) upper quantile or distribution function");
    std::optional<double> twq_gamma;
    std::optional<double> twq_s;
    std::string twq_table;
    auto* g_opt = twq_cmd->add_option("--gamma", twq_gamma, "Upper tail probability: print s with P(TW1 > s) = gamma");
    auto* s_opt = twq_cmd->add_option("--cdf", twq_s, "Print P(TW1 <= s)");
    g_opt->excludes(s_opt);
    twq_cmd->add_option("--table", twq_table, "Knot file (s F per line) instead of the built-in table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (*est_cmd) {
        FileEstimateSettings s;
        s.run_py = est_which != "KN";
        s.run_kn = est_which != "PY";
        if (est_C == "auto") {
            s.auto_C = true;
        } else {
            s.auto_C = false;
            try {
                s.py.C = std::stod(est_C);
            } catch (const std::logic_error&) {
                throw UsageError("--C: expected a number or 'auto', got '" + est_C + "'");
            }
        }
        s.py.sigma2 = est_sigma2;
        s.py.s_max = est_s_max;
        s.py.two_gap_rule = !est_single_gap;
        s.kn.sigma2 = est_sigma2;
        s.kn.gamma = est_gamma;
        s.calibration_reps = est_cal_reps;
        s.seed = est_seed;
        s.center = est_center;
        const FileEstimate est = estimate_file(data_path, s);
        if (est_json)
            std::cout << file_estimate_to_json(est).dump(2) << '\n';
        else
            print_estimate_text(est);
        return 0;
    }
    if (*sim_cmd) {
        const ExperimentConfig cfg = sim.build();
        if (!dump_path.empty()) {
            const GridPoint& g = cfg.grid.front();
            const auto x = generate_observations(cfg.spec_at(g), g.n,
                                                 {derive_seed(cfg.master_seed, 0, 0), cfg.noise_law, cfg.rotate_basis});
            std::ofstream f(dump_path);
            if (!f) throw DataError("cannot write " + dump_path);
            write_matrix_csv(f, x);
            return 0;
        }
        sim.emit(run_experiment(cfg));
        return 0;
    }
    if (*sweep_cmd) {
        const ExperimentConfig cfg = sweep.build();
        const RateReport report = sweep_alpha(cfg);
        sweep.emit(report);
        for (Estimator e : cfg.estimators) {
            const auto a = misestimation_crossing(report, e, level);
            if (a)
                std::fprintf(stderr, "%s: misestimation crosses %.3g at alpha = %.4g\n", to_string(e), level, *a);
            else
                std::fprintf(stderr, "%s: misestimation does not cross %.3g on this grid\n", to_string(e), level);
        }
        return 0;
    }
    if (*cal_cmd) {
        const Calibration cal = calibrate_C(cal_p, cal_n, cal_reps, cal_seed, cal_workers);
        std::printf("s_hat %.6f\nC_tilde %.6f\n", cal.s_hat, cal.C_tilde);
        return 0;
    }
    if (*twq_cmd) {
        const TW1Table table = twq_table.empty() ? TW1Table::builtin() : TW1Table::load(twq_table);
        if (twq_s) {
            std::printf("%.10g\n", table.cdf(*twq_s));
        } else {
            if (!twq_gamma) throw UsageError("twq: give --gamma or --cdf");
            std::printf("%.10g\n", table.quantile(*twq_gamma));
        }
        return 0;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
