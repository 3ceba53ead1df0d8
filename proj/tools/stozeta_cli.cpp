// stozeta: samplers, compensated products, and Monte Carlo diagnostics for
// random holomorphic functions with real zeros.

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stozeta/cli_config.hpp"
#include "stozeta/diagnostics.hpp"
#include "stozeta/holo.hpp"
#include "stozeta/kernels.hpp"
#include "stozeta/parallel.hpp"
#include "stozeta/zeta.hpp"

namespace {

using namespace stozeta;
using cd = std::complex<double>;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int resolve_threads(const ExperimentConfig& config) {
    return config.threads > 0 ? config.threads : default_threads();
}

void emit(const ExperimentConfig& config, const std::string& contents) {
    if (config.output_path.empty()) {
        std::cout << contents;
    } else {
        atomic_write_file(config.output_path, contents);
    }
}

int run_sample(const ExperimentConfig& config) {
    std::ostringstream os;
    for (std::int64_t r = 0; r < config.replicas; ++r) {
        SeededRng rng(config.seed, static_cast<std::uint64_t>(r));
        auto cfg = sample_process(config.ensemble, rng);
        if (config.replicas > 1) os << "# replica " << r << "\n";
        write_points_csv(cfg, os);
    }
    emit(config, os.str());
    return 0;
}

int run_evaluate(const ExperimentConfig& config) {
    SeededRng rng(config.seed, 0);
    auto cfg = sample_process(config.ensemble, rng);
    auto comp = config.ensemble.default_compensator();
    bool circular = config.ensemble.kind == EnsembleKind::IidUniform ||
                    config.ensemble.kind == EnsembleKind::CBetaE ||
                    config.ensemble.kind == EnsembleKind::SONTimesU;
    auto ev = ProductEvaluator::make(std::move(cfg), comp,
                                     circular ? Prefactor::ExpIPiS : Prefactor::None);
    std::ostringstream os;
    os << "re_s,im_s,re_f,im_f,A_used,converged\n";
    std::vector<cd> grid;
    if (!config.s_points.empty()) {
        grid = config.s_points;
    } else {
        for (std::size_t i = 0; i < config.grid_count; ++i) {
            double x = config.grid_count == 1
                           ? config.grid_min
                           : config.grid_min + (config.grid_max - config.grid_min) *
                                                   static_cast<double>(i) /
                                                   static_cast<double>(config.grid_count - 1);
            grid.emplace_back(x, 1.0);
        }
    }
    for (cd s : grid) {
        auto value = eval_limit(ev, s);
        os << fmt(s.real()) << ',' << fmt(s.imag()) << ',' << fmt(value.value.real()) << ','
           << fmt(value.value.imag()) << ',' << fmt(value.A_used) << ','
           << (value.converged ? 1 : 0) << "\n";
    }
    emit(config, os.str());
    return 0;
}

int run_converge(const ExperimentConfig& config) {
    auto report = marginal_convergence(config.ensemble, config.n_list, config.s_points,
                                       config.replicas, config.seed, resolve_threads(config));
    emit(config, report.to_json() + "\n");
    if (config.assert_verdict && !(report.distances_decreasing && report.final_max_ks < 0.05)) {
        return 3;
    }
    return 0;
}

int run_propcrit(const ExperimentConfig& config) {
    auto comp = config.ensemble.default_compensator();
    double half = static_cast<double>(config.ensemble.n) / 4.0;
    std::vector<double> grid;
    const int points_per_side = 12;
    for (int i = points_per_side; i >= 1; --i)
        grid.push_back(-half * static_cast<double>(i) / points_per_side);
    grid.push_back(0.0);
    for (int i = 1; i <= points_per_side; ++i)
        grid.push_back(half * static_cast<double>(i) / points_per_side);
    auto stats = counting_stats(config.ensemble, grid, config.replicas, config.seed,
                                resolve_threads(config), &comp);
    auto report = fit_prop_crit(stats, comp);
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["seed"] = config.seed;
    j["replicas"] = config.replicas;
    j["ensemble"] = nlohmann::json::parse(config.ensemble.to_json());
    auto fit_json = [](const BoundFit& fit) {
        return nlohmann::ordered_json{{"C_hat", fit.C_hat},
                                      {"exponent_hat", fit.exponent_hat},
                                      {"max_violation_ratio", fit.max_violation_ratio},
                                      {"pass", fit.pass}};
    };
    j["mean_fit"] = fit_json(report.mean_fit);
    j["variance_fit"] = fit_json(report.variance_fit);
    j["interval_fit"] = fit_json(report.interval_fit);
    j["alpha_hat"] = report.alpha_hat;
    j["nu_hat"] = report.nu_hat;
    j["pass"] = report.pass;
    emit(config, j.dump(2) + "\n");
    if (config.assert_verdict && !report.pass) return 3;
    return 0;
}

int run_kernels(const ExperimentConfig& config) {
    std::vector<PointConfiguration> samples(static_cast<std::size_t>(config.replicas));
    parallel_for(static_cast<std::size_t>(config.replicas), resolve_threads(config),
                 [&](std::size_t r) {
                     SeededRng rng(config.seed, r);
                     samples[r] = sample_process(config.ensemble, rng);
                 });
    auto est = estimate_correlations(samples, config.correlation_order, config.window, config.bins);
    std::ostringstream os;
    os << (config.correlation_order == 1 ? "x" : "separation") << ",estimate,std_error,theory\n";
    for (std::size_t i = 0; i < est.grid.size(); ++i) {
        os << fmt(est.grid[i]) << ',' << fmt(est.values[i]) << ',' << fmt(est.std_errors[i]) << ',';
        if (!est.theory.empty()) os << fmt(est.theory[i]);
        os << "\n";
    }
    emit(config, os.str());
    return 0;
}

int run_zeta_compare(const ExperimentConfig& config) {
    auto table = ingest_zeros(config.zeros_path);
    auto report = compare_to_sine_kernel(table, config.T, static_cast<std::size_t>(config.replicas),
                                         config.s_points, config.seed, resolve_threads(config),
                                         config.dpp_window);
    emit(config, report.to_json() + "\n");
    return 0;
}

// first pass over argv: pull out --config so the file loads before flag overrides
std::string find_config_path(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return argv[i + 1];
        if (std::strncmp(argv[i], "--config=", 9) == 0) return argv[i] + 9;
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    ExperimentConfig config;

    std::string config_path = find_config_path(argc, argv);
    try {
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            require(is.good(), "config", "cannot open config file: " + config_path);
            std::ostringstream buf;
            buf << is.rdbuf();
            apply_config_json(config, buf.str());
        }
    } catch (const Error& e) {
        std::cerr << "ERROR:" << e.category() << ":" << e.what() << "\n";
        return 1;
    }

    CLI::App app{"stozeta: point-process sampling and compensated products over real zeros"};
    app.name("stozeta");
    app.require_subcommand(0, 1);

    std::string config_path_opt;  // re-declared so --config shows in --help
    std::string ensemble_name;
    std::string scaling_name;
    std::string s_list_text;
    std::string n_list_text;

    app.add_option("--config", config_path_opt, "JSON config file; flags override its fields");

    auto add_common = [&](CLI::App* cmd) {
        cmd->fallthrough();  // lets --config after the subcommand reach the parent
        cmd->add_option("--seed", config.seed, "RNG seed");
        cmd->add_option("--replicas", config.replicas, "replica count");
        cmd->add_option("--threads", config.threads,
                        "worker threads (default: all cores, or STOZETA_THREADS)");
        cmd->add_option("--out", config.output_path, "output path (atomic write); stdout if empty");
        cmd->add_option("--format", config.format, "output format: csv or json");
    };
    auto add_ensemble = [&](CLI::App* cmd) {
        cmd->add_option("--ensemble", ensemble_name,
                        "iid-uniform | cbeta | cue | so-n-times-u | gbeta | sine-beta-approx | sine-dpp");
        cmd->add_option("--n", config.ensemble.n, "ensemble size");
        cmd->add_option("--beta", config.ensemble.beta, "beta parameter");
        cmd->add_option("--psi", config.ensemble.psi, "SO(n) rotation angle in (-pi, pi]");
        cmd->add_option("--scaling", scaling_name, "circle-unfold | bulk | edge");
        cmd->add_option("--E", config.ensemble.scaling.E, "bulk energy in (-2, 2)");
        cmd->add_option("--window", config.ensemble.window_A, "window A for sine ensembles");
    };

    auto* sample = app.add_subcommand("sample", "sample point configurations to CSV");
    add_common(sample);
    add_ensemble(sample);

    auto* evaluate = app.add_subcommand("evaluate", "evaluate the compensated product on a grid");
    add_common(evaluate);
    add_ensemble(evaluate);
    evaluate->add_option("--s", s_list_text, "comma-separated complex s values, e.g. 0+1i,1+1i");
    evaluate->add_option("--grid-min", config.grid_min, "real-axis grid start (Im s = 1)");
    evaluate->add_option("--grid-max", config.grid_max, "real-axis grid end");
    evaluate->add_option("--grid-count", config.grid_count, "grid points");

    auto* converge = app.add_subcommand("converge", "marginal stabilization across n");
    add_common(converge);
    add_ensemble(converge);
    converge->add_option("--n-list", n_list_text, "comma-separated increasing sizes, e.g. 100,200,400");
    converge->add_option("--s", s_list_text, "comma-separated complex s values");
    converge->add_flag("--assert", config.assert_verdict,
                       "exit 3 when the stabilization verdict fails");

    auto* propcrit = app.add_subcommand("propcrit", "counting-function bound fits");
    add_common(propcrit);
    add_ensemble(propcrit);
    propcrit->add_flag("--assert", config.assert_verdict, "exit 3 when the criterion fails");

    auto* kernels = app.add_subcommand("kernels", "empirical correlation estimates");
    add_common(kernels);
    add_ensemble(kernels);
    kernels->add_option("--order", config.correlation_order, "correlation order: 1 or 2");
    kernels->add_option("--obs-window", config.window, "estimation window half-width");
    kernels->add_option("--bins", config.bins, "histogram bins");

    auto* zeta = app.add_subcommand("zeta-compare", "zeta windows against sine-kernel samples");
    add_common(zeta);
    zeta->add_option("--zeros", config.zeros_path, "zeros table (text, ascending, '#' comments)");
    zeta->add_option("--T", config.T, "scale parameter T >= 1000");
    zeta->add_option("--s", s_list_text, "comma-separated complex s values");
    zeta->add_option("--cap", config.cap_override, "window cap override (default log^2 T)");
    zeta->add_option("--dpp-window", config.dpp_window, "sine-kernel DPP window half-width");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample->parsed()) config.command = CommandKind::Sample;
        if (evaluate->parsed()) config.command = CommandKind::Evaluate;
        if (converge->parsed()) config.command = CommandKind::Converge;
        if (propcrit->parsed()) config.command = CommandKind::PropCrit;
        if (kernels->parsed()) config.command = CommandKind::Kernels;
        if (zeta->parsed()) config.command = CommandKind::ZetaCompare;
        bool any_parsed = sample->parsed() || evaluate->parsed() || converge->parsed() ||
                          propcrit->parsed() || kernels->parsed() || zeta->parsed();
        require(any_parsed || !config_path.empty(), "config",
                "no command given (see --help)");

        if (!ensemble_name.empty()) {
            auto kind = ensemble_kind_from_string(ensemble_name);
            require(kind.has_value(), "config", "unknown ensemble: " + ensemble_name);
            config.ensemble.kind = *kind;
            if (ensemble_name == "cue") config.ensemble.beta = 2.0;
        }
        if (!scaling_name.empty()) {
            auto sk = scaling_kind_from_string(scaling_name);
            require(sk.has_value(), "config", "unknown scaling: " + scaling_name);
            config.ensemble.scaling.type = *sk;
        }
        if (!s_list_text.empty()) config.s_points = parse_complex_list(s_list_text);
        if (!n_list_text.empty()) config.n_list = parse_size_list(n_list_text);

        config.validate();

        switch (config.command) {
            case CommandKind::Sample: return run_sample(config);
            case CommandKind::Evaluate: return run_evaluate(config);
            case CommandKind::Converge: return run_converge(config);
            case CommandKind::PropCrit: return run_propcrit(config);
            case CommandKind::Kernels: return run_kernels(config);
            case CommandKind::ZetaCompare: return run_zeta_compare(config);
        }
    } catch (const Error& e) {
        std::cerr << "ERROR:" << e.category() << ":" << e.what() << "\n";
        if (e.category() == "config" || e.category() == "parse" || e.category() == "argument") {
            return 1;
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ERROR:runtime:" << e.what() << "\n";
        return 2;
    }
    return 0;
}
