// Command-line front end: run experiments from config files, validate
// configs, print the version. Exit codes: 0 success, 1 verdict failure,
// 2 config error, 3 runtime abort (blow-up), 4 I/O error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "logeuler/config.hpp"
#include "logeuler/report_io.hpp"
#include "logeuler/version.hpp"

namespace {

using namespace logeuler;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kVerdictFailure = 1;
constexpr int kConfigError = 2;
constexpr int kRuntimeAbort = 3;
constexpr int kIoFailure = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The snapshot toggle persists the initial vorticity of each case next to
// the report, via the raw float64 + sidecar format.
void write_initial_snapshots(const RunConfig& cfg, const fs::path& dir) {
    auto save = [&](const SpectralField& theta, double gamma, const std::string& name) {
        RealField phys = to_physical(theta);
        SnapshotMeta meta;
        meta.n = phys.grid->n();
        meta.gamma = gamma;
        meta.time = 0.0;
        meta.kind = "theta";
        write_snapshot(phys, meta, dir / name);
    };
    if (cfg.experiment == "nonuniform") {
        GridPtr grid = make_grid(cfg.grid_n);
        for (int n : cfg.nonuniform.n_list) {
            FlowState st = hm_exact_state({n, cfg.nonuniform.s, +1, cfg.nonuniform.gamma}, 0.0, grid);
            save(st.theta_hat, cfg.nonuniform.gamma, "theta0_n" + std::to_string(n) + ".f64");
        }
    } else if (cfg.experiment == "convergence") {
        int gn = cfg.convergence.grid_sizes.empty() ? cfg.grid_n : cfg.convergence.grid_sizes.front();
        FlowState st = hm_exact_state(
            {cfg.convergence.wave_n, cfg.convergence.s, +1, cfg.convergence.gamma}, 0.0,
            make_grid(gn));
        save(st.theta_hat, cfg.convergence.gamma, "theta0.f64");
    } else if (cfg.experiment == "continuity") {
        GridPtr grid = make_grid(cfg.grid_n);
        const auto& p = cfg.continuity;
        SpectralField base = normalize_to(random_band_field(cfg.seed, grid, p.kmin, p.kmax, p.decay),
                                          {0.0, false}, p.amplitude);
        save(base, p.gamma, "theta0.f64");
    } else if (cfg.experiment == "gamma_comparison") {
        GridPtr grid = make_grid(cfg.grid_n);
        const auto& p = cfg.gamma_comparison;
        SpectralField base = normalize_to(random_band_field(cfg.seed, grid, p.kmin, p.kmax, p.decay),
                                          {0.0, false}, p.amplitude);
        save(base, 0.0, "theta0.f64");
    } else if (cfg.experiment == "support") {
        GridPtr grid = make_grid(cfg.grid_n);
        RealField blobs = bump_blob_pair(cfg.support.blob_f, cfg.support.blob_g, grid);
        SpectralField theta0 = to_spectrum(blobs);
        theta0.coeffs[0] = Complex{};
        save(theta0, cfg.support.gamma, "theta0.f64");
    }
}

int do_run(const std::string& config_path, const std::string& out_override, int threads) {
    std::string text;
    try {
        text = read_file(config_path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoFailure;
    }
    RunConfig cfg;
    try {
        cfg = parse_config(text);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    if (!out_override.empty()) cfg.output_dir = out_override;

    ExperimentReport report;
    try {
        report = run_experiment(cfg, threads);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const BlowupError& e) {
        std::cerr << "runtime abort: " << e.what() << "\n";
        return kRuntimeAbort;
    }

    try {
        write_report(report, cfg.output_dir);
        if (cfg.snapshots) write_initial_snapshots(cfg, cfg.output_dir);
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIoFailure;
    }

    int failures = 0;
    for (const Verdict& v : report.verdicts) {
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.name << "  value=" << v.value
                  << " threshold=" << v.threshold << "\n";
        if (!v.pass) ++failures;
    }
    std::cout << "report written to " << cfg.output_dir << "\n";
    if (report.aborted) {
        std::cerr << "runtime abort: integration blew up; report carries the last valid records\n";
        return kRuntimeAbort;
    }
    return failures == 0 ? kOk : kVerdictFailure;
}

int do_validate(const std::string& config_path) {
    std::string text;
    try {
        text = read_file(config_path);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIoFailure;
    }
    try {
        RunConfig cfg = parse_config(text);
        std::cout << serialize_config(cfg);
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudospectral toolkit for the log-regularized 2D Euler system"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("--config", config_path, "config file (key-value or JSON)")->required();
    run->add_option("--out", out_dir, "output directory (overrides output.dir)");
    run->add_option("--threads", threads, "worker threads for sweep cases")
        ->check(CLI::PositiveNumber);

    CLI::App* validate = app.add_subcommand("validate", "parse and echo a config file");
    validate->add_option("--config", config_path, "config file")->required();

    app.add_subcommand("version", "print the tool version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    if (run->parsed()) return do_run(config_path, out_dir, threads);
    if (validate->parsed()) return do_validate(config_path);
    std::cout << "logeuler " << logeuler::kVersion << "\n";
    return kOk;
}
