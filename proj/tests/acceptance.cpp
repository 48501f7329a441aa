// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero when any fails.
//
// Usage: acceptance [--cli <path-to-logeuler-binary>]
// The CLI path enables the end-to-end determinism re-runs (criterion 11)
// and the exit-code checks through real process invocations.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "logeuler/analysis.hpp"
#include "logeuler/config.hpp"
#include "logeuler/experiments.hpp"
#include "logeuler/pinned.hpp"
#include "logeuler/report_io.hpp"

using namespace logeuler;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << " ("
              << detail << ")\n"
              << std::flush;
    if (!pass) ++g_failures;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

double hm_rel_error(double dt, double t_end) {
    GridPtr grid = make_grid(64);
    HMFamilySpec spec{4, 3.0, +1, 0.1};
    FlowState s0 = hm_exact_state(spec, 0.0, grid);
    SolverConfig cfg;
    cfg.fixed_dt = dt;
    cfg.t_end = t_end;
    cfg.diagnostic_stride = 1 << 30;
    IntegrationResult res = integrate(s0, cfg);
    if (res.aborted) return std::nan("");
    FlowState exact = hm_exact_state(spec, t_end, grid);
    return sobolev_norm(res.final_state.theta_hat - exact.theta_hat, {0.0, false}) /
           sobolev_norm(exact.theta_hat, {0.0, false});
}

// ---------------------------------------------------------------- 1 & 2

double criterion_1() {
    auto t0 = Clock::now();
    double err = hm_rel_error(1e-3, 1.0);
    double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    bool pass = std::isfinite(err) && err <= 1e-8 && wall <= 10.0;
    report(1, pass, "exact traveling-shear fidelity",
           "rel_l2_err=" + fmt(err) + " (<=1e-8), wall=" + fmt(wall) + "s (<=10s)");
    return err;
}

void criterion_2(double err_dt) {
    double err_half = hm_rel_error(5e-4, 1.0);
    double ratio = err_dt / err_half;
    bool pass = ratio >= 12.0 && ratio <= 20.0;
    report(2, pass, "temporal order via dt halving",
           "err(1e-3)/err(5e-4)=" + fmt(ratio) + " in [12,20]");
}

// ------------------------------------------------------------------- 3

void criterion_3() {
    bool pass = true;
    std::string detail;
    GridPtr grid = make_grid(128);
    SpectralField theta0 = normalize_to(random_band_field(2024, grid, 1.0, 3.0, 2.0),
                                        {0.0, false}, 0.005);
    for (double gamma : {0.0, 0.1}) {
        FlowState s0{theta0, {0.0, 0.0}, 0.0, gamma};
        SolverConfig cfg;
        cfg.cfl = 0.4;
        cfg.dt_max = 0.05;
        cfg.t_end = 1.0;
        cfg.diagnostic_stride = 1;
        cfg.p_list = {4.0};
        IntegrationResult res = integrate(s0, cfg);
        if (res.aborted) {
            pass = false;
            break;
        }
        const DiagnosticsRecord& first = res.records.front();
        double d_l2 = 0, d_e = 0, d_l4 = 0, d_inf = 0;
        for (const DiagnosticsRecord& r : res.records) {
            d_l2 = std::max(d_l2, std::abs(r.l2_theta - first.l2_theta) / first.l2_theta);
            d_e = std::max(d_e, std::abs(r.energy - first.energy) / first.energy);
            d_l4 = std::max(d_l4, std::abs(r.lp_theta[0] - first.lp_theta[0]) / first.lp_theta[0]);
            d_inf = std::max(d_inf, std::abs(r.linf_theta - first.linf_theta) / first.linf_theta);
        }
        pass = pass && d_l2 <= 1e-8 && d_e <= 1e-8 && d_l4 <= 1e-4 && d_inf <= 1e-4;
        detail += "gamma=" + fmt(gamma) + ": dL2=" + fmt(d_l2) + " dE=" + fmt(d_e) +
                  " dL4=" + fmt(d_l4) + " dLinf=" + fmt(d_inf) + "; ";
    }
    report(3, pass, "conservation over [0,1] at 128^2", detail + "bounds 1e-8/1e-8/1e-4/1e-4");
}

// ------------------------------------------------------------------- 4

void criterion_4() {
    GridPtr grid = make_grid(64);
    int violations = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SpectralField theta = random_band_field(seed, grid, 1.0, 10.0, 2.0);
        for (double gamma : {0.0, 0.25}) {
            for (double s : {2.5, 3.0}) {
                BiotSavartReport r = biot_savart_bound_check(theta, LogMultiplier(gamma), s);
                worst = std::max(worst, r.ratio);
                if (!(r.ratio <= 1.0)) ++violations;
            }
        }
    }
    report(4, violations == 0, "discrete Biot-Savart bound with constant 2^{s/2}",
           "400 checks, worst ratio=" + fmt(worst) + ", violations=" + std::to_string(violations));
}

// ------------------------------------------------------------------- 5

ExperimentReport criterion_5(int threads) {
    NonuniformParams p;
    p.grid_n = 256;
    p.n_list = {8, 16, 32, 64};
    p.s = 2.5;
    p.gamma = 0.01;
    double pi = 3.14159265358979323846;
    p.probes = {pi / 8, pi / 4, 3 * pi / 8, pi / 2};
    p.margin = 1.3;
    p.closed_form_rtol = 0.01;
    p.solver.cfl = 0.4;
    p.solver.dt_max = 0.05;

    auto t0 = Clock::now();
    ExperimentReport rep = run_nonuniform(p, threads);
    double wall = std::chrono::duration<double>(Clock::now() - t0).count();

    bool init_ok = true, margin_ok = true, cf_ok = true;
    for (const Verdict& v : rep.verdicts) {
        if (v.name.rfind("initial_sep", 0) == 0) init_ok = init_ok && v.pass;
        if (v.name.rfind("lower_bound", 0) == 0) margin_ok = margin_ok && v.pass;
        if (v.name.rfind("closed_form", 0) == 0) cf_ok = cf_ok && v.pass;
    }
    bool pass = !rep.aborted && init_ok && margin_ok && cf_ok && wall <= 900.0;
    report(5, pass, "non-uniform dependence sweep at 256^2",
           std::string("initial_sep=") + (init_ok ? "ok" : "BAD") + ", margin1.3=" +
               (margin_ok ? "ok" : "BAD") + ", closed_form1%=" + (cf_ok ? "ok" : "BAD") +
               ", wall=" + fmt(wall) + "s (<=900s)");
    return rep;
}

// ------------------------------------------------------------------- 6

void criterion_6() {
    ContinuityParams p;
    p.grid_n = 64;
    p.seed = 7;
    p.kmin = 1.0;
    p.kmax = 3.0;
    p.decay = 2.0;
    p.amplitude = 0.3;
    p.deltas = {1e-2, 1e-3, 1e-4};
    p.s = 2.5;
    p.gamma = 0.1;
    p.t_end = 1.0;
    p.decade_factor_lo = 5.0;
    p.decade_factor_hi = 20.0;
    p.solver.dt_max = 0.02;
    ExperimentReport rep = run_continuity(p);
    std::string factors;
    bool pass = !rep.aborted;
    for (const Verdict& v : rep.verdicts) {
        pass = pass && v.pass;
        if (v.name.rfind("decade_factor", 0) == 0) factors += fmt(v.value) + " ";
    }
    report(6, pass, "continuous dependence delta sweep",
           "per-decade factors: " + factors + "in [5,20]");
}

// ------------------------------------------------------------------- 7

void criterion_7() {
    GammaComparisonParams p;
    p.grid_n = 64;
    p.seed = 11;
    p.kmin = 1.0;
    p.kmax = 3.0;
    p.decay = 2.0;
    p.amplitude = 0.3;
    p.gammas = {0.02, 0.01, 0.005};
    p.s = 2.5;
    p.t_end = 1.0;
    p.envelope_c0 = pinned::kGammaEnvelopeC0;
    p.ratio_lo = 1.8;
    p.ratio_hi = 2.2;
    p.solver.dt_max = 0.02;
    ExperimentReport rep = run_gamma_comparison(p);
    std::string ratios;
    bool pass = !rep.aborted;
    for (const Verdict& v : rep.verdicts) {
        pass = pass && v.pass;
        if (v.name.rfind("halving_ratio", 0) == 0) ratios += fmt(v.value) + " ";
    }
    report(7, pass, "gamma-halving comparison scaling + Gronwall envelope",
           "d(1) ratios: " + ratios + "in [1.8,2.2]; envelope C0=" +
               fmt(pinned::kGammaEnvelopeC0));
}

// ------------------------------------------------------------------- 8

void criterion_8() {
    GridPtr grid = make_grid(64);
    int violations = 0;
    int checks = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SpectralField F = random_band_field(seed, grid, 1.0, 20.0, 1.2);
        for (double M = 1.0; M <= 32.0; M *= 2.0) {
            InequalityReport r = bernstein_report(F, M, 1.5, 2.0);
            ++checks;
            if (!r.pass) ++violations;
        }
    }
    report(8, violations == 0, "Bernstein (2,2) dyadic bracket",
           std::to_string(checks) + " checks at s=1.5, violations=" + std::to_string(violations));
}

// ------------------------------------------------------------------- 9

void criterion_9() {
    GridPtr grid = make_grid(64);
    auto corpus_amp = [](int i) { return std::pow(10.0, -2.0 + 4.0 * i / 99.0); };
    auto corpus_sup = [&](double rescale) {
        double sup = 0.0;
        for (int i = 0; i < 100; ++i) {
            SpectralField F = random_band_field(static_cast<std::uint64_t>(i + 1), grid, 1.0,
                                                10.0, 2.0);
            RealField f = to_physical(F);
            double peak = lp_norm(f, std::numeric_limits<double>::infinity());
            RealField scaled = (rescale * corpus_amp(i) / peak) * f;
            sup = std::max(sup, log_interp_report(scaled, LogMultiplier(0.0), 4.0).ratio);
        }
        return sup;
    };
    double li_sup = corpus_sup(1.0);
    double li_lo = corpus_sup(1e-2);
    double li_hi = corpus_sup(1e2);

    double kp_sup = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        RealField f = to_physical(random_band_field(seed, grid, 1.0, 10.0, 2.0));
        RealField g = to_physical(random_band_field(seed + 500, grid, 1.0, 10.0, 2.0));
        kp_sup = std::max(kp_sup, kato_ponce_report(f, g, 2.5).ratio);
    }

    bool li_ok = li_sup <= pinned::kLogInterpSupRatio;
    bool kp_ok = kp_sup <= pinned::kKatoPonceSupRatio;
    bool stable = li_lo >= li_sup / 2.0 && li_lo <= li_sup * 2.0 && li_hi >= li_sup / 2.0 &&
                  li_hi <= li_sup * 2.0;
    report(9, li_ok && kp_ok && stable, "log-interpolation + Kato-Ponce corpora",
           "li_sup=" + fmt(li_sup) + " (<=" + fmt(pinned::kLogInterpSupRatio) + "), kp_sup=" +
               fmt(kp_sup) + " (<=" + fmt(pinned::kKatoPonceSupRatio) + "), rescale x1e+-2 -> " +
               fmt(li_lo) + "/" + fmt(li_hi) + " within 2x");
}

// ------------------------------------------------------------------ 10

SupportParams support_params() {
    SupportParams p;
    p.grid_n = 256;
    double pi = 3.14159265358979323846;
    p.blob_f = {{pi / 2, pi}, 0.3, 1.0};
    p.blob_g = {{3 * pi / 2, pi}, 0.3, -1.0};
    p.gamma = 0.05;
    p.s = 2.5;
    p.t_end = 1.0;
    p.threshold = 0.05;
    p.hs_growth_max = pinned::kSupportHsGrowthMax;
    p.solver.cfl = 0.4;
    p.solver.dt_max = 0.05;
    return p;
}

void criterion_10() {
    ExperimentReport rep = run_support(support_params());
    bool pass = !rep.aborted && rep.all_pass();
    std::string detail;
    for (const Verdict& v : rep.verdicts)
        detail += v.name + "=" + (v.pass ? "ok" : "BAD") + " ";
    const Table* sum = rep.table("summary");
    if (sum && !sum->rows.empty())
        detail += "sup_hs_ratio=" + fmt(sum->rows[0][3]) + " (<=" +
                  fmt(pinned::kSupportHsGrowthMax) + ")";
    report(10, pass, "two-blob support separation at 256^2", detail);
}

// ------------------------------------------------------------------ 11

std::string nonuniform_config_text() {
    return "experiment = nonuniform\nseed = 1\n[grid]\nn = 256\n[solver]\ncfl = 0.4\n"
           "dt_max = 0.05\n[params]\nn_list = 8, 16, 32, 64\ngamma = 0.01\ns = 2.5\n"
           "margin = 1.3\n";
}

std::string gamma_config_text() {
    return "experiment = gamma_comparison\nseed = 11\n[grid]\nn = 64\n[solver]\ncfl = 0.4\n"
           "dt_max = 0.02\nt_end = 1.0\n[params]\ngammas = 0.02, 0.01, 0.005\ns = 2.5\n"
           "kmin = 1\nkmax = 3\ndecay = 2\namplitude = 0.3\n";
}

std::string support_config_text() {
    return "experiment = support\n[grid]\nn = 256\n[solver]\ncfl = 0.4\ndt_max = 0.05\n"
           "t_end = 1.0\n[params]\nf_center = 1.5707963267948966, 3.141592653589793\n"
           "f_radius = 0.3\nf_amplitude = 1\n"
           "g_center = 4.71238898038469, 3.141592653589793\ng_radius = 0.3\n"
           "g_amplitude = -1\nthreshold = 0.05\ns = 2.5\ngamma = 0.05\n";
}

bool same_csv_bodies(const fs::path& a, const fs::path& b, std::string& why) {
    std::vector<fs::path> csvs;
    for (const auto& e : fs::directory_iterator(a))
        if (e.path().extension() == ".csv") csvs.push_back(e.path().filename());
    if (csvs.empty()) {
        why = "no CSV files under " + a.string();
        return false;
    }
    std::sort(csvs.begin(), csvs.end());
    for (const fs::path& name : csvs) {
        std::ifstream fa(a / name, std::ios::binary), fb(b / name, std::ios::binary);
        if (!fa || !fb) {
            why = name.string() + " missing on one side";
            return false;
        }
        std::string sa((std::istreambuf_iterator<char>(fa)), {});
        std::string sb((std::istreambuf_iterator<char>(fb)), {});
        if (sa != sb) {
            why = name.string() + " differs";
            return false;
        }
    }
    return true;
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
    std::string cmd = cli + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void criterion_11(const std::string& cli, const fs::path& work) {
    struct Job {
        std::string name, config;
    };
    std::vector<Job> jobs = {{"gamma_comparison", gamma_config_text()},
                             {"support", support_config_text()},
                             {"nonuniform", nonuniform_config_text()}};
    bool pass = true;
    std::string detail;
    for (const Job& job : jobs) {
        fs::path cfg = work / (job.name + ".cfg");
        std::ofstream(cfg) << job.config;
        fs::path out1 = work / (job.name + "_t1");
        fs::path out4 = work / (job.name + "_t4");
        int rc1 = run_cli(cli, "run --config " + cfg.string() + " --out " + out1.string() +
                                   " --threads 1",
                          work / (job.name + "_t1.log"));
        int rc4 = run_cli(cli, "run --config " + cfg.string() + " --out " + out4.string() +
                                   " --threads 4",
                          work / (job.name + "_t4.log"));
        std::string why;
        bool same = same_csv_bodies(out1, out4, why);
        if (rc1 != 0 || rc4 != 0 || !same) {
            pass = false;
            detail += job.name + ": rc=" + std::to_string(rc1) + "/" + std::to_string(rc4) +
                      (same ? "" : " " + why) + "; ";
        } else {
            detail += job.name + ": byte-identical; ";
        }
    }
    report(11, pass, "determinism across reruns and thread counts", detail);
}

// CLI contract smoke (exit codes); failures count toward the suite result.
void cli_exit_codes(const std::string& cli, const fs::path& work) {
    bool ok = true;
    std::string detail;
    auto expect = [&](const std::string& what, int got, int want) {
        if (got != want) {
            ok = false;
            detail += what + " got " + std::to_string(got) + " want " + std::to_string(want) + "; ";
        }
    };
    expect("version", run_cli(cli, "version", work / "v.log"), 0);

    fs::path good = work / "good.cfg";
    std::ofstream(good) << "experiment = convergence\n[grid]\nn = 32\n[solver]\nt_end = 0.25\n"
                           "[params]\ndt_list = 0.025, 0.0125\nwave_n = 2\ns = 2.5\ngamma = 0.1\n";
    expect("validate good", run_cli(cli, "validate --config " + good.string(), work / "vg.log"), 0);
    expect("run good", run_cli(cli, "run --config " + good.string() + " --out " +
                                        (work / "good_out").string(),
                               work / "rg.log"),
           0);

    fs::path bad = work / "bad.cfg";
    std::ofstream(bad) << "experiment = nonuniform\n[params]\ngamma = -0.1\n";
    expect("validate bad", run_cli(cli, "validate --config " + bad.string(), work / "vb.log"), 2);
    expect("run bad", run_cli(cli, "run --config " + bad.string(), work / "rb.log"), 2);
    expect("run missing", run_cli(cli, "run --config " + (work / "nope.cfg").string(),
                                  work / "rm.log"),
           4);

    std::cout << (ok ? "PASS" : "FAIL") << " cli exit codes: "
              << (detail.empty() ? "0/0/0/2/2/4 as specified" : detail) << "\n";
    if (!ok) ++g_failures;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    fs::path work = fs::temp_directory_path() / "logeuler_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    double err1 = criterion_1();
    criterion_2(err1);
    criterion_3();
    criterion_4();
    criterion_5(4);
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (!cli.empty()) {
        criterion_11(cli, work);
        cli_exit_codes(cli, work);
    } else {
        std::cout << "SKIP criterion 11: pass --cli <binary> to enable the end-to-end reruns\n";
        ++g_failures;
    }

    std::cout << (g_failures == 0 ? "ACCEPTANCE: all criteria passed\n"
                                  : "ACCEPTANCE: " + std::to_string(g_failures) + " failure(s)\n");
    return g_failures == 0 ? 0 : 1;
}
