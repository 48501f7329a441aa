#include "logeuler/experiments.hpp"
#include "logeuler/analysis.hpp"
#include "logeuler/version.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace logeuler {

bool ExperimentReport::all_pass() const {
    for (const Verdict& v : verdicts)
        if (!v.pass) return false;
    return !aborted;
}

const Table* ExperimentReport::table(const std::string& name) const {
    for (const Table& t : tables)
        if (t.name == name) return &t;
    return nullptr;
}

const Verdict* ExperimentReport::verdict(const std::string& name) const {
    for (const Verdict& v : verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

double velocity_separation_hs(const FlowState& a, const FlowState& b, double s) {
    auto ua = velocity_spectra(a);
    auto ub = velocity_spectra(b);
    NormSpec spec{s, false};
    double d1 = sobolev_norm(ua[0] - ub[0], spec);
    double d2 = sobolev_norm(ua[1] - ub[1], spec);
    return std::hypot(d1, d2);
}

double resolved_kmax(const Grid2D& grid) {
    double c = grid.dealias_cutoff();
    return std::hypot(c, c);
}

SpectralField normalize_to(const SpectralField& F, const NormSpec& spec, double target) {
    double norm = sobolev_norm(F, spec);
    if (norm == 0.0) return F;
    return (target / norm) * F;
}

double comparison_bound_eval(double diff0, double multiplier_dist, double sup_hs_uT,
                             double sup_hs1_theta_e, double t, double c0) {
    return c0 * (diff0 + multiplier_dist * sup_hs1_theta_e * sup_hs1_theta_e) *
           std::exp(t * (sup_hs_uT + sup_hs1_theta_e));
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Work-stealing-free index loop; each case writes only its own slot, so the
// assembled report is identical for every thread count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t use = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    pool.reserve(use);
    for (std::size_t i = 0; i < use; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void kahan_add_field(SpectralField& theta, SpectralField& comp, const SpectralField& incr) {
    for (std::size_t i = 0; i < theta.coeffs.size(); ++i) {
        Complex y = incr.coeffs[i] - comp.coeffs[i];
        Complex t = theta.coeffs[i] + y;
        comp.coeffs[i] = (t - theta.coeffs[i]) - y;
        theta.coeffs[i] = t;
    }
}

// Advance two states in lockstep with a shared clipped step so the pair is
// compared on identical solver times. The observer runs at t = 0, every
// diagnostic_stride steps, at each probe, and at t_end. Returns false when
// either state blows up.
bool integrate_pair(FlowState& a, FlowState& b, const SolverConfig& config,
                    std::vector<double> probes,
                    const std::function<void(const FlowState&, const FlowState&)>& observe) {
    config.validate();
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end(),
                             [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
                 probes.end());
    SpectralField comp_a(a.theta_hat.grid), comp_b(b.theta_hat.grid);
    observe(a, b);
    std::size_t next_probe = 0;
    const double eps = 1e-12;
    while (next_probe < probes.size() && probes[next_probe] <= eps) ++next_probe;
    long step_count = 0;
    double time_comp = 0.0; // compensated clock, as in integrate()
    while (a.time < config.t_end - eps) {
        double stop = (next_probe < probes.size())
                          ? std::min(probes[next_probe], config.t_end)
                          : config.t_end;
        double dt = std::min(cfl_dt(a, config), cfl_dt(b, config));
        bool clipped = false;
        if (a.time + dt >= stop - eps) {
            dt = stop - a.time;
            clipped = true;
        }
        try {
            SpectralField incr_a = rk4_increment(a, dt, config.dealias_enabled);
            SpectralField incr_b = rk4_increment(b, dt, config.dealias_enabled);
            kahan_add_field(a.theta_hat, comp_a, incr_a);
            kahan_add_field(b.theta_hat, comp_b, incr_b);
        } catch (const BlowupError&) {
            return false;
        }
        double t;
        if (clipped) {
            t = stop;
            time_comp = 0.0;
        } else {
            double y = dt - time_comp;
            t = a.time + y;
            time_comp = (t - a.time) - y;
        }
        a.time = b.time = t;
        if (!all_finite(a.theta_hat) || !all_finite(b.theta_hat)) return false;
        ++step_count;
        bool at_probe = clipped && next_probe < probes.size() &&
                        std::abs(t - probes[next_probe]) <= eps;
        if (at_probe) ++next_probe;
        bool at_end = t >= config.t_end - eps;
        if (step_count % config.diagnostic_stride == 0 || at_probe || at_end) observe(a, b);
    }
    return true;
}

std::string describe(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

ExperimentReport run_convergence(const ConvergenceParams& params, int threads) {
    auto t0 = Clock::now();
    ExperimentReport rep;
    rep.experiment = "convergence";
    rep.version = kVersion;
    if (params.grid_sizes.empty() || params.dt_list.empty())
        throw std::invalid_argument("run_convergence: empty grid_sizes or dt_list");

    struct Case {
        int grid_n;
        double dt;
        double error = 0.0;
        bool aborted = false;
    };
    std::vector<Case> cases;
    for (int gn : params.grid_sizes)
        for (double dt : params.dt_list) cases.push_back({gn, dt});

    parallel_for(cases.size(), threads, [&](std::size_t i) {
        Case& c = cases[i];
        GridPtr grid = make_grid(c.grid_n);
        HMFamilySpec spec{params.wave_n, params.s, +1, params.gamma};
        FlowState state0 = hm_exact_state(spec, 0.0, grid);
        SolverConfig sc;
        sc.fixed_dt = c.dt;
        sc.t_end = params.t_end;
        sc.diagnostic_stride = 1 << 30;
        IntegrationResult res = integrate(state0, sc);
        if (res.aborted) {
            c.aborted = true;
            return;
        }
        FlowState exact = hm_exact_state(spec, params.t_end, grid);
        double diff = sobolev_norm(res.final_state.theta_hat - exact.theta_hat, {0.0, false});
        double ref = sobolev_norm(exact.theta_hat, {0.0, false});
        c.error = diff / ref;
    });

    Table errors{"errors", {"grid_n", "dt", "rel_l2_error"}, {}};
    for (const Case& c : cases) {
        if (c.aborted) rep.aborted = true;
        errors.rows.push_back({static_cast<double>(c.grid_n), c.dt, c.error});
    }
    rep.tables.push_back(errors);

    for (int gn : params.grid_sizes) {
        std::vector<std::pair<double, double>> pts; // (dt, error), dt descending
        for (const Case& c : cases)
            if (c.grid_n == gn) pts.emplace_back(c.dt, c.error);
        std::sort(pts.begin(), pts.end(), std::greater<>());
        if (pts.size() >= 2) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (auto [dt, err] : pts) {
                double x = std::log(dt), y = std::log(std::max(err, 1e-300));
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            double m = static_cast<double>(pts.size());
            double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            rep.verdicts.push_back({"temporal_order_g" + std::to_string(gn),
                                    slope >= 3.5 && slope <= 4.5, slope, 4.0,
                                    "least-squares error order over the dt list"});
        }
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (std::abs(pts[i].first / pts[i + 1].first - 2.0) > 1e-9) continue;
            double ratio = pts[i].second / std::max(pts[i + 1].second, 1e-300);
            rep.verdicts.push_back({"richardson_g" + std::to_string(gn) + "_" + std::to_string(i),
                                    ratio >= 12.0 && ratio <= 20.0, ratio, 16.0,
                                    "error ratio for dt=" + describe(pts[i].first) + " vs dt/2"});
        }
    }
    if (params.grid_sizes.size() >= 2) {
        double dt_min = *std::min_element(params.dt_list.begin(), params.dt_list.end());
        double emax = 0, emin = std::numeric_limits<double>::infinity();
        for (const Case& c : cases)
            if (c.dt == dt_min) {
                emax = std::max(emax, c.error);
                emin = std::min(emin, c.error);
            }
        double spread = (emin > 0) ? emax / emin : 1.0;
        rep.verdicts.push_back({"spatial_floor", spread <= 1.5, spread, 1.5,
                                "error spread across grid sizes at the smallest dt"});
    }
    rep.wall_time_s = seconds_since(t0);
    return rep;
}

ExperimentReport run_continuity(const ContinuityParams& params, int threads) {
    auto t0 = Clock::now();
    ExperimentReport rep;
    rep.experiment = "continuity";
    rep.version = kVersion;
    rep.seed = params.seed;
    if (!(params.s > 2.0))
        throw std::invalid_argument("run_continuity: s must be > 2");

    GridPtr grid = params.data ? params.data->grid : make_grid(params.grid_n);
    SpectralField base =
        params.data ? *params.data
                    : normalize_to(random_band_field(params.seed, grid, params.kmin,
                                                     params.kmax, params.decay),
                                   {0.0, false}, params.amplitude);
    SpectralField eta =
        params.perturbation
            ? *params.perturbation
            : normalize_to(random_band_field(params.seed + 1, grid, params.kmin, params.kmax,
                                             params.decay),
                           {params.s, false}, 1.0);

    struct Case {
        double delta;
        std::vector<std::array<double, 2>> series; // (t, diff_hs)
        double sup = 0.0;
        bool aborted = false;
    };
    std::vector<Case> cases;
    for (double d : params.deltas) cases.push_back({d, {}, 0.0, false});

    parallel_for(cases.size(), threads, [&](std::size_t i) {
        Case& c = cases[i];
        FlowState a{base, {0.0, 0.0}, 0.0, params.gamma};
        FlowState b{base + c.delta * eta, {0.0, 0.0}, 0.0, params.gamma};
        SolverConfig sc = params.solver;
        sc.t_end = params.t_end;
        bool ok = integrate_pair(a, b, sc, {}, [&](const FlowState& x, const FlowState& y) {
            double d = sobolev_norm(x.theta_hat - y.theta_hat, {params.s, false});
            c.series.push_back({x.time, d});
            c.sup = std::max(c.sup, d);
        });
        c.aborted = !ok;
    });

    Table diffs{"differences", {"delta", "t", "diff_hs"}, {}};
    Table summary{"summary", {"delta", "sup_diff_hs"}, {}};
    for (const Case& c : cases) {
        if (c.aborted) rep.aborted = true;
        for (auto [t, d] : c.series) diffs.rows.push_back({c.delta, t, d});
        summary.rows.push_back({c.delta, c.sup});
    }
    rep.tables.push_back(std::move(diffs));
    rep.tables.push_back(std::move(summary));

    std::vector<const Case*> order;
    for (const Case& c : cases) order.push_back(&c);
    std::sort(order.begin(), order.end(),
              [](const Case* x, const Case* y) { return x->delta > y->delta; });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        bool mono = order[i + 1]->sup <= order[i]->sup * (1.0 + 1e-12);
        rep.verdicts.push_back({"monotone_" + std::to_string(i), mono, order[i + 1]->sup,
                                order[i]->sup,
                                "sup diff non-increasing below delta=" + describe(order[i]->delta)});
        if (std::abs(order[i]->delta / order[i + 1]->delta - 10.0) <= 1e-9) {
            double factor = order[i]->sup / std::max(order[i + 1]->sup, 1e-300);
            bool ok = factor >= params.decade_factor_lo && factor <= params.decade_factor_hi;
            rep.verdicts.push_back({"decade_factor_" + std::to_string(i), ok, factor, 10.0,
                                    "sup-diff shrink per delta decade"});
        }
    }
    rep.wall_time_s = seconds_since(t0);
    return rep;
}

namespace {

// Pure shear data (spectrum confined to one axis) is steady for every gamma,
// so the Euler/regularized trajectories coincide and scaling fits degenerate.
bool is_shear_data(const SpectralField& F) {
    const Grid2D& g = *F.grid;
    const int n = g.n();
    double off_axis1 = 0.0, off_axis2 = 0.0, scale = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double mag = std::abs(F.coeffs[g.flat(a, b)]);
            scale = std::max(scale, mag);
            if (g.wavenumber(a) != 0) off_axis1 = std::max(off_axis1, mag);
            if (g.wavenumber(b) != 0) off_axis2 = std::max(off_axis2, mag);
        }
    return scale > 0.0 && (off_axis1 <= 1e-14 * scale || off_axis2 <= 1e-14 * scale);
}

} // namespace

ExperimentReport run_gamma_comparison(const GammaComparisonParams& params, int threads) {
    auto t0 = Clock::now();
    ExperimentReport rep;
    rep.experiment = "gamma_comparison";
    rep.version = kVersion;
    rep.seed = params.seed;

    GridPtr grid = params.data ? params.data->grid : make_grid(params.grid_n);
    SpectralField base =
        params.data ? *params.data
                    : normalize_to(random_band_field(params.seed, grid, params.kmin,
                                                     params.kmax, params.decay),
                                   {0.0, false}, params.amplitude);
    bool shear = is_shear_data(base);
    double kmax = resolved_kmax(*grid);

    struct Case {
        double gamma;
        double dist = 0.0;
        std::vector<std::array<double, 3>> series; // (t, d_hs, envelope)
        double d_end = 0.0;
        bool envelope_ok = true;
        bool aborted = false;
    };
    std::vector<Case> cases;
    for (double g : params.gammas) {
        Case c;
        c.gamma = g;
        cases.push_back(std::move(c));
    }

    parallel_for(cases.size(), threads, [&](std::size_t i) {
        Case& c = cases[i];
        c.dist = multiplier_distance(LogMultiplier(c.gamma), kmax);
        FlowState euler{base, {0.0, 0.0}, 0.0, 0.0};
        FlowState reg{base, {0.0, 0.0}, 0.0, c.gamma};
        SolverConfig sc = params.solver;
        sc.t_end = params.t_end;
        double sup_u_reg = 0.0, sup_theta_euler = 0.0;
        bool ok = integrate_pair(
            euler, reg, sc, {}, [&](const FlowState& e, const FlowState& r) {
                auto ur = velocity_spectra(r);
                double u_hs = std::hypot(sobolev_norm(ur[0], {params.s, false}),
                                         sobolev_norm(ur[1], {params.s, false}));
                sup_u_reg = std::max(sup_u_reg, u_hs);
                sup_theta_euler = std::max(sup_theta_euler,
                                           sobolev_norm(e.theta_hat, {params.s + 1.0, false}));
                double d = sobolev_norm(e.theta_hat - r.theta_hat, {params.s, false});
                double env = comparison_bound_eval(0.0, c.dist, sup_u_reg, sup_theta_euler,
                                                   e.time, params.envelope_c0);
                if (d > env) c.envelope_ok = false;
                c.series.push_back({e.time, d, env});
                c.d_end = d;
            });
        c.aborted = !ok;
    });

    Table comparison{"comparison", {"gamma", "t", "d_hs", "envelope", "multiplier_dist"}, {}};
    Table summary{"summary", {"gamma", "multiplier_dist", "d_end"}, {}};
    for (const Case& c : cases) {
        if (c.aborted) rep.aborted = true;
        for (auto [t, d, env] : c.series) comparison.rows.push_back({c.gamma, t, d, env, c.dist});
        summary.rows.push_back({c.gamma, c.dist, c.d_end});
    }
    rep.tables.push_back(std::move(comparison));
    rep.tables.push_back(std::move(summary));

    if (shear) {
        double dmax = 0.0;
        for (const Case& c : cases) dmax = std::max(dmax, c.d_end);
        rep.verdicts.push_back({"degenerate_shear_excluded", dmax <= 1e-12, dmax, 1e-12,
                                "shear data: d(t) must vanish; scaling fits skipped"});
    } else {
        std::vector<const Case*> order;
        for (const Case& c : cases) order.push_back(&c);
        std::sort(order.begin(), order.end(),
                  [](const Case* x, const Case* y) { return x->gamma > y->gamma; });
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            if (std::abs(order[i]->gamma / order[i + 1]->gamma - 2.0) > 1e-9) continue;
            double ratio = order[i]->d_end / std::max(order[i + 1]->d_end, 1e-300);
            bool ok = ratio >= params.ratio_lo && ratio <= params.ratio_hi;
            rep.verdicts.push_back({"halving_ratio_" + std::to_string(i), ok, ratio, 2.0,
                                    "d(t_end) ratio gamma=" + describe(order[i]->gamma) +
                                        " vs half"});
        }
        for (const Case& c : cases)
            rep.verdicts.push_back({"envelope_gamma_" + describe(c.gamma), c.envelope_ok, c.d_end,
                                    0.0, "d(t) <= C0 Gronwall envelope at every record"});
    }
    rep.wall_time_s = seconds_since(t0);
    return rep;
}

ExperimentReport run_nonuniform(const NonuniformParams& params, int threads) {
    auto t0 = Clock::now();
    ExperimentReport rep;
    rep.experiment = "nonuniform";
    rep.version = kVersion;
    if (!(params.s > 2.0))
        throw std::invalid_argument("run_nonuniform: s must be > 2");
    std::vector<double> probes = params.probes;
    if (probes.empty()) {
        double pi = 3.14159265358979323846;
        probes = {pi / 8, pi / 4, 3 * pi / 8, pi / 2};
    }
    std::sort(probes.begin(), probes.end());
    double t_end = probes.back();
    GridPtr grid = make_grid(params.grid_n);

    struct Row {
        double t, measured;
    };
    struct Case {
        int n = 0;
        std::vector<Row> rows;
        bool aborted = false;
    };
    std::vector<Case> cases;
    for (int n : params.n_list) {
        Case c;
        c.n = n;
        cases.push_back(std::move(c));
    }

    parallel_for(cases.size(), threads, [&](std::size_t i) {
        Case& c = cases[i];
        FlowState a = hm_exact_state({c.n, params.s, +1, params.gamma}, 0.0, grid);
        FlowState b = hm_exact_state({c.n, params.s, -1, params.gamma}, 0.0, grid);
        SolverConfig sc = params.solver;
        sc.t_end = t_end;
        sc.diagnostic_stride = 1 << 30; // rows at t=0 and the probes only
        bool ok = integrate_pair(a, b, sc, probes,
                                 [&](const FlowState& x, const FlowState& y) {
                                     c.rows.push_back(
                                         {x.time, velocity_separation_hs(x, y, params.s)});
                                 });
        c.aborted = !ok;
    });

    Table sep{"separation", {"n", "t", "measured", "closed_form", "sin_t", "data_sep"}, {}};
    for (const Case& c : cases) {
        if (c.aborted) rep.aborted = true;
        for (const Row& r : c.rows) {
            HMSeparation cf = hm_separation_closed_form(c.n, params.s, params.gamma, r.t);
            sep.rows.push_back({static_cast<double>(c.n), r.t, r.measured,
                                cf.velocity_separation_hs, std::abs(std::sin(r.t)),
                                cf.data_separation_hs});
        }
    }
    rep.tables.push_back(sep);

    for (const Case& c : cases) {
        if (c.rows.empty()) continue;
        double init = c.rows.front().measured;
        double expect = 2.0 / c.n;
        rep.verdicts.push_back({"initial_sep_n" + std::to_string(c.n),
                                std::abs(init - expect) <= 1e-6, init, expect,
                                "t=0 separation equals the 2/n drift gap"});
        for (const Row& r : c.rows) {
            if (r.t <= 0.0) continue;
            double sint = std::abs(std::sin(r.t));
            rep.verdicts.push_back({"lower_bound_n" + std::to_string(c.n) + "_t" + describe(r.t),
                                    r.measured >= params.margin * sint, r.measured,
                                    params.margin * sint, "separation >= margin*|sin t|"});
            double cf = hm_separation_closed_form(c.n, params.s, params.gamma, r.t)
                            .velocity_separation_hs;
            double rel = std::abs(r.measured - cf) / cf;
            rep.verdicts.push_back({"closed_form_n" + std::to_string(c.n) + "_t" + describe(r.t),
                                    rel <= params.closed_form_rtol, rel, params.closed_form_rtol,
                                    "measured within rtol of the closed form"});
        }
    }
    bool shrink = !params.n_list.empty();
    for (std::size_t i = 0; i + 1 < params.n_list.size(); ++i)
        shrink = shrink && (2.0 / params.n_list[i + 1] < 2.0 / params.n_list[i]);
    rep.verdicts.push_back({"data_sep_decreasing", shrink,
                            params.n_list.empty() ? 0.0 : 2.0 / params.n_list.back(), 0.0,
                            "initial data separation decreases along n_list"});
    rep.wall_time_s = seconds_since(t0);
    return rep;
}

ExperimentReport run_support(const SupportParams& params, int threads) {
    (void)threads; // single case; the solver loop itself stays sequential
    auto t0 = Clock::now();
    ExperimentReport rep;
    rep.experiment = "support";
    rep.version = kVersion;

    GridPtr grid = make_grid(params.grid_n);
    RealField blobs = bump_blob_pair(params.blob_f, params.blob_g, grid);
    SpectralField theta0 = to_spectrum(blobs);
    theta0.coeffs[0] = Complex{}; // mean removed before use as vorticity
    RealField theta0_phys = to_physical(theta0);

    SupportSummary init = support_summary(theta0_phys, params.threshold);
    if (init.components.size() != 2)
        throw std::invalid_argument("run_support: initial data must have exactly two components");
    const double D = init.min_pairwise_distance;
    const double dx = grid->dx();
    const double hs0 = sobolev_norm(theta0, {params.s, false});
    const double theta0_l1 = lp_norm(theta0_phys, 1.0);
    const double theta0_inf = lp_norm(theta0_phys, std::numeric_limits<double>::infinity());

    FlowState state{theta0, {0.0, 0.0}, 0.0, params.gamma};
    SolverConfig sc = params.solver;
    sc.t_end = params.t_end;

    Table track{"support",
                {"t", "components", "min_distance", "min_distance_bound", "hs_ratio", "max_speed"},
                {}};
    bool count_ok = true, dist_ok = true, box_ok = true;
    double max_speed_seen = 0.0, sup_hs_ratio = 0.0;

    auto center = [](const SupportComponent& c) {
        double two_pi = Grid2D::two_pi();
        return std::array<double, 2>{std::fmod((c.x1_min + c.x1_max) / 2.0 + two_pi, two_pi),
                                     std::fmod((c.x2_min + c.x2_max) / 2.0 + two_pi, two_pi)};
    };
    auto torus_dist = [](std::array<double, 2> p, std::array<double, 2> q) {
        double two_pi = Grid2D::two_pi();
        double d1 = std::fmod(std::abs(p[0] - q[0]), two_pi);
        double d2 = std::fmod(std::abs(p[1] - q[1]), two_pi);
        d1 = std::min(d1, two_pi - d1);
        d2 = std::min(d2, two_pi - d2);
        return std::hypot(d1, d2);
    };

    auto observe = [&](const FlowState& s) {
        DiagnosticsRecord rec = conserved_diagnostics(s, {}, {});
        max_speed_seen = std::max(max_speed_seen, rec.max_speed);
        RealField phys = to_physical(s.theta_hat);
        SupportSummary sum = support_summary(phys, params.threshold);
        double hs_ratio = sobolev_norm(s.theta_hat, {params.s, false}) / hs0;
        sup_hs_ratio = std::max(sup_hs_ratio, hs_ratio);
        double bound = D - 2.0 * s.time * max_speed_seen - 3.0 * dx;
        track.rows.push_back({s.time, static_cast<double>(sum.components.size()),
                              sum.min_pairwise_distance, bound, hs_ratio, rec.max_speed});
        if (sum.components.size() != 2) {
            count_ok = false;
            return;
        }
        if (sum.min_pairwise_distance < bound) dist_ok = false;
        double margin = max_speed_seen * s.time + 3.0 * dx;
        for (const SupportComponent& c : sum.components) {
            double best = std::numeric_limits<double>::infinity();
            const SupportComponent* match = nullptr;
            for (const SupportComponent& c0 : init.components) {
                double d = torus_dist(center(c), center(c0));
                if (d < best) {
                    best = d;
                    match = &c0;
                }
            }
            bool center_ok = best <= margin;
            bool size_ok =
                (c.x1_max - c.x1_min) <= (match->x1_max - match->x1_min) + 2.0 * margin &&
                (c.x2_max - c.x2_min) <= (match->x2_max - match->x2_min) + 2.0 * margin;
            if (!center_ok || !size_ok) box_ok = false;
        }
    };

    observe(state);
    SpectralField comp(grid);
    const double eps = 1e-12;
    long step_count = 0;
    double time_comp = 0.0;
    while (state.time < sc.t_end - eps && !rep.aborted) {
        double dt = cfl_dt(state, sc);
        bool clipped = false;
        if (state.time + dt >= sc.t_end - eps) {
            dt = sc.t_end - state.time;
            clipped = true;
        }
        try {
            SpectralField incr = rk4_increment(state, dt, sc.dealias_enabled);
            kahan_add_field(state.theta_hat, comp, incr);
        } catch (const BlowupError&) {
            rep.aborted = true;
            break;
        }
        if (clipped) {
            state.time = sc.t_end;
            time_comp = 0.0;
        } else {
            double y = dt - time_comp;
            double t = state.time + y;
            time_comp = (t - state.time) - y;
            state.time = t;
        }
        if (!all_finite(state.theta_hat)) {
            rep.aborted = true;
            break;
        }
        ++step_count;
        if (step_count % sc.diagnostic_stride == 0 || state.time >= sc.t_end - eps)
            observe(state);
    }

    double c0_hat = max_speed_seen / (theta0_l1 + theta0_inf);
    Table summary{"summary", {"c0_hat", "initial_distance", "max_speed", "sup_hs_ratio"}, {}};
    summary.rows.push_back({c0_hat, D, max_speed_seen, sup_hs_ratio});
    rep.tables.push_back(std::move(track));
    rep.tables.push_back(std::move(summary));

    rep.verdicts.push_back({"component_count", count_ok, count_ok ? 2.0 : 0.0, 2.0,
                            "exactly two components at every record"});
    rep.verdicts.push_back({"min_distance", dist_ok, 0.0, 0.0,
                            "min distance >= D - 2 t max|u| - 3 dx at every record"});
    rep.verdicts.push_back({"box_containment", box_ok, 0.0, 0.0,
                            "components stay inside the transported initial boxes"});
    rep.verdicts.push_back({"hs_growth", sup_hs_ratio <= params.hs_growth_max, sup_hs_ratio,
                            params.hs_growth_max, "sup_t H^s growth below the frozen bound"});
    rep.wall_time_s = seconds_since(t0);
    return rep;
}

} // namespace logeuler
