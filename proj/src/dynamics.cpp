#include "logeuler/dynamics.hpp"
#include "logeuler/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace logeuler {

void SolverConfig::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw std::invalid_argument("SolverConfig: cfl must lie in (0,1]");
    if (!(dt_max > 0.0))
        throw std::invalid_argument("SolverConfig: dt_max must be > 0");
    if (fixed_dt && !(*fixed_dt > 0.0))
        throw std::invalid_argument("SolverConfig: fixed_dt must be > 0");
    if (!(t_end > 0.0))
        throw std::invalid_argument("SolverConfig: t_end must be > 0");
    if (diagnostic_stride < 1)
        throw std::invalid_argument("SolverConfig: diagnostic_stride must be >= 1");
}

SpectralField rhs_tendency(const FlowState& state, bool dealias_enabled) {
    const SpectralField theta_d =
        dealias_enabled ? dealias(state.theta_hat) : state.theta_hat;
    SpectralField psi = streamfunction(theta_d, state.multiplier());

    RealField u1 = to_physical((-1.0) * spectral_derivative(psi, 2));
    RealField u2 = to_physical(spectral_derivative(psi, 1));
    RealField tx = to_physical(spectral_derivative(theta_d, 1));
    RealField ty = to_physical(spectral_derivative(theta_d, 2));

    RealField advection(state.theta_hat.grid);
    for (std::size_t i = 0; i < advection.samples.size(); ++i)
        advection.samples[i] = (u1.samples[i] + state.drift[0]) * tx.samples[i] +
                               (u2.samples[i] + state.drift[1]) * ty.samples[i];
    if (!all_finite(advection))
        throw BlowupError("rhs_tendency: non-finite advection product");

    SpectralField out = to_spectrum(advection);
    if (dealias_enabled) out = dealias(out);
    for (Complex& c : out.coeffs) c = -c;
    return out;
}

double cfl_dt(const FlowState& state, const SolverConfig& config) {
    if (config.fixed_dt) return *config.fixed_dt;
    auto [u1, u2] = velocity_from_vorticity(state);
    double max_speed = 0.0;
    for (std::size_t i = 0; i < u1.samples.size(); ++i)
        max_speed = std::max(max_speed, std::hypot(u1.samples[i], u2.samples[i]));
    double dx = state.theta_hat.grid->dx();
    return std::min(config.dt_max, config.cfl * dx / std::max(max_speed, 1e-12));
}

SpectralField rk4_increment(const FlowState& state, double dt, bool dealias_enabled) {
    FlowState stage = state;
    SpectralField k1 = rhs_tendency(state, dealias_enabled);
    stage.theta_hat = state.theta_hat + (dt / 2.0) * k1;
    SpectralField k2 = rhs_tendency(stage, dealias_enabled);
    stage.theta_hat = state.theta_hat + (dt / 2.0) * k2;
    SpectralField k3 = rhs_tendency(stage, dealias_enabled);
    stage.theta_hat = state.theta_hat + dt * k3;
    SpectralField k4 = rhs_tendency(stage, dealias_enabled);
    SpectralField incr = k1 + k4;
    for (std::size_t i = 0; i < incr.coeffs.size(); ++i)
        incr.coeffs[i] = (dt / 6.0) * (incr.coeffs[i] + 2.0 * (k2.coeffs[i] + k3.coeffs[i]));
    return incr;
}

namespace {

// Compensated in-place update theta += incr; keeps the long-run roundoff of
// the state accumulation below the RK4 truncation error at small dt.
void kahan_add(SpectralField& theta, SpectralField& comp, const SpectralField& incr) {
    for (std::size_t i = 0; i < theta.coeffs.size(); ++i) {
        Complex y = incr.coeffs[i] - comp.coeffs[i];
        Complex t = theta.coeffs[i] + y;
        comp.coeffs[i] = (t - theta.coeffs[i]) - y;
        theta.coeffs[i] = t;
    }
}

} // namespace

FlowState step_rk4(const FlowState& state, double dt, bool dealias_enabled) {
    if (!(dt > 0.0))
        throw std::invalid_argument("step_rk4: dt must be > 0");
    FlowState next = state;
    next.theta_hat = state.theta_hat + rk4_increment(state, dt, dealias_enabled);
    next.time = state.time + dt;
    if (!all_finite(next.theta_hat))
        throw BlowupError("step_rk4: non-finite coefficients after step");
    return next;
}

IntegrationResult integrate(const FlowState& state0, const SolverConfig& config,
                            const std::vector<double>& probes) {
    config.validate();
    std::vector<double> pending = probes;
    std::sort(pending.begin(), pending.end());
    pending.erase(std::unique(pending.begin(), pending.end(),
                              [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
                  pending.end());
    for (double p : pending)
        if (!(p >= 0.0 && p <= config.t_end + 1e-12))
            throw std::invalid_argument("integrate: probe outside [0, t_end]");

    IntegrationResult result;
    FlowState state = state0;
    SpectralField comp(state.theta_hat.grid);
    result.records.push_back(conserved_diagnostics(state, config.p_list, config.s_list));
    std::size_t next_probe = 0;
    while (next_probe < pending.size() && pending[next_probe] <= state.time + 1e-14) {
        result.snapshots.push_back(state);
        result.snapshot_times.push_back(pending[next_probe]);
        ++next_probe;
    }

    long step_count = 0;
    const double eps = 1e-12;
    // the clock is compensated too: a biased rounding of t += dt would shift
    // the clipped final step and show up as a phase error at small dt
    double time_comp = 0.0;
    while (state.time < config.t_end - eps) {
        double stop = (next_probe < pending.size())
                          ? std::min(pending[next_probe], config.t_end)
                          : config.t_end;
        double dt = cfl_dt(state, config);
        bool clipped = false;
        if (state.time + dt >= stop - eps) {
            dt = stop - state.time;
            clipped = true;
        }
        FlowState next = state;
        bool blew_up = false;
        try {
            SpectralField incr = rk4_increment(state, dt, config.dealias_enabled);
            kahan_add(next.theta_hat, comp, incr);
            if (clipped) {
                next.time = stop;
                time_comp = 0.0;
            } else {
                double y = dt - time_comp;
                double t = state.time + y;
                time_comp = (t - state.time) - y;
                next.time = t;
            }
            if (!all_finite(next.theta_hat)) blew_up = true;
        } catch (const BlowupError&) {
            blew_up = true;
        }
        if (blew_up) {
            result.aborted = true;
            break;
        }
        state = std::move(next);
        ++step_count;

        bool at_probe = clipped && next_probe < pending.size() &&
                        std::abs(state.time - pending[next_probe]) <= eps;
        bool at_end = state.time >= config.t_end - eps;
        if (at_probe) {
            result.snapshots.push_back(state);
            result.snapshot_times.push_back(state.time);
            ++next_probe;
        }
        if (step_count % config.diagnostic_stride == 0 || at_probe || at_end)
            result.records.push_back(conserved_diagnostics(state, config.p_list, config.s_list));
    }
    result.final_state = std::move(state);
    return result;
}

DiagnosticsRecord conserved_diagnostics(const FlowState& state,
                                        const std::vector<double>& p_list,
                                        const std::vector<double>& s_list) {
    DiagnosticsRecord rec;
    rec.time = state.time;
    rec.l2_theta = sobolev_norm(state.theta_hat, {0.0, false});

    RealField theta = to_physical(state.theta_hat);
    rec.linf_theta = lp_norm(theta, std::numeric_limits<double>::infinity());
    for (double p : p_list) rec.lp_theta.push_back(lp_norm(theta, p));
    for (double s : s_list) rec.hs_theta.push_back(sobolev_norm(state.theta_hat, {s, false}));

    const Grid2D& g = *state.theta_hat.grid;
    const int n = g.n();
    LogMultiplier m = state.multiplier();
    double energy = 0.0, comp = 0.0;
    for (int a = 0; a < n; ++a) {
        double k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            double k2 = g.wavenumber(b);
            double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) continue;
            Complex c = state.theta_hat.coeffs[g.flat(a, b)];
            double term = 0.5 * multiplier_eval(m, ksq) *
                          (c.real() * c.real() + c.imag() * c.imag()) / ksq;
            double y = term - comp;
            double t = energy + y;
            comp = (t - energy) - y;
            energy = t;
        }
    }
    rec.energy = energy;

    auto [u1, u2] = velocity_from_vorticity(state);
    for (std::size_t i = 0; i < u1.samples.size(); ++i)
        rec.max_speed = std::max(rec.max_speed, std::hypot(u1.samples[i], u2.samples[i]));
    return rec;
}

} // namespace logeuler
