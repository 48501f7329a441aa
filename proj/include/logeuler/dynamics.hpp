#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "logeuler/velocity.hpp"

namespace logeuler {

// Signals a non-finite state during time integration (the system only
// guarantees local existence; the solver aborts and reports).
struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    double cfl = 0.4;                 // in (0,1]
    double dt_max = 0.05;
    std::optional<double> fixed_dt;   // overrides the CFL policy
    double t_end = 1.0;
    bool dealias_enabled = true;
    int diagnostic_stride = 1;
    std::vector<double> p_list{4.0};  // extra Lebesgue norms to record
    std::vector<double> s_list{};     // extra Sobolev norms to record

    void validate() const;
};

struct DiagnosticsRecord {
    double time = 0.0;
    double l2_theta = 0.0;
    double linf_theta = 0.0;
    std::vector<double> lp_theta;
    double energy = 0.0; // E = 1/2 sum_{k!=0} T_gamma(|k|^2) |theta_k|^2 / |k|^2
    std::vector<double> hs_theta;
    double max_speed = 0.0;
};

// Spectrum of -(u.grad)theta: pseudospectral product of the dealiased
// velocity and vorticity gradient, transformed back and dealiased.
SpectralField rhs_tendency(const FlowState& state, bool dealias_enabled = true);

// dt = min(dt_max, cfl dx / max(||u||_inf, 1e-12)); fixed_dt wins when set.
double cfl_dt(const FlowState& state, const SolverConfig& config);

// One classical RK4 step; drift and gamma are carried unchanged.
FlowState step_rk4(const FlowState& state, double dt, bool dealias_enabled = true);

// The raw RK4 update dt/6 (k1 + 2k2 + 2k3 + k4), for compensated marchers.
SpectralField rk4_increment(const FlowState& state, double dt, bool dealias_enabled = true);

struct IntegrationResult {
    FlowState final_state;
    std::vector<DiagnosticsRecord> records;
    std::vector<FlowState> snapshots;
    std::vector<double> snapshot_times;
    bool aborted = false;
};

// March to t_end with diagnostics every diagnostic_stride steps and exactly
// at the probe times (steps are clipped, never interpolated). A blow-up
// aborts the march and returns the last valid state and records.
IntegrationResult integrate(const FlowState& state0, const SolverConfig& config,
                            const std::vector<double>& probes = {});

DiagnosticsRecord conserved_diagnostics(const FlowState& state,
                                        const std::vector<double>& p_list,
                                        const std::vector<double>& s_list);

} // namespace logeuler
