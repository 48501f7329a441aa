#pragma once

#include <array>

#include "logeuler/spectral.hpp"

namespace logeuler {

// Spectral vorticity plus the constant mean drift of the torus velocity
// field. The drift is a free parameter of the vorticity formulation; it is
// what makes the boosted shear family an exact solution for every gamma.
struct FlowState {
    SpectralField theta_hat;
    std::array<double, 2> drift{0.0, 0.0};
    double time = 0.0;
    double gamma = 0.0;

    LogMultiplier multiplier() const { return LogMultiplier(gamma); }
};

// psi_k = -T_gamma(|k|^2) theta_k / |k|^2, psi_0 = 0 (mean-zero gauge).
// Rejects vorticity with |mean| > 1e-12.
SpectralField streamfunction(const SpectralField& theta_hat, const LogMultiplier& m);

// Spectra of the velocity components including the drift at k = 0.
std::array<SpectralField, 2> velocity_spectra(const FlowState& state);

// u = drift + (-d2 psi, d1 psi) in physical space.
std::array<RealField, 2> velocity_from_vorticity(const FlowState& state);

struct BiotSavartReport {
    double lhs = 0.0;   // ||u - drift||_{H^s}
    double rhs = 0.0;   // 2^{s/2} ||theta||_{H^{s-1},hom}
    double ratio = 0.0; // 0 for the zero field
};

// Discrete Biot-Savart bound with the explicit constant 2^{s/2}; holds
// term-wise since (1+|k|^2) <= 2|k|^2 for |k| >= 1 and T_gamma <= 1.
BiotSavartReport biot_savart_bound_check(const SpectralField& theta_hat,
                                         const LogMultiplier& m, double s);

} // namespace logeuler
