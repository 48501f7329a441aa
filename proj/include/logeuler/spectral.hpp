#pragma once

#include "logeuler/field.hpp"

namespace logeuler {

// Log-regularizing Fourier multiplier T_gamma(|k|^2) = (log(e+|k|^2))^{-gamma}.
// gamma = 0 is the identity (classical Euler limit).
struct LogMultiplier {
    double gamma = 0.0;

    explicit LogMultiplier(double g);
    LogMultiplier() = default;
};

// (log(e+ksq))^{-gamma}; exactly 1 at ksq = 0 and for gamma = 0.
double multiplier_eval(const LogMultiplier& m, double ksq);

// Forward transform; rejects non-finite samples.
SpectralField to_spectrum(const RealField& f);

// Inverse transform; rejects Hermitian-symmetry defects above 1e-10 and
// discards the (sub-tolerance) imaginary residue.
RealField to_physical(const SpectralField& F);

// Diagonal action c_k -> T_gamma(k1^2+k2^2) c_k.
SpectralField apply_multiplier(const SpectralField& F, const LogMultiplier& m);

// c_k -> i k_axis c_k with the Nyquist row zeroed (odd-derivative convention).
SpectralField spectral_derivative(const SpectralField& F, int axis);

// Zero all coefficients outside the 2/3-rule mask.
SpectralField dealias(const SpectralField& F);

} // namespace logeuler
