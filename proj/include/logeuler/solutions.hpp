#pragma once

#include <cstdint>

#include "logeuler/velocity.hpp"

namespace logeuler {

// Galilean-boosted shear family: theta = n^{1-s} sin(n x2 - omega t) with
// drift (0, omega/n). An exact solution for every gamma; the omega = +-1
// pair realizes the non-uniform-dependence data (vorticities coincide at
// t = 0, velocities separate like |sin t|).
struct HMFamilySpec {
    int n = 1;         // shear frequency
    double s = 2.5;    // Sobolev index in the amplitude normalization n^{1-s}
    int omega = 1;     // drift sign, +1 or -1
    double gamma = 0.0;
};

FlowState hm_exact_state(const HMFamilySpec& spec, double t, const GridPtr& grid);

struct HMSeparation {
    double velocity_separation_hs = 0.0;
    double data_separation_hs = 0.0; // constant 2/n drift difference
};

// Closed-form H^s separation of the omega = +-1 velocity pair:
// sqrt(2 T^2 sin^2(t) n^{-2s} (1+n^2)^s + 4/n^2) with T = T_gamma(n^2).
HMSeparation hm_separation_closed_form(int n, double s, double gamma, double t);

// Mean-zero Hermitian field with |c_k| = |k|^{-decay_exponent} on
// kmin <= |k| <= kmax and phases drawn from an integer-based generator
// (identical coefficients for identical seeds on every platform).
SpectralField random_band_field(std::uint64_t seed, const GridPtr& grid, double kmin,
                                double kmax, double decay_exponent);

struct BlobSpec {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 0.5;    // < pi/2 so the blob fits well inside the torus
    double amplitude = 1.0;
};

// Sum of two compactly supported C^inf bumps
// A exp(1 - 1/(1 - (|x-c|/r)^2)) with exact zero outside radius r.
// Rejects blob pairs whose supports overlap on the torus.
RealField bump_blob_pair(const BlobSpec& f, const BlobSpec& g, const GridPtr& grid);

} // namespace logeuler
