#include "logeuler/velocity.hpp"
#include "logeuler/analysis.hpp"

#include <cmath>

namespace logeuler {

SpectralField streamfunction(const SpectralField& theta_hat, const LogMultiplier& m) {
    // mean-zero gauge; the tolerance scales with the field so blow-up-sized
    // states still reach the blow-up report instead of failing here
    double scale = 1.0;
    for (const Complex& c : theta_hat.coeffs) scale = std::max(scale, std::abs(c));
    if (std::abs(theta_hat.coeffs[0]) > 1e-12 * scale)
        throw std::invalid_argument("streamfunction: vorticity mean mode exceeds 1e-12");
    const Grid2D& g = *theta_hat.grid;
    const int n = g.n();
    SpectralField psi(theta_hat.grid);
    for (int a = 0; a < n; ++a) {
        double k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            double k2 = g.wavenumber(b);
            double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) continue;
            psi.coeffs[g.flat(a, b)] =
                -multiplier_eval(m, ksq) / ksq * theta_hat.coeffs[g.flat(a, b)];
        }
    }
    return psi;
}

std::array<SpectralField, 2> velocity_spectra(const FlowState& state) {
    SpectralField psi = streamfunction(state.theta_hat, state.multiplier());
    SpectralField u1 = (-1.0) * spectral_derivative(psi, 2);
    SpectralField u2 = spectral_derivative(psi, 1);
    u1.coeffs[0] += state.drift[0];
    u2.coeffs[0] += state.drift[1];
    return {std::move(u1), std::move(u2)};
}

std::array<RealField, 2> velocity_from_vorticity(const FlowState& state) {
    auto [u1, u2] = velocity_spectra(state);
    return {to_physical(u1), to_physical(u2)};
}

BiotSavartReport biot_savart_bound_check(const SpectralField& theta_hat,
                                         const LogMultiplier& m, double s) {
    if (!(s > 2.0))
        throw std::invalid_argument("biot_savart_bound_check: s must be > 2");
    FlowState state{theta_hat, {0.0, 0.0}, 0.0, m.gamma};
    auto [u1, u2] = velocity_spectra(state);
    NormSpec hs{s, false};
    double lhs = std::hypot(sobolev_norm(u1, hs), sobolev_norm(u2, hs));
    double rhs = std::pow(2.0, s / 2.0) * sobolev_norm(theta_hat, {s - 1.0, true});
    BiotSavartReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.ratio = (rhs > 0.0) ? lhs / rhs : 0.0;
    return rep;
}

} // namespace logeuler
