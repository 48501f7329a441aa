#include "logeuler/solutions.hpp"

#include <cmath>

namespace logeuler {

FlowState hm_exact_state(const HMFamilySpec& spec, double t, const GridPtr& grid) {
    if (spec.n < 1)
        throw std::invalid_argument("hm_exact_state: n must be >= 1");
    if (spec.n > grid->dealias_cutoff())
        throw std::invalid_argument("hm_exact_state: shear frequency not resolved (n > cutoff)");
    if (spec.omega != 1 && spec.omega != -1)
        throw std::invalid_argument("hm_exact_state: omega must be +1 or -1");
    if (!(spec.gamma >= 0.0))
        throw std::invalid_argument("hm_exact_state: gamma must be >= 0");

    FlowState state;
    state.theta_hat = SpectralField(grid);
    state.gamma = spec.gamma;
    state.time = t;
    state.drift = {0.0, spec.omega / static_cast<double>(spec.n)};

    // theta = n^{1-s} sin(n x2 - omega t): modes (0, +-n) rotating at rate omega.
    double amp = std::pow(static_cast<double>(spec.n), 1.0 - spec.s);
    Complex c = Complex(0.0, -0.5 * amp) * std::exp(Complex(0.0, -spec.omega * t));
    state.theta_hat.mode(0, spec.n) = c;
    state.theta_hat.mode(0, -spec.n) = std::conj(c);
    return state;
}

HMSeparation hm_separation_closed_form(int n, double s, double gamma, double t) {
    double nn = static_cast<double>(n);
    double T = multiplier_eval(LogMultiplier(gamma), nn * nn);
    double osc = 2.0 * T * T * std::sin(t) * std::sin(t) * std::pow(nn, -2.0 * s) *
                 std::pow(1.0 + nn * nn, s);
    HMSeparation sep;
    sep.data_separation_hs = 2.0 / nn;
    sep.velocity_separation_hs = std::sqrt(osc + 4.0 / (nn * nn));
    return sep;
}

namespace {

// splitmix64; fixed integer recurrence so phases never depend on platform
// float behavior.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double phase_for_mode(std::uint64_t seed, int k1, int k2) {
    std::uint64_t s = seed;
    s ^= 0x517cc1b727220a95ULL * static_cast<std::uint64_t>(static_cast<std::int64_t>(k1) + (1 << 20));
    s ^= 0x2545f4914f6cdd1dULL * static_cast<std::uint64_t>(static_cast<std::int64_t>(k2) + (1 << 21));
    std::uint64_t h = splitmix64(s);
    return Grid2D::two_pi() * static_cast<double>(h >> 11) * 0x1.0p-53;
}

} // namespace

SpectralField random_band_field(std::uint64_t seed, const GridPtr& grid, double kmin,
                                double kmax, double decay_exponent) {
    if (!(kmin >= 1.0))
        throw std::invalid_argument("random_band_field: kmin must be >= 1");
    const int n = grid->n();
    SpectralField F(grid);
    bool any = false;
    // Iterate canonical representatives (k2 > 0, or k2 == 0 and k1 > 0) and
    // mirror conjugates; Nyquist rows are left empty.
    for (int k1 = -n / 2 + 1; k1 <= n / 2 - 1; ++k1) {
        for (int k2 = 0; k2 <= n / 2 - 1; ++k2) {
            if (k2 == 0 && k1 <= 0) continue;
            double kk = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            if (kk < kmin || kk > kmax) continue;
            double mag = std::pow(kk, -decay_exponent);
            double phi = phase_for_mode(seed, k1, k2);
            Complex c = mag * Complex(std::cos(phi), std::sin(phi));
            F.mode(k1, k2) = c;
            F.mode(-k1, -k2) = std::conj(c);
            any = true;
        }
    }
    if (!any)
        throw std::invalid_argument("random_band_field: empty wavenumber band");
    return F;
}

RealField bump_blob_pair(const BlobSpec& f, const BlobSpec& g, const GridPtr& grid) {
    for (const BlobSpec* spec : {&f, &g}) {
        if (!(spec->radius > 0.0 && spec->radius < Grid2D::two_pi() / 4.0))
            throw std::invalid_argument("bump_blob_pair: radius must lie in (0, pi/2)");
    }
    auto torus_delta = [](double d) {
        double two_pi = Grid2D::two_pi();
        d = std::fmod(std::abs(d), two_pi);
        return std::min(d, two_pi - d);
    };
    double center_dist = std::hypot(torus_delta(f.center[0] - g.center[0]),
                                    torus_delta(f.center[1] - g.center[1]));
    if (center_dist <= f.radius + g.radius)
        throw std::invalid_argument("bump_blob_pair: blob supports overlap");

    RealField out(grid);
    const int n = grid->n();
    auto add_blob = [&](const BlobSpec& spec) {
        for (int a = 0; a < n; ++a) {
            double d1 = torus_delta(grid->x1(a) - spec.center[0]);
            if (d1 >= spec.radius) continue;
            for (int b = 0; b < n; ++b) {
                double d2 = torus_delta(grid->x2(b) - spec.center[1]);
                double rho_sq = (d1 * d1 + d2 * d2) / (spec.radius * spec.radius);
                if (rho_sq >= 1.0) continue;
                out.at(a, b) += spec.amplitude * std::exp(1.0 - 1.0 / (1.0 - rho_sq));
            }
        }
    };
    add_blob(f);
    add_blob(g);
    return out;
}

} // namespace logeuler
