#include "logeuler/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace logeuler {

namespace {

// FFTW planner calls are not thread-safe; plan creation is serialized and the
// plans themselves live in thread-local caches so concurrent sweep cases never
// share execution buffers. FFTW_ESTIMATE keeps the plan choice deterministic.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    int n = 0;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit PlanPair(int n_) : n(n_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        in = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
        out = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
        fwd = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(in);
        fftw_free(out);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

PlanPair& plans_for(int n) {
    thread_local std::map<int, std::unique_ptr<PlanPair>> cache;
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    return *it->second;
}

constexpr double kHermitianTol = 1e-10;

} // namespace

LogMultiplier::LogMultiplier(double g) : gamma(g) {
    if (!(g >= 0.0))
        throw std::invalid_argument("LogMultiplier: gamma must be >= 0");
}

double multiplier_eval(const LogMultiplier& m, double ksq) {
    if (!(ksq >= 0.0))
        throw std::invalid_argument("multiplier_eval: ksq must be >= 0");
    // log(e+ksq) = 1 + log1p(ksq/e), exact at ksq = 0.
    double l = 1.0 + std::log1p(ksq / 2.718281828459045235360287);
    return std::pow(l, -m.gamma);
}

SpectralField to_spectrum(const RealField& f) {
    if (!all_finite(f))
        throw std::invalid_argument("to_spectrum: non-finite samples");
    const int n = f.grid->n();
    PlanPair& p = plans_for(n);
    const std::size_t total = static_cast<std::size_t>(n) * n;
    for (std::size_t i = 0; i < total; ++i) {
        p.in[i][0] = f.samples[i];
        p.in[i][1] = 0.0;
    }
    fftw_execute(p.fwd);
    SpectralField F(f.grid);
    const double scale = 1.0 / total;
    for (std::size_t i = 0; i < total; ++i)
        F.coeffs[i] = Complex(p.out[i][0] * scale, p.out[i][1] * scale);
    return F;
}

RealField to_physical(const SpectralField& F) {
    if (!all_finite(F))
        throw std::invalid_argument("to_physical: non-finite coefficients");
    if (hermitian_defect(F) > kHermitianTol)
        throw std::invalid_argument("to_physical: Hermitian symmetry violated beyond 1e-10");
    const int n = F.grid->n();
    PlanPair& p = plans_for(n);
    const std::size_t total = static_cast<std::size_t>(n) * n;
    for (std::size_t i = 0; i < total; ++i) {
        p.in[i][0] = F.coeffs[i].real();
        p.in[i][1] = F.coeffs[i].imag();
    }
    fftw_execute(p.bwd);
    RealField f(F.grid);
    for (std::size_t i = 0; i < total; ++i)
        f.samples[i] = p.out[i][0];
    return f;
}

SpectralField apply_multiplier(const SpectralField& F, const LogMultiplier& m) {
    const Grid2D& g = *F.grid;
    const int n = g.n();
    SpectralField out(F.grid);
    for (int a = 0; a < n; ++a) {
        double k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            double k2 = g.wavenumber(b);
            out.coeffs[g.flat(a, b)] =
                F.coeffs[g.flat(a, b)] * multiplier_eval(m, k1 * k1 + k2 * k2);
        }
    }
    return out;
}

SpectralField spectral_derivative(const SpectralField& F, int axis) {
    if (axis != 1 && axis != 2)
        throw std::invalid_argument("spectral_derivative: axis must be 1 or 2");
    const Grid2D& g = *F.grid;
    const int n = g.n();
    SpectralField out(F.grid);
    for (int a = 0; a < n; ++a) {
        int k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            int k2 = g.wavenumber(b);
            int k = (axis == 1) ? k1 : k2;
            if (k == -n / 2) continue; // Nyquist zeroed so d/dx of real stays real
            out.coeffs[g.flat(a, b)] = Complex(0.0, static_cast<double>(k)) * F.coeffs[g.flat(a, b)];
        }
    }
    return out;
}

SpectralField dealias(const SpectralField& F) {
    const Grid2D& g = *F.grid;
    SpectralField out = F;
    const auto& mask = g.dealias_mask();
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        if (!mask[i]) out.coeffs[i] = Complex{};
    return out;
}

} // namespace logeuler
