#include "logeuler/field.hpp"

#include <cmath>

namespace logeuler {

namespace {
int lattice_index(const Grid2D& g, int k) {
    int n = g.n();
    if (k < -n / 2 || k >= n / 2)
        throw std::out_of_range("mode index outside the wavenumber lattice");
    return k >= 0 ? k : k + n;
}
} // namespace

Complex& SpectralField::mode(int k1, int k2) {
    return coeffs[grid->flat(lattice_index(*grid, k1), lattice_index(*grid, k2))];
}

Complex SpectralField::mode(int k1, int k2) const {
    return coeffs[grid->flat(lattice_index(*grid, k1), lattice_index(*grid, k2))];
}

bool all_finite(const RealField& f) {
    for (double v : f.samples)
        if (!std::isfinite(v)) return false;
    return true;
}

bool all_finite(const SpectralField& f) {
    for (const Complex& c : f.coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double hermitian_defect(const SpectralField& f) {
    const Grid2D& g = *f.grid;
    const int n = g.n();
    double scale = 0.0;
    for (const Complex& c : f.coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int a = 0; a < n; ++a) {
        // -k maps to (n-a)%n; the Nyquist row a = n/2 maps to itself.
        int am = (n - a) % n;
        for (int b = 0; b < n; ++b) {
            int bm = (n - b) % n;
            Complex d = f.coeffs[g.flat(am, bm)] - std::conj(f.coeffs[g.flat(a, b)]);
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst / scale;
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    SpectralField r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    SpectralField r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] -= b.coeffs[i];
    return r;
}

SpectralField operator*(double s, const SpectralField& a) {
    SpectralField r = a;
    for (Complex& c : r.coeffs) c *= s;
    return r;
}

RealField operator+(const RealField& a, const RealField& b) {
    RealField r = a;
    for (std::size_t i = 0; i < r.samples.size(); ++i) r.samples[i] += b.samples[i];
    return r;
}

RealField operator-(const RealField& a, const RealField& b) {
    RealField r = a;
    for (std::size_t i = 0; i < r.samples.size(); ++i) r.samples[i] -= b.samples[i];
    return r;
}

RealField operator*(double s, const RealField& a) {
    RealField r = a;
    for (double& v : r.samples) v *= s;
    return r;
}

} // namespace logeuler
