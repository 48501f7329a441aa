#pragma once

#include <complex>
#include <vector>

#include "logeuler/grid.hpp"

namespace logeuler {

using Complex = std::complex<double>;

// Real samples at the grid points, row-major (x1 index is the row).
struct RealField {
    GridPtr grid;
    std::vector<double> samples;

    RealField() = default;
    explicit RealField(GridPtr g) : grid(std::move(g)), samples(grid->size(), 0.0) {}

    double& at(int a, int b) { return samples[grid->flat(a, b)]; }
    double at(int a, int b) const { return samples[grid->flat(a, b)]; }
};

// Full-lattice Fourier coefficients under the convention
//   c_k = n^{-2} sum_j f(x_j) e^{-i k.x_j},
// so Parseval reads n^{-2} sum_j |f_j|^2 = sum_k |c_k|^2.
struct SpectralField {
    GridPtr grid;
    std::vector<Complex> coeffs;

    SpectralField() = default;
    explicit SpectralField(GridPtr g) : grid(std::move(g)), coeffs(grid->size(), Complex{}) {}

    Complex& at(int a, int b) { return coeffs[grid->flat(a, b)]; }
    Complex at(int a, int b) const { return coeffs[grid->flat(a, b)]; }

    // Coefficient addressed by integer wavenumbers (k1,k2).
    Complex& mode(int k1, int k2);
    Complex mode(int k1, int k2) const;
};

bool all_finite(const RealField& f);
bool all_finite(const SpectralField& f);

// Largest deviation of c_{-k} - conj(c_k) relative to the largest |c_k|
// (0 for the zero field); Nyquist rows count via their self-conjugacy.
double hermitian_defect(const SpectralField& f);

// axpy-style helpers used by the integrator and the experiments.
SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);

} // namespace logeuler
