#include "logeuler/grid.hpp"

namespace logeuler {

Grid2D::Grid2D(int n) : n_(n) {
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("Grid2D: n must be even and >= 8, got " + std::to_string(n));
    cutoff_ = n / 3;
    wavenumbers_.resize(n);
    for (int a = 0; a < n; ++a)
        wavenumbers_[a] = (a < n / 2) ? a : a - n;
    mask_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        int k1 = std::abs(wavenumbers_[a]);
        for (int b = 0; b < n; ++b) {
            int k2 = std::abs(wavenumbers_[b]);
            mask_[flat(a, b)] = (std::max(k1, k2) <= cutoff_) ? 1 : 0;
        }
    }
}

GridPtr make_grid(int n) { return std::make_shared<const Grid2D>(n); }

} // namespace logeuler
