#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace logeuler {

// Uniform periodic grid on [0,2pi)^2 with the integer wavenumber lattice
// {0,1,...,n/2-1,-n/2,...,-1} per axis and the 2/3-rule dealias mask
// keep(k) <=> max(|k1|,|k2|) <= floor(n/3).
class Grid2D {
public:
    explicit Grid2D(int n);

    int n() const { return n_; }
    int size() const { return n_ * n_; }
    double length() const { return two_pi(); }
    double dx() const { return two_pi() / n_; }

    static double two_pi() { return 6.283185307179586476925287; }

    // Integer wavenumber for lattice index a in [0,n).
    int wavenumber(int a) const { return wavenumbers_[a]; }
    const std::vector<int>& wavenumbers() const { return wavenumbers_; }

    int dealias_cutoff() const { return cutoff_; }
    bool dealias_keep(int a, int b) const { return mask_[flat(a, b)] != 0; }
    const std::vector<std::uint8_t>& dealias_mask() const { return mask_; }

    // Row-major flat index; axis-1 index is the row.
    int flat(int a, int b) const { return a * n_ + b; }

    double x1(int a) const { return two_pi() * a / n_; }
    double x2(int b) const { return two_pi() * b / n_; }

private:
    int n_;
    int cutoff_;
    std::vector<int> wavenumbers_;
    std::vector<std::uint8_t> mask_;
};

using GridPtr = std::shared_ptr<const Grid2D>;

// Rejects odd or too-small n.
GridPtr make_grid(int n);

} // namespace logeuler
