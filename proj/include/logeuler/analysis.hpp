#pragma once

#include <array>
#include <string>

#include "logeuler/spectral.hpp"

namespace logeuler {

struct NormSpec {
    double s = 0.0;
    bool homogeneous = false;
};

// Frequency band relative to the smooth bump phi: phi(r)=1 for r<=1, 0 for
// r>=2, exp(-1/x)-glued in between.
struct LPBand {
    enum class Kind { Low, Annulus, High };
    Kind kind = Kind::Low;
    double M = 1.0;
};

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    std::string inputs_summary;
    bool pass = true;
};

// Sobolev norm: sqrt(sum_k w(k)|c_k|^2) with w = (1+|k|^2)^s, or |k|^{2s}
// skipping k=0 when homogeneous. Fixed-order compensated sum.
double sobolev_norm(const SpectralField& F, const NormSpec& spec);

// Grid quadrature with normalized measure dx/(2pi)^2; p = inf gives max|f|.
double lp_norm(const RealField& f, double p);

// The smooth LP bump evaluated at r >= 0.
double lp_bump(double r);

SpectralField lp_projection(const SpectralField& F, const LPBand& band);

// (p,q)=(2,2): dyadic bracket (M/2)^s ||P_M f||_2 <= |||grad|^s P_M f||_2 <= (2M)^s ||P_M f||_2.
// (p,q)=(2,inf): records ||P_{<=M} f||_inf <= C M ||P_{<=M} f||_2 without asserting C.
InequalityReport bernstein_report(const SpectralField& F, double M, double s, double q);

// lhs = max grid value over the four entries of grad(grad^perp Lap^{-1} T f);
// rhs = 1 + ||f||_inf log2(10 + ||f||_2 + ||grad f||_p^p). Requires mean-zero f, p > 2.
InequalityReport log_interp_report(const RealField& f, const LogMultiplier& m, double p);

// Kato-Ponce commutator at p = 2: lhs = ||J^s(fg) - f J^s g||_2,
// rhs = ||J^s f||_2 ||g||_inf + ||grad f||_inf ||J^{s-1} g||_2.
// Requires both inputs band-limited below Nyquist/2 so the product is exact.
InequalityReport kato_ponce_report(const RealField& f, const RealField& g, double s);

// sup over the resolved band of |T_gamma - 1| = 1 - (log(e+kmax^2))^{-gamma}.
double multiplier_distance(const LogMultiplier& m, double kmax);

struct SupportComponent {
    // Bounding box in unwrapped coordinates (may extend past 2pi when the
    // component wraps around the torus).
    double x1_min = 0, x1_max = 0, x2_min = 0, x2_max = 0;
    int cells = 0;
    double area = 0.0;
};

struct SupportSummary {
    std::vector<SupportComponent> components;
    double min_pairwise_distance = 0.0; // 0 when fewer than two components
    double threshold_abs = 0.0;
};

// Connected components of {|f| > threshold_rel * ||f||_inf} under periodic
// 4-adjacency; empty summary for the zero field.
SupportSummary support_summary(const RealField& f, double threshold_rel);

} // namespace logeuler
