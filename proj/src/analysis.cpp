#include "logeuler/analysis.hpp"
#include "logeuler/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace logeuler {

namespace {

// Kahan-compensated accumulator; keeps norm reductions deterministic and
// accurate for large lattices.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double abs2(Complex z) { return z.real() * z.real() + z.imag() * z.imag(); }

} // namespace

double sobolev_norm(const SpectralField& F, const NormSpec& spec) {
    const Grid2D& g = *F.grid;
    const int n = g.n();
    KahanSum acc;
    for (int a = 0; a < n; ++a) {
        double k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            double k2 = g.wavenumber(b);
            double ksq = k1 * k1 + k2 * k2;
            double w;
            if (spec.homogeneous) {
                if (ksq == 0.0) continue;
                w = std::pow(ksq, spec.s);
            } else {
                w = std::pow(1.0 + ksq, spec.s);
            }
            acc.add(w * abs2(F.coeffs[g.flat(a, b)]));
        }
    }
    return std::sqrt(acc.sum);
}

double lp_norm(const RealField& f, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.samples) m = std::max(m, std::abs(v));
        return m;
    }
    KahanSum acc;
    for (double v : f.samples) acc.add(std::pow(std::abs(v), p));
    double mean = acc.sum / f.samples.size();
    return std::pow(mean, 1.0 / p);
}

double lp_bump(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    auto h = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    double a = h(2.0 - r);
    return a / (a + h(r - 1.0));
}

SpectralField lp_projection(const SpectralField& F, const LPBand& band) {
    if (!(band.M > 0.0))
        throw std::invalid_argument("lp_projection: M must be > 0");
    const Grid2D& g = *F.grid;
    const int n = g.n();
    SpectralField out(F.grid);
    for (int a = 0; a < n; ++a) {
        double k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            double k2 = g.wavenumber(b);
            double r = std::sqrt(k1 * k1 + k2 * k2);
            double w = 0.0;
            switch (band.kind) {
                case LPBand::Kind::Low: w = lp_bump(r / band.M); break;
                case LPBand::Kind::High: w = 1.0 - lp_bump(r / band.M); break;
                case LPBand::Kind::Annulus:
                    w = lp_bump(r / band.M) - lp_bump(2.0 * r / band.M);
                    break;
            }
            out.coeffs[g.flat(a, b)] = w * F.coeffs[g.flat(a, b)];
        }
    }
    return out;
}

InequalityReport bernstein_report(const SpectralField& F, double M, double s, double q) {
    InequalityReport rep;
    std::ostringstream os;
    if (q == 2.0) {
        SpectralField PF = lp_projection(F, {LPBand::Kind::Annulus, M});
        double l2 = sobolev_norm(PF, {0.0, false});
        double grad_s = sobolev_norm(PF, {s, true});
        double lo = std::min(std::pow(M / 2.0, s), std::pow(2.0 * M, s));
        double hi = std::max(std::pow(M / 2.0, s), std::pow(2.0 * M, s));
        rep.lhs = grad_s;
        rep.rhs = hi * l2;
        if (l2 == 0.0) {
            rep.ratio = 0.0;
            rep.pass = true; // empty band
        } else {
            rep.ratio = grad_s / l2;
            rep.pass = (rep.ratio >= lo) && (rep.ratio <= hi);
        }
        os << "bernstein(2,2) M=" << M << " s=" << s << " bracket=[" << lo << "," << hi << "]";
    } else if (std::isinf(q)) {
        SpectralField PF = lp_projection(F, {LPBand::Kind::Low, M});
        double l2 = sobolev_norm(PF, {0.0, false});
        double linf = lp_norm(to_physical(PF), std::numeric_limits<double>::infinity());
        rep.lhs = linf;
        rep.rhs = M * l2;
        rep.ratio = (rep.rhs > 0.0) ? rep.lhs / rep.rhs : 0.0;
        rep.pass = true; // the (2,inf) constant is recorded, not asserted
        os << "bernstein(2,inf) M=" << M << " C=" << rep.ratio;
    } else {
        throw std::invalid_argument("bernstein_report: supported pairs are (2,2) and (2,inf)");
    }
    rep.inputs_summary = os.str();
    return rep;
}

InequalityReport log_interp_report(const RealField& f, const LogMultiplier& m, double p) {
    if (!(p > 2.0))
        throw std::invalid_argument("log_interp_report: p must be > 2");
    SpectralField fh = to_spectrum(f);
    if (std::abs(fh.coeffs[0]) > 1e-12)
        throw std::invalid_argument("log_interp_report: f must be mean-zero");

    SpectralField psi = streamfunction(fh, m);
    // Velocity gradient entries d_i u_j with u = grad^perp psi.
    double lhs = 0.0;
    for (int ui = 0; ui < 2; ++ui) {
        SpectralField u = (ui == 0) ? (-1.0) * spectral_derivative(psi, 2)
                                    : spectral_derivative(psi, 1);
        for (int axis = 1; axis <= 2; ++axis) {
            RealField d = to_physical(spectral_derivative(u, axis));
            lhs = std::max(lhs, lp_norm(d, std::numeric_limits<double>::infinity()));
        }
    }

    double f_inf = lp_norm(f, std::numeric_limits<double>::infinity());
    double f_2 = lp_norm(f, 2.0);
    RealField fx = to_physical(spectral_derivative(fh, 1));
    RealField fy = to_physical(spectral_derivative(fh, 2));
    RealField grad_mag(f.grid);
    for (std::size_t i = 0; i < grad_mag.samples.size(); ++i)
        grad_mag.samples[i] = std::hypot(fx.samples[i], fy.samples[i]);
    double grad_p = lp_norm(grad_mag, p);

    InequalityReport rep;
    rep.lhs = lhs;
    rep.rhs = 1.0 + f_inf * std::log2(10.0 + f_2 + std::pow(grad_p, p));
    rep.ratio = rep.lhs / std::max(rep.rhs, 1e-300);
    rep.pass = true;
    std::ostringstream os;
    os << "log_interp gamma=" << m.gamma << " p=" << p << " |f|_inf=" << f_inf;
    rep.inputs_summary = os.str();
    return rep;
}

namespace {

// J^s multiplier (1+|k|^2)^{s/2} applied coefficient-wise.
SpectralField bessel_potential(const SpectralField& F, double s) {
    const Grid2D& g = *F.grid;
    const int n = g.n();
    SpectralField out(F.grid);
    for (int a = 0; a < n; ++a) {
        double k1 = g.wavenumber(a);
        for (int b = 0; b < n; ++b) {
            double k2 = g.wavenumber(b);
            out.coeffs[g.flat(a, b)] =
                std::pow(1.0 + k1 * k1 + k2 * k2, s / 2.0) * F.coeffs[g.flat(a, b)];
        }
    }
    return out;
}

int max_resolved_band(const SpectralField& F, double tol = 0.0) {
    const Grid2D& g = *F.grid;
    const int n = g.n();
    int kmax = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (std::abs(F.coeffs[g.flat(a, b)]) > tol)
                kmax = std::max(kmax,
                                std::max(std::abs(g.wavenumber(a)), std::abs(g.wavenumber(b))));
    return kmax;
}

} // namespace

InequalityReport kato_ponce_report(const RealField& f, const RealField& g, double s) {
    if (!(s > 0.0))
        throw std::invalid_argument("kato_ponce_report: s must be > 0");
    SpectralField fh = to_spectrum(f);
    SpectralField gh = to_spectrum(g);
    const int n = f.grid->n();
    if (max_resolved_band(fh, 1e-14) >= n / 4 || max_resolved_band(gh, 1e-14) >= n / 4)
        throw std::invalid_argument(
            "kato_ponce_report: inputs must be band-limited below Nyquist/2");

    RealField jsg = to_physical(bessel_potential(gh, s));
    RealField fg(f.grid);
    RealField f_jsg(f.grid);
    for (std::size_t i = 0; i < fg.samples.size(); ++i) {
        fg.samples[i] = f.samples[i] * g.samples[i];
        f_jsg.samples[i] = f.samples[i] * jsg.samples[i];
    }
    SpectralField commutator = bessel_potential(to_spectrum(fg), s) - to_spectrum(f_jsg);

    double lhs = sobolev_norm(commutator, {0.0, false});
    double jsf_2 = sobolev_norm(fh, {s, false}); // ||J^s f||_2 is the H^s norm
    double g_inf = lp_norm(g, std::numeric_limits<double>::infinity());
    RealField fx = to_physical(spectral_derivative(fh, 1));
    RealField fy = to_physical(spectral_derivative(fh, 2));
    double grad_f_inf = 0.0;
    for (std::size_t i = 0; i < fx.samples.size(); ++i)
        grad_f_inf = std::max(grad_f_inf, std::hypot(fx.samples[i], fy.samples[i]));
    double jsm1_g_2 = sobolev_norm(gh, {s - 1.0, false});

    InequalityReport rep;
    rep.lhs = lhs;
    rep.rhs = jsf_2 * g_inf + grad_f_inf * jsm1_g_2;
    rep.ratio = rep.lhs / std::max(rep.rhs, 1e-300);
    rep.pass = true;
    std::ostringstream os;
    os << "kato_ponce s=" << s;
    rep.inputs_summary = os.str();
    return rep;
}

double multiplier_distance(const LogMultiplier& m, double kmax) {
    if (!(kmax >= 1.0))
        throw std::invalid_argument("multiplier_distance: kmax must be >= 1");
    return 1.0 - multiplier_eval(m, kmax * kmax);
}

namespace {

double torus_delta(double d) {
    double two_pi = Grid2D::two_pi();
    d = std::fmod(std::abs(d), two_pi);
    return std::min(d, two_pi - d);
}

} // namespace

SupportSummary support_summary(const RealField& f, double threshold_rel) {
    if (!(threshold_rel > 0.0 && threshold_rel < 1.0))
        throw std::invalid_argument("support_summary: threshold_rel must be in (0,1)");
    const Grid2D& g = *f.grid;
    const int n = g.n();
    SupportSummary out;
    double f_inf = lp_norm(f, std::numeric_limits<double>::infinity());
    if (f_inf == 0.0) return out;
    out.threshold_abs = threshold_rel * f_inf;

    std::vector<int> label(f.samples.size(), -1);
    auto above = [&](int a, int b) { return std::abs(f.at(a, b)) > out.threshold_abs; };

    std::vector<std::vector<std::array<int, 2>>> comp_cells;
    for (int a0 = 0; a0 < n; ++a0) {
        for (int b0 = 0; b0 < n; ++b0) {
            if (!above(a0, b0) || label[g.flat(a0, b0)] >= 0) continue;
            int id = static_cast<int>(out.components.size());
            SupportComponent comp;
            comp_cells.emplace_back();
            // BFS with unwrapped coordinates so wrap-around components get a
            // contiguous bounding box.
            std::deque<std::array<int, 3>> queue; // a, b, plus unwrapped (ua,ub) packed below
            std::deque<std::array<int, 2>> unwrapped;
            label[g.flat(a0, b0)] = id;
            queue.push_back({a0, b0, 0});
            unwrapped.push_back({a0, b0});
            double x1_min = g.x1(a0), x1_max = g.x1(a0);
            double x2_min = g.x2(b0), x2_max = g.x2(b0);
            while (!queue.empty()) {
                auto [a, b, _] = queue.front();
                auto [ua, ub] = unwrapped.front();
                queue.pop_front();
                unwrapped.pop_front();
                comp.cells += 1;
                comp_cells.back().push_back({a, b});
                x1_min = std::min(x1_min, g.dx() * ua);
                x1_max = std::max(x1_max, g.dx() * ua);
                x2_min = std::min(x2_min, g.dx() * ub);
                x2_max = std::max(x2_max, g.dx() * ub);
                const int da[4] = {1, -1, 0, 0};
                const int db[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int na = (a + da[d] + n) % n;
                    int nb = (b + db[d] + n) % n;
                    if (!above(na, nb) || label[g.flat(na, nb)] >= 0) continue;
                    label[g.flat(na, nb)] = id;
                    queue.push_back({na, nb, 0});
                    unwrapped.push_back({ua + da[d], ub + db[d]});
                }
            }
            comp.x1_min = x1_min;
            comp.x1_max = x1_max;
            comp.x2_min = x2_min;
            comp.x2_max = x2_max;
            comp.area = comp.cells * g.dx() * g.dx();
            out.components.push_back(comp);
        }
    }

    if (out.components.size() >= 2) {
        // Min distance is attained at boundary cells (cells with a neighbor
        // outside their component).
        auto boundary = [&](const std::vector<std::array<int, 2>>& cells, int id) {
            std::vector<std::array<int, 2>> edge;
            for (auto [a, b] : cells) {
                const int da[4] = {1, -1, 0, 0};
                const int db[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int na = (a + da[d] + n) % n;
                    int nb = (b + db[d] + n) % n;
                    if (label[g.flat(na, nb)] != id) {
                        edge.push_back({a, b});
                        break;
                    }
                }
            }
            return edge;
        };
        double best = std::numeric_limits<double>::infinity();
        std::vector<std::vector<std::array<int, 2>>> edges(out.components.size());
        for (std::size_t i = 0; i < out.components.size(); ++i)
            edges[i] = boundary(comp_cells[i], static_cast<int>(i));
        for (std::size_t i = 0; i < edges.size(); ++i) {
            for (std::size_t j = i + 1; j < edges.size(); ++j) {
                for (auto [a1, b1] : edges[i]) {
                    for (auto [a2, b2] : edges[j]) {
                        double d1 = torus_delta(g.x1(a1) - g.x1(a2));
                        double d2 = torus_delta(g.x2(b1) - g.x2(b2));
                        best = std::min(best, std::hypot(d1, d2));
                    }
                }
            }
        }
        out.min_pairwise_distance = best;
    }
    return out;
}

} // namespace logeuler
