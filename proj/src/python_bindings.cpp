// Python bindings: numpy-array views of the spectral core plus the solver,
// analysis, solution families, and the config-driven experiment runner.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "logeuler/analysis.hpp"
#include "logeuler/config.hpp"
#include "logeuler/report_io.hpp"
#include "logeuler/version.hpp"

namespace py = pybind11;
using namespace logeuler;

namespace {

GridPtr grid_for(py::ssize_t rows, py::ssize_t cols) {
    if (rows != cols) throw std::invalid_argument("field arrays must be square");
    return make_grid(static_cast<int>(rows));
}

RealField real_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2D array");
    RealField f(grid_for(a.shape(0), a.shape(1)));
    std::copy(a.data(), a.data() + f.samples.size(), f.samples.begin());
    return f;
}

SpectralField spectral_from_array(
    const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2D array");
    SpectralField F(grid_for(a.shape(0), a.shape(1)));
    std::copy(a.data(), a.data() + F.coeffs.size(), F.coeffs.begin());
    return F;
}

py::array_t<double> array_from_real(const RealField& f) {
    const int n = f.grid->n();
    py::array_t<double> out({n, n});
    std::copy(f.samples.begin(), f.samples.end(), out.mutable_data());
    return out;
}

py::array_t<Complex> array_from_spectral(const SpectralField& F) {
    const int n = F.grid->n();
    py::array_t<Complex> out({n, n});
    std::copy(F.coeffs.begin(), F.coeffs.end(), out.mutable_data());
    return out;
}

// FlowState view with a numpy-backed vorticity spectrum.
struct PyState {
    py::array_t<Complex> theta;
    std::array<double, 2> drift{0.0, 0.0};
    double time = 0.0;
    double gamma = 0.0;

    FlowState to_state() const { return {spectral_from_array(theta), drift, time, gamma}; }
    static PyState from_state(const FlowState& s) {
        return {array_from_spectral(s.theta_hat), s.drift, s.time, s.gamma};
    }
};

SolverConfig solver_config(double cfl, double dt_max, std::optional<double> fixed_dt,
                           double t_end, bool dealias_enabled, int stride) {
    SolverConfig cfg;
    cfg.cfl = cfl;
    cfg.dt_max = dt_max;
    cfg.fixed_dt = fixed_dt;
    cfg.t_end = t_end;
    cfg.dealias_enabled = dealias_enabled;
    cfg.diagnostic_stride = stride;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pseudospectral toolkit for the log-regularized 2D Euler system";
    m.attr("__version__") = kVersion;

    py::class_<PyState>(m, "FlowState")
        .def(py::init([](py::array_t<Complex> theta, std::array<double, 2> drift, double time,
                         double gamma) {
                 PyState s;
                 s.theta = std::move(theta);
                 s.drift = drift;
                 s.time = time;
                 s.gamma = gamma;
                 return s;
             }),
             py::arg("theta"), py::arg("drift") = std::array<double, 2>{0.0, 0.0},
             py::arg("time") = 0.0, py::arg("gamma") = 0.0)
        .def_readwrite("theta", &PyState::theta)
        .def_readwrite("drift", &PyState::drift)
        .def_readwrite("time", &PyState::time)
        .def_readwrite("gamma", &PyState::gamma);

    m.def("dealias_cutoff", [](int n) { return make_grid(n)->dealias_cutoff(); }, py::arg("n"));

    m.def("to_spectrum",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f) {
              return array_from_spectral(to_spectrum(real_from_array(f)));
          },
          py::arg("samples"));
    m.def("to_physical",
          [](py::array_t<Complex, py::array::c_style | py::array::forcecast> F) {
              return array_from_real(to_physical(spectral_from_array(F)));
          },
          py::arg("coeffs"));

    m.def("multiplier_eval",
          [](double gamma, double ksq) { return multiplier_eval(LogMultiplier(gamma), ksq); },
          py::arg("gamma"), py::arg("ksq"));
    m.def("multiplier_distance",
          [](double gamma, double kmax) { return multiplier_distance(LogMultiplier(gamma), kmax); },
          py::arg("gamma"), py::arg("kmax"));
    m.def("apply_multiplier",
          [](py::array_t<Complex, py::array::c_style | py::array::forcecast> F, double gamma) {
              return array_from_spectral(
                  apply_multiplier(spectral_from_array(F), LogMultiplier(gamma)));
          },
          py::arg("coeffs"), py::arg("gamma"));
    m.def("spectral_derivative",
          [](py::array_t<Complex, py::array::c_style | py::array::forcecast> F, int axis) {
              return array_from_spectral(spectral_derivative(spectral_from_array(F), axis));
          },
          py::arg("coeffs"), py::arg("axis"));
    m.def("dealias",
          [](py::array_t<Complex, py::array::c_style | py::array::forcecast> F) {
              return array_from_spectral(dealias(spectral_from_array(F)));
          },
          py::arg("coeffs"));

    m.def("sobolev_norm",
          [](py::array_t<Complex, py::array::c_style | py::array::forcecast> F, double s,
             bool homogeneous) { return sobolev_norm(spectral_from_array(F), {s, homogeneous}); },
          py::arg("coeffs"), py::arg("s"), py::arg("homogeneous") = false);
    m.def("lp_norm",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> f, double p) {
              return lp_norm(real_from_array(f), p);
          },
          py::arg("samples"), py::arg("p"));

    m.def("velocity_from_vorticity",
          [](const PyState& s) {
              auto [u1, u2] = velocity_from_vorticity(s.to_state());
              return py::make_tuple(array_from_real(u1), array_from_real(u2));
          },
          py::arg("state"));
    m.def("biot_savart_ratio",
          [](py::array_t<Complex, py::array::c_style | py::array::forcecast> theta, double gamma,
             double s) {
              BiotSavartReport r =
                  biot_savart_bound_check(spectral_from_array(theta), LogMultiplier(gamma), s);
              py::dict d;
              d["lhs"] = r.lhs;
              d["rhs"] = r.rhs;
              d["ratio"] = r.ratio;
              return d;
          },
          py::arg("theta"), py::arg("gamma"), py::arg("s"));

    m.def("rhs_tendency",
          [](const PyState& s) { return array_from_spectral(rhs_tendency(s.to_state())); },
          py::arg("state"));
    m.def("step_rk4",
          [](const PyState& s, double dt) {
              return PyState::from_state(step_rk4(s.to_state(), dt));
          },
          py::arg("state"), py::arg("dt"));
    m.def("integrate",
          [](const PyState& s, double t_end, double cfl, double dt_max,
             std::optional<double> fixed_dt, bool dealias_enabled, int stride,
             std::vector<double> probes) {
              IntegrationResult res = integrate(
                  s.to_state(),
                  solver_config(cfl, dt_max, fixed_dt, t_end, dealias_enabled, stride), probes);
              py::dict d;
              d["final"] = PyState::from_state(res.final_state);
              d["aborted"] = res.aborted;
              py::list records;
              for (const DiagnosticsRecord& r : res.records) {
                  py::dict rec;
                  rec["time"] = r.time;
                  rec["l2_theta"] = r.l2_theta;
                  rec["linf_theta"] = r.linf_theta;
                  rec["energy"] = r.energy;
                  rec["max_speed"] = r.max_speed;
                  records.append(rec);
              }
              d["records"] = records;
              py::list snaps;
              for (const FlowState& snap : res.snapshots) snaps.append(PyState::from_state(snap));
              d["snapshots"] = snaps;
              d["snapshot_times"] = res.snapshot_times;
              return d;
          },
          py::arg("state"), py::arg("t_end"), py::arg("cfl") = 0.4, py::arg("dt_max") = 0.05,
          py::arg("fixed_dt") = std::nullopt, py::arg("dealias") = true, py::arg("stride") = 1,
          py::arg("probes") = std::vector<double>{});

    m.def("hm_exact_state",
          [](int n, double s, int omega, double gamma, double t, int grid_n) {
              return PyState::from_state(hm_exact_state({n, s, omega, gamma}, t, make_grid(grid_n)));
          },
          py::arg("n"), py::arg("s"), py::arg("omega"), py::arg("gamma"), py::arg("t"),
          py::arg("grid_n"));
    m.def("hm_separation_closed_form",
          [](int n, double s, double gamma, double t) {
              HMSeparation sep = hm_separation_closed_form(n, s, gamma, t);
              return py::make_tuple(sep.velocity_separation_hs, sep.data_separation_hs);
          },
          py::arg("n"), py::arg("s"), py::arg("gamma"), py::arg("t"));
    m.def("random_band_field",
          [](std::uint64_t seed, int grid_n, double kmin, double kmax, double decay) {
              return array_from_spectral(
                  random_band_field(seed, make_grid(grid_n), kmin, kmax, decay));
          },
          py::arg("seed"), py::arg("grid_n"), py::arg("kmin"), py::arg("kmax"), py::arg("decay"));
    m.def("bump_blob_pair",
          [](std::array<double, 2> f_center, double f_radius, double f_amplitude,
             std::array<double, 2> g_center, double g_radius, double g_amplitude, int grid_n) {
              return array_from_real(bump_blob_pair({f_center, f_radius, f_amplitude},
                                                    {g_center, g_radius, g_amplitude},
                                                    make_grid(grid_n)));
          },
          py::arg("f_center"), py::arg("f_radius"), py::arg("f_amplitude"), py::arg("g_center"),
          py::arg("g_radius"), py::arg("g_amplitude"), py::arg("grid_n"));

    m.def("velocity_separation_hs",
          [](const PyState& a, const PyState& b, double s) {
              return velocity_separation_hs(a.to_state(), b.to_state(), s);
          },
          py::arg("a"), py::arg("b"), py::arg("s"));

    auto report_dict = [](const InequalityReport& r) {
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["ratio"] = r.ratio;
        d["pass"] = r.pass;
        d["inputs_summary"] = r.inputs_summary;
        return d;
    };
    m.def("bernstein_report",
          [report_dict](py::array_t<Complex, py::array::c_style | py::array::forcecast> F,
                        double M, double s, double q) {
              return report_dict(bernstein_report(spectral_from_array(F), M, s, q));
          },
          py::arg("coeffs"), py::arg("M"), py::arg("s"), py::arg("q") = 2.0);
    m.def("log_interp_report",
          [report_dict](py::array_t<double, py::array::c_style | py::array::forcecast> f,
                        double gamma, double p) {
              return report_dict(log_interp_report(real_from_array(f), LogMultiplier(gamma), p));
          },
          py::arg("samples"), py::arg("gamma"), py::arg("p") = 4.0);
    m.def("kato_ponce_report",
          [report_dict](py::array_t<double, py::array::c_style | py::array::forcecast> f,
                        py::array_t<double, py::array::c_style | py::array::forcecast> g,
                        double s) {
              return report_dict(kato_ponce_report(real_from_array(f), real_from_array(g), s));
          },
          py::arg("f"), py::arg("g"), py::arg("s"));
    m.def("lp_projection",
          [](py::array_t<Complex, py::array::c_style | py::array::forcecast> F,
             const std::string& kind, double M) {
              LPBand band;
              band.M = M;
              if (kind == "low") band.kind = LPBand::Kind::Low;
              else if (kind == "high") band.kind = LPBand::Kind::High;
              else if (kind == "annulus") band.kind = LPBand::Kind::Annulus;
              else throw std::invalid_argument("kind must be low, annulus, or high");
              return array_from_spectral(lp_projection(spectral_from_array(F), band));
          },
          py::arg("coeffs"), py::arg("kind"), py::arg("M"));

    m.def("run_experiment",
          [](const std::string& config_text, std::optional<std::string> out_dir, int threads) {
              RunConfig cfg = parse_config(config_text);
              if (out_dir) cfg.output_dir = *out_dir;
              ExperimentReport rep = run_experiment(cfg, threads);
              if (out_dir) write_report(rep, cfg.output_dir);
              py::module_ json = py::module_::import("json");
              return json.attr("loads")(report_to_json(rep));
          },
          py::arg("config_text"), py::arg("out_dir") = std::nullopt, py::arg("threads") = 1);
}
