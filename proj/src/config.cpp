#include "logeuler/config.hpp"
#include "logeuler/pinned.hpp"
#include "logeuler/report_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>

namespace logeuler {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError(path + ": " + msg);
}

double num_of(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = trim(v.get<std::string>());
        char* end = nullptr;
        double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0') fail(path, "expected a number, got '" + s + "'");
        return x;
    }
    fail(path, "expected a number");
}

long long int_of(const json& v, const std::string& path) {
    double x = num_of(v, path);
    long long i = static_cast<long long>(x);
    if (static_cast<double>(i) != x) fail(path, "expected an integer");
    return i;
}

bool bool_of(const json& v, const std::string& path) {
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string()) {
        std::string s = trim(v.get<std::string>());
        if (s == "true") return true;
        if (s == "false") return false;
    }
    fail(path, "expected true or false");
}

std::string str_of(const json& v, const std::string& path) {
    if (v.is_string()) return trim(v.get<std::string>());
    fail(path, "expected a string");
}

std::vector<double> dlist_of(const json& v, const std::string& path) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(num_of(e, path));
        return out;
    }
    if (v.is_string()) {
        std::stringstream ss(v.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) fail(path, "empty list element");
            out.push_back(num_of(json(item), path));
        }
        if (out.empty()) fail(path, "empty list");
        return out;
    }
    fail(path, "expected a comma-separated list");
}

std::vector<int> ilist_of(const json& v, const std::string& path) {
    std::vector<int> out;
    for (double x : dlist_of(v, path)) {
        int i = static_cast<int>(x);
        if (static_cast<double>(i) != x) fail(path, "expected integers");
        out.push_back(i);
    }
    return out;
}

std::array<double, 2> pair_of(const json& v, const std::string& path) {
    std::vector<double> xs = dlist_of(v, path);
    if (xs.size() != 2) fail(path, "expected exactly two values");
    return {xs[0], xs[1]};
}

// Raw configuration tree: "" holds top-level keys, named sections hold the rest.
using SectionMap = std::map<std::string, std::map<std::string, json>>;

SectionMap parse_keyvalue(const std::string& text) {
    SectionMap sections;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') fail(where, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(where, "empty section name");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(where, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(where, "empty key");
        std::string qualified = section.empty() ? key : section + "." + key;
        if (sections[section].count(key)) fail(qualified, "duplicate key");
        sections[section][key] = json(value);
    }
    return sections;
}

SectionMap parse_json_tree(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON config: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("JSON config must be an object");
    SectionMap sections;
    for (const auto& [key, value] : root.items()) {
        if (value.is_object()) {
            for (const auto& [k2, v2] : value.items()) sections[key][k2] = v2;
            if (value.empty()) sections[key]; // keep empty sections visible
        } else {
            sections[""][key] = value;
        }
    }
    return sections;
}

// Consumes keys from a section; whatever remains unconsumed is unknown.
struct SectionReader {
    std::string name;
    std::map<std::string, json> keys;

    bool has(const std::string& key) const { return keys.count(key) != 0; }
    std::string path(const std::string& key) const {
        return name.empty() ? key : name + "." + key;
    }
    json take(const std::string& key) {
        json v = keys.at(key);
        keys.erase(key);
        return v;
    }
    void finish() const {
        if (!keys.empty()) fail(path(keys.begin()->first), "unknown key");
    }
};

SectionReader reader_for(SectionMap& map, const std::string& name) {
    SectionReader r{name, {}};
    auto it = map.find(name);
    if (it != map.end()) {
        r.keys = std::move(it->second);
        map.erase(it);
    }
    return r;
}

void check_gamma(double gamma, const std::string& path) {
    if (!(gamma >= 0.0)) fail(path, "gamma must be >= 0");
}

void check_s(double s, const std::string& path) {
    if (!(s > 2.0)) fail(path, "s must be > 2");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ConfigError("empty config");
    SectionMap sections =
        (text[first] == '{') ? parse_json_tree(text) : parse_keyvalue(text);

    RunConfig cfg;
    cfg.gamma_comparison.envelope_c0 = pinned::kGammaEnvelopeC0;
    cfg.support.hs_growth_max = pinned::kSupportHsGrowthMax;

    SectionReader top = reader_for(sections, "");
    if (!top.has("experiment")) fail("experiment", "required key missing");
    cfg.experiment = str_of(top.take("experiment"), "experiment");
    static const std::vector<std::string> kExperiments{
        "convergence", "continuity", "gamma_comparison", "nonuniform", "support"};
    if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) ==
        kExperiments.end())
        fail("experiment", "unknown experiment '" + cfg.experiment + "'");
    if (top.has("seed")) {
        long long s = int_of(top.take("seed"), "seed");
        if (s < 0) fail("seed", "seed must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    top.finish();

    SectionReader grid = reader_for(sections, "grid");
    if (grid.has("n")) {
        long long n = int_of(grid.take("n"), "grid.n");
        if (n < 8 || n % 2 != 0) fail("grid.n", "must be an even integer >= 8");
        cfg.grid_n = static_cast<int>(n);
    }
    grid.finish();

    SectionReader solver = reader_for(sections, "solver");
    if (solver.has("cfl")) cfg.solver.cfl = num_of(solver.take("cfl"), "solver.cfl");
    if (!(cfg.solver.cfl > 0.0 && cfg.solver.cfl <= 1.0))
        fail("solver.cfl", "must lie in (0,1]");
    if (solver.has("dt_max")) cfg.solver.dt_max = num_of(solver.take("dt_max"), "solver.dt_max");
    if (!(cfg.solver.dt_max > 0.0)) fail("solver.dt_max", "must be > 0");
    if (solver.has("fixed_dt")) {
        double dt = num_of(solver.take("fixed_dt"), "solver.fixed_dt");
        if (!(dt > 0.0)) fail("solver.fixed_dt", "must be > 0");
        cfg.solver.fixed_dt = dt;
    }
    if (solver.has("t_end")) cfg.solver.t_end = num_of(solver.take("t_end"), "solver.t_end");
    if (!(cfg.solver.t_end > 0.0)) fail("solver.t_end", "must be > 0");
    if (solver.has("dealias"))
        cfg.solver.dealias_enabled = bool_of(solver.take("dealias"), "solver.dealias");
    if (solver.has("diagnostic_stride")) {
        long long st = int_of(solver.take("diagnostic_stride"), "solver.diagnostic_stride");
        if (st < 1) fail("solver.diagnostic_stride", "must be >= 1");
        cfg.solver.diagnostic_stride = static_cast<int>(st);
    }
    solver.finish();

    SectionReader output = reader_for(sections, "output");
    if (output.has("dir")) cfg.output_dir = str_of(output.take("dir"), "output.dir");
    if (output.has("snapshots"))
        cfg.snapshots = bool_of(output.take("snapshots"), "output.snapshots");
    output.finish();

    SectionReader params = reader_for(sections, "params");
    auto take_num = [&](const char* key, double& slot) {
        if (params.has(key)) slot = num_of(params.take(key), params.path(key));
    };
    if (cfg.experiment == "convergence") {
        ConvergenceParams& p = cfg.convergence;
        if (params.has("grid_sizes"))
            p.grid_sizes = ilist_of(params.take("grid_sizes"), "params.grid_sizes");
        for (int gs : p.grid_sizes)
            if (gs < 8 || gs % 2 != 0) fail("params.grid_sizes", "entries must be even and >= 8");
        if (params.has("dt_list")) p.dt_list = dlist_of(params.take("dt_list"), "params.dt_list");
        for (double dt : p.dt_list)
            if (!(dt > 0.0)) fail("params.dt_list", "entries must be > 0");
        if (params.has("wave_n")) {
            long long w = int_of(params.take("wave_n"), "params.wave_n");
            if (w < 1) fail("params.wave_n", "must be >= 1");
            p.wave_n = static_cast<int>(w);
        }
        take_num("s", p.s);
        check_s(p.s, "params.s");
        take_num("gamma", p.gamma);
        check_gamma(p.gamma, "params.gamma");
    } else if (cfg.experiment == "continuity") {
        ContinuityParams& p = cfg.continuity;
        if (params.has("deltas")) p.deltas = dlist_of(params.take("deltas"), "params.deltas");
        for (double d : p.deltas)
            if (!(d >= 0.0)) fail("params.deltas", "entries must be >= 0");
        take_num("s", p.s);
        check_s(p.s, "params.s");
        take_num("gamma", p.gamma);
        check_gamma(p.gamma, "params.gamma");
        take_num("kmin", p.kmin);
        take_num("kmax", p.kmax);
        take_num("decay", p.decay);
        take_num("amplitude", p.amplitude);
        if (!(p.kmin >= 1.0)) fail("params.kmin", "must be >= 1");
        if (!(p.kmax >= p.kmin)) fail("params.kmax", "must be >= kmin");
        if (!(p.amplitude > 0.0)) fail("params.amplitude", "must be > 0");
        take_num("decade_factor_lo", p.decade_factor_lo);
        take_num("decade_factor_hi", p.decade_factor_hi);
        if (!(p.decade_factor_lo <= p.decade_factor_hi))
            fail("params.decade_factor_lo", "must be <= decade_factor_hi");
    } else if (cfg.experiment == "gamma_comparison") {
        GammaComparisonParams& p = cfg.gamma_comparison;
        if (params.has("gammas")) p.gammas = dlist_of(params.take("gammas"), "params.gammas");
        for (double g : p.gammas) check_gamma(g, "params.gammas");
        take_num("s", p.s);
        check_s(p.s, "params.s");
        take_num("kmin", p.kmin);
        take_num("kmax", p.kmax);
        take_num("decay", p.decay);
        take_num("amplitude", p.amplitude);
        if (!(p.kmin >= 1.0)) fail("params.kmin", "must be >= 1");
        if (!(p.kmax >= p.kmin)) fail("params.kmax", "must be >= kmin");
        if (!(p.amplitude > 0.0)) fail("params.amplitude", "must be > 0");
        take_num("envelope_c0", p.envelope_c0);
        if (!(p.envelope_c0 > 0.0)) fail("params.envelope_c0", "must be > 0");
        take_num("ratio_lo", p.ratio_lo);
        take_num("ratio_hi", p.ratio_hi);
        if (!(p.ratio_lo <= p.ratio_hi)) fail("params.ratio_lo", "must be <= ratio_hi");
    } else if (cfg.experiment == "nonuniform") {
        NonuniformParams& p = cfg.nonuniform;
        if (params.has("n_list")) p.n_list = ilist_of(params.take("n_list"), "params.n_list");
        for (int n : p.n_list) {
            if (n < 1) fail("params.n_list", "entries must be >= 1");
            if (n > cfg.grid_n / 3)
                fail("params.n_list", "entry " + std::to_string(n) +
                                          " not resolved on grid.n=" + std::to_string(cfg.grid_n));
        }
        take_num("s", p.s);
        check_s(p.s, "params.s");
        take_num("gamma", p.gamma);
        check_gamma(p.gamma, "params.gamma");
        if (params.has("probes")) p.probes = dlist_of(params.take("probes"), "params.probes");
        for (double t : p.probes)
            if (!(t > 0.0)) fail("params.probes", "entries must be > 0");
        take_num("margin", p.margin);
        if (!(p.margin >= 0.0)) fail("params.margin", "must be >= 0");
        take_num("closed_form_rtol", p.closed_form_rtol);
        if (!(p.closed_form_rtol > 0.0)) fail("params.closed_form_rtol", "must be > 0");
    } else if (cfg.experiment == "support") {
        SupportParams& p = cfg.support;
        if (params.has("f_center")) p.blob_f.center = pair_of(params.take("f_center"), "params.f_center");
        if (params.has("g_center")) p.blob_g.center = pair_of(params.take("g_center"), "params.g_center");
        take_num("f_radius", p.blob_f.radius);
        take_num("g_radius", p.blob_g.radius);
        take_num("f_amplitude", p.blob_f.amplitude);
        take_num("g_amplitude", p.blob_g.amplitude);
        for (double r : {p.blob_f.radius, p.blob_g.radius})
            if (!(r > 0.0 && r < Grid2D::two_pi() / 4.0))
                fail("params.f_radius", "blob radii must lie in (0, pi/2)");
        take_num("threshold", p.threshold);
        if (!(p.threshold > 0.0 && p.threshold < 1.0))
            fail("params.threshold", "must lie in (0,1)");
        take_num("s", p.s);
        check_s(p.s, "params.s");
        take_num("gamma", p.gamma);
        check_gamma(p.gamma, "params.gamma");
        take_num("hs_growth_max", p.hs_growth_max);
        if (!(p.hs_growth_max > 0.0)) fail("params.hs_growth_max", "must be > 0");
    }
    params.finish();

    if (!sections.empty()) fail(sections.begin()->first, "unknown section");
    return cfg;
}

namespace {

std::string fmt(double x) { return format_g17(x); }

std::string fmt_list(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += fmt(xs[i]);
    }
    return out;
}

std::string fmt_ilist(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
    }
    return out;
}

} // namespace

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "experiment = " << cfg.experiment << "\n";
    os << "seed = " << cfg.seed << "\n\n";
    os << "[grid]\nn = " << cfg.grid_n << "\n\n";
    os << "[solver]\n";
    os << "cfl = " << fmt(cfg.solver.cfl) << "\n";
    os << "dt_max = " << fmt(cfg.solver.dt_max) << "\n";
    if (cfg.solver.fixed_dt) os << "fixed_dt = " << fmt(*cfg.solver.fixed_dt) << "\n";
    os << "t_end = " << fmt(cfg.solver.t_end) << "\n";
    os << "dealias = " << (cfg.solver.dealias_enabled ? "true" : "false") << "\n";
    os << "diagnostic_stride = " << cfg.solver.diagnostic_stride << "\n\n";
    os << "[output]\n";
    os << "dir = " << cfg.output_dir << "\n";
    os << "snapshots = " << (cfg.snapshots ? "true" : "false") << "\n\n";
    os << "[params]\n";
    if (cfg.experiment == "convergence") {
        const auto& p = cfg.convergence;
        if (!p.grid_sizes.empty()) os << "grid_sizes = " << fmt_ilist(p.grid_sizes) << "\n";
        os << "dt_list = " << fmt_list(p.dt_list) << "\n";
        os << "wave_n = " << p.wave_n << "\n";
        os << "s = " << fmt(p.s) << "\n";
        os << "gamma = " << fmt(p.gamma) << "\n";
    } else if (cfg.experiment == "continuity") {
        const auto& p = cfg.continuity;
        os << "deltas = " << fmt_list(p.deltas) << "\n";
        os << "s = " << fmt(p.s) << "\n";
        os << "gamma = " << fmt(p.gamma) << "\n";
        os << "kmin = " << fmt(p.kmin) << "\n";
        os << "kmax = " << fmt(p.kmax) << "\n";
        os << "decay = " << fmt(p.decay) << "\n";
        os << "amplitude = " << fmt(p.amplitude) << "\n";
        os << "decade_factor_lo = " << fmt(p.decade_factor_lo) << "\n";
        os << "decade_factor_hi = " << fmt(p.decade_factor_hi) << "\n";
    } else if (cfg.experiment == "gamma_comparison") {
        const auto& p = cfg.gamma_comparison;
        os << "gammas = " << fmt_list(p.gammas) << "\n";
        os << "s = " << fmt(p.s) << "\n";
        os << "kmin = " << fmt(p.kmin) << "\n";
        os << "kmax = " << fmt(p.kmax) << "\n";
        os << "decay = " << fmt(p.decay) << "\n";
        os << "amplitude = " << fmt(p.amplitude) << "\n";
        os << "envelope_c0 = " << fmt(p.envelope_c0) << "\n";
        os << "ratio_lo = " << fmt(p.ratio_lo) << "\n";
        os << "ratio_hi = " << fmt(p.ratio_hi) << "\n";
    } else if (cfg.experiment == "nonuniform") {
        const auto& p = cfg.nonuniform;
        os << "n_list = " << fmt_ilist(p.n_list) << "\n";
        os << "s = " << fmt(p.s) << "\n";
        os << "gamma = " << fmt(p.gamma) << "\n";
        if (!p.probes.empty()) os << "probes = " << fmt_list(p.probes) << "\n";
        os << "margin = " << fmt(p.margin) << "\n";
        os << "closed_form_rtol = " << fmt(p.closed_form_rtol) << "\n";
    } else if (cfg.experiment == "support") {
        const auto& p = cfg.support;
        os << "f_center = " << fmt(p.blob_f.center[0]) << ", " << fmt(p.blob_f.center[1]) << "\n";
        os << "f_radius = " << fmt(p.blob_f.radius) << "\n";
        os << "f_amplitude = " << fmt(p.blob_f.amplitude) << "\n";
        os << "g_center = " << fmt(p.blob_g.center[0]) << ", " << fmt(p.blob_g.center[1]) << "\n";
        os << "g_radius = " << fmt(p.blob_g.radius) << "\n";
        os << "g_amplitude = " << fmt(p.blob_g.amplitude) << "\n";
        os << "threshold = " << fmt(p.threshold) << "\n";
        os << "s = " << fmt(p.s) << "\n";
        os << "gamma = " << fmt(p.gamma) << "\n";
        os << "hs_growth_max = " << fmt(p.hs_growth_max) << "\n";
    }
    return os.str();
}

ExperimentReport run_experiment(const RunConfig& cfg, int threads) {
    ExperimentReport rep;
    if (cfg.experiment == "convergence") {
        ConvergenceParams p = cfg.convergence;
        if (p.grid_sizes.empty()) p.grid_sizes = {cfg.grid_n};
        p.t_end = cfg.solver.t_end;
        rep = run_convergence(p, threads);
    } else if (cfg.experiment == "continuity") {
        ContinuityParams p = cfg.continuity;
        p.grid_n = cfg.grid_n;
        p.seed = cfg.seed;
        p.solver = cfg.solver;
        p.t_end = cfg.solver.t_end;
        rep = run_continuity(p, threads);
    } else if (cfg.experiment == "gamma_comparison") {
        GammaComparisonParams p = cfg.gamma_comparison;
        p.grid_n = cfg.grid_n;
        p.seed = cfg.seed;
        p.solver = cfg.solver;
        p.t_end = cfg.solver.t_end;
        rep = run_gamma_comparison(p, threads);
    } else if (cfg.experiment == "nonuniform") {
        NonuniformParams p = cfg.nonuniform;
        p.grid_n = cfg.grid_n;
        p.solver = cfg.solver;
        rep = run_nonuniform(p, threads);
    } else if (cfg.experiment == "support") {
        SupportParams p = cfg.support;
        p.grid_n = cfg.grid_n;
        p.solver = cfg.solver;
        p.t_end = cfg.solver.t_end;
        rep = run_support(p, threads);
    } else {
        throw ConfigError("experiment: unknown experiment '" + cfg.experiment + "'");
    }
    rep.seed = cfg.seed;
    rep.config_echo = serialize_config(cfg);
    return rep;
}

} // namespace logeuler
