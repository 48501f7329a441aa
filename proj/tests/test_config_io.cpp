#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "logeuler/config.hpp"
#include "logeuler/report_io.hpp"

using namespace logeuler;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("logeuler_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("parse_config fills defaults for a minimal config") {
    RunConfig cfg = parse_config("experiment = nonuniform\n");
    CHECK(cfg.experiment == "nonuniform");
    CHECK(cfg.grid_n == 128);
    CHECK(cfg.solver.cfl == 0.4);
    CHECK(cfg.solver.dealias_enabled);
    CHECK(cfg.seed == 1);
    CHECK(cfg.nonuniform.n_list == std::vector<int>{8, 16, 32});
}

TEST_CASE("parse_config validation errors carry paths") {
    CHECK_THROWS_WITH_AS(parse_config("experiment = nonuniform\n[params]\ngamma = -0.1\n"),
                         "params.gamma: gamma must be >= 0", ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = warp\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = support\n[grid]\nn = 101\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = support\n[grid]\nn = 6\n"), ConfigError);
    // even n >= 8 is accepted, power-of-two or not
    CHECK(parse_config("experiment = support\n[grid]\nn = 100\n").grid_n == 100);
    CHECK_THROWS_AS(parse_config("experiment = nonuniform\n[params]\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = nonuniform\n[nope]\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = continuity\n[params]\ns = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = 1\n"), ConfigError); // experiment missing
    CHECK_THROWS_AS(parse_config("experiment = nonuniform\nseed = 1\nseed = 2\n"), ConfigError);
    // unresolved shear frequency against the grid
    CHECK_THROWS_AS(
        parse_config("experiment = nonuniform\n[grid]\nn = 32\n[params]\nn_list = 8, 16\n"),
        ConfigError);
}

TEST_CASE("parse_config accepts JSON input") {
    RunConfig cfg = parse_config(R"({
        "experiment": "gamma_comparison",
        "seed": 9,
        "grid": {"n": 64},
        "solver": {"cfl": 0.3, "t_end": 0.5},
        "params": {"gammas": [0.02, 0.01], "s": 2.5, "amplitude": 0.15}
    })");
    CHECK(cfg.experiment == "gamma_comparison");
    CHECK(cfg.seed == 9);
    CHECK(cfg.grid_n == 64);
    CHECK(cfg.solver.cfl == 0.3);
    CHECK(cfg.gamma_comparison.gammas == std::vector<double>{0.02, 0.01});
    CHECK(cfg.gamma_comparison.amplitude == 0.15);

    CHECK_THROWS_AS(parse_config(R"({"experiment": "nonuniform", "params": {"zz": 1}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("config round trip through the canonical echo") {
    for (const char* text :
         {"experiment = nonuniform\n[grid]\nn = 64\n[params]\nn_list = 4, 8\nmargin = 1.3\n",
          "experiment = support\nseed = 5\n[solver]\nfixed_dt = 0.01\n",
          "experiment = continuity\n[params]\ndeltas = 0.01, 0.001\namplitude = 0.3\n",
          "experiment = convergence\n[params]\ndt_list = 0.02, 0.01\nwave_n = 3\n",
          "experiment = gamma_comparison\n[params]\ngammas = 0.02, 0.01, 0.005\n"}) {
        RunConfig cfg = parse_config(text);
        std::string echo = serialize_config(cfg);
        RunConfig cfg2 = parse_config(echo);
        CHECK(serialize_config(cfg2) == echo);
    }
}

TEST_CASE("write_report emits deterministic CSV bodies") {
    ExperimentReport rep;
    rep.experiment = "demo";
    rep.seed = 3;
    rep.version = "0.0-test";
    rep.config_echo = "experiment = demo\n";
    rep.tables.push_back(
        {"numbers", {"a", "b"}, {{1.0, 1.0 / 3.0}, {0.5, 6.02214076e23}}});
    rep.verdicts.push_back({"always", true, 1.0, 2.0, "demo verdict"});
    rep.wall_time_s = 0.25;

    fs::path d1 = temp_dir("rep1");
    fs::path d2 = temp_dir("rep2");
    write_report(rep, d1);
    rep.wall_time_s = 99.0; // only the manifest may differ
    write_report(rep, d2);

    CHECK(fs::exists(d1 / "report.json"));
    CHECK(fs::exists(d1 / "manifest.json"));
    std::string manifest = slurp(d1 / "manifest.json");
    CHECK(manifest.find("\"version\": \"0.0-test\"") != std::string::npos);
    std::string csv1 = slurp(d1 / "numbers.csv");
    std::string csv2 = slurp(d2 / "numbers.csv");
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("a,b\n", 0) == 0);
    CHECK(csv1.find("0.33333333333333331") != std::string::npos);
    CHECK(csv1.find("6.0221407599999999e+23") != std::string::npos);

    CHECK(format_g17(0.1) == "0.10000000000000001");
    CHECK(format_g17(2.0) == "2");

    // a file blocking the output path surfaces as an I/O error
    fs::path blocker = d1 / "blocked";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(write_report(rep, blocker / "sub"), IoError);

    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("snapshot round trip is bit-exact") {
    GridPtr g = make_grid(16);
    RealField f(g);
    std::uint64_t state = 12345;
    for (double& v : f.samples) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        v = static_cast<double>(static_cast<std::int64_t>(state >> 11)) * 1e-12 - 4.0;
    }
    fs::path dir = temp_dir("snap");
    fs::path path = dir / "theta.f64";

    SnapshotMeta meta;
    meta.n = 16;
    meta.time = 0.75;
    meta.gamma = 0.05;
    meta.kind = "theta";
    write_snapshot(f, meta, path);
    auto [back, meta2] = read_snapshot(path);
    CHECK(meta2.n == 16);
    CHECK(meta2.time == 0.75);
    CHECK(meta2.gamma == 0.05);
    CHECK(meta2.kind == "theta");
    REQUIRE(back.samples.size() == f.samples.size());
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        CHECK(back.samples[i] == f.samples[i]); // bit-exact

    // sidecar size mismatch is rejected
    std::ofstream trunc(path, std::ios::binary | std::ios::trunc);
    trunc << "short";
    trunc.close();
    CHECK_THROWS_AS(read_snapshot(path), IoError);
    fs::remove_all(dir);
}

TEST_CASE("run_experiment dispatches and echoes the config") {
    RunConfig cfg = parse_config(
        "experiment = convergence\n[grid]\nn = 32\n[solver]\nt_end = 0.25\n"
        "[params]\ndt_list = 0.025, 0.0125\nwave_n = 2\ns = 2.5\ngamma = 0.1\n");
    ExperimentReport rep = run_experiment(cfg, 2);
    CHECK(rep.experiment == "convergence");
    CHECK(rep.config_echo == serialize_config(cfg));
    CHECK(rep.table("errors") != nullptr);
    CHECK(rep.all_pass());
}
