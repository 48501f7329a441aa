#include "logeuler/report_io.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace logeuler {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void write_text(const fs::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << body;
    if (!out) throw IoError("write failed: " + path.string());
}

json verdicts_json(const ExperimentReport& rep) {
    json arr = json::array();
    for (const Verdict& v : rep.verdicts)
        arr.push_back({{"name", v.name},
                       {"pass", v.pass},
                       {"value", v.value},
                       {"threshold", v.threshold},
                       {"detail", v.detail}});
    return arr;
}

} // namespace

std::string report_to_json(const ExperimentReport& report) {
    json tables = json::object();
    for (const Table& t : report.tables) {
        json rows = json::array();
        for (const auto& r : t.rows) rows.push_back(r);
        tables[t.name] = {{"columns", t.columns}, {"rows", rows}};
    }
    json rep_json = {{"experiment", report.experiment},
                     {"seed", report.seed},
                     {"version", report.version},
                     {"aborted", report.aborted},
                     {"all_pass", report.all_pass()},
                     {"verdicts", verdicts_json(report)},
                     {"tables", tables}};
    return rep_json.dump(2) + "\n";
}

void write_report(const ExperimentReport& report, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output dir " + dir.string() + ": " + ec.message());

    write_text(dir / "report.json", report_to_json(report));

    for (const Table& t : report.tables) {
        std::string csv;
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (i) csv += ',';
            csv += t.columns[i];
        }
        csv += '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) csv += ',';
                csv += format_g17(row[i]);
            }
            csv += '\n';
        }
        write_text(dir / (t.name + ".csv"), csv);
    }

    auto now = std::chrono::system_clock::now().time_since_epoch();
    json manifest = {
        {"config", report.config_echo},
        {"seed", report.seed},
        {"version", report.version},
        {"wall_time_s", report.wall_time_s},
        {"generated_unix", std::chrono::duration<double>(now).count()},
    };
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

void write_snapshot(const RealField& field, const SnapshotMeta& meta, const fs::path& path) {
    const int n = field.grid->n();
    if (meta.n != 0 && meta.n != n)
        throw IoError("write_snapshot: sidecar n disagrees with the field grid");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    for (double v : field.samples) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        unsigned char le[8];
        for (int i = 0; i < 8; ++i) le[i] = static_cast<unsigned char>(bits >> (8 * i));
        out.write(reinterpret_cast<const char*>(le), 8);
    }
    if (!out) throw IoError("write failed: " + path.string());

    json sidecar = {{"n", n},
                    {"length", meta.length},
                    {"time", meta.time},
                    {"gamma", meta.gamma},
                    {"kind", meta.kind}};
    write_text(fs::path(path.string() + ".json"), sidecar.dump(2) + "\n");
}

std::pair<RealField, SnapshotMeta> read_snapshot(const fs::path& path) {
    std::ifstream side(path.string() + ".json", std::ios::binary);
    if (!side) throw IoError("cannot open sidecar: " + path.string() + ".json");
    json sidecar;
    try {
        side >> sidecar;
    } catch (const json::exception& e) {
        throw IoError(std::string("invalid sidecar JSON: ") + e.what());
    }
    SnapshotMeta meta;
    meta.n = sidecar.at("n").get<int>();
    meta.length = sidecar.at("length").get<double>();
    meta.time = sidecar.at("time").get<double>();
    meta.gamma = sidecar.at("gamma").get<double>();
    meta.kind = sidecar.at("kind").get<std::string>();

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open snapshot: " + path.string());
    in.seekg(0, std::ios::end);
    auto bytes = static_cast<std::uint64_t>(in.tellg());
    in.seekg(0);
    std::uint64_t expect = static_cast<std::uint64_t>(meta.n) * meta.n * 8;
    if (bytes != expect)
        throw IoError("snapshot size mismatch: sidecar says " + std::to_string(expect) +
                      " bytes, file has " + std::to_string(bytes));

    RealField field(make_grid(meta.n));
    for (double& v : field.samples) {
        unsigned char le[8];
        in.read(reinterpret_cast<char*>(le), 8);
        if (!in) throw IoError("short read: " + path.string());
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(le[i]) << (8 * i);
        std::memcpy(&v, &bits, sizeof(v));
    }
    return {std::move(field), std::move(meta)};
}

} // namespace logeuler
