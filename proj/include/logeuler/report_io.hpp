#pragma once

#include <filesystem>
#include <string>

#include "logeuler/experiments.hpp"

namespace logeuler {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed 17-significant-digit rendering; round-trips every finite double.
std::string format_g17(double x);

// The report.json body (also what write_report persists).
std::string report_to_json(const ExperimentReport& report);

// report.json + one CSV per table + manifest.json under dir. CSV bodies are
// deterministic; the manifest carries wall time.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

struct SnapshotMeta {
    int n = 0;
    double length = 6.283185307179586476925287;
    double time = 0.0;
    double gamma = 0.0;
    std::string kind = "theta";
};

// Raw little-endian float64 samples, row-major, plus a JSON sidecar at
// path + ".json". Reading reproduces the samples bit-exactly and rejects a
// size mismatch against the sidecar.
void write_snapshot(const RealField& field, const SnapshotMeta& meta,
                    const std::filesystem::path& path);
std::pair<RealField, SnapshotMeta> read_snapshot(const std::filesystem::path& path);

} // namespace logeuler
