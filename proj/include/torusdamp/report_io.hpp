#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torusdamp/helmholtz_obs.hpp"
#include "torusdamp/wave_sim.hpp"

namespace torusdamp {

// Round-trip formatting for CSV cells.
std::string format_double(double x);

// 64-bit FNV-1a, lower-case hex.
std::string fnv1a_hex(const std::string& bytes);
std::string file_hash(const std::string& path);

struct RunManifest {
    std::string command;
    std::string board_path;
    std::string board_hash;
    nlohmann::json params = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::string version = TORUSDAMP_VERSION;
    std::string timestamp;  // UTC, ISO 8601

    nlohmann::json to_json() const;
};

RunManifest make_manifest(const std::string& command, const std::string& board_path);
void write_manifest(const RunManifest& manifest, const std::string& path);

struct BeamRow {
    double h = 0.0;
    double energy = 0.0;
    double residual = 0.0;
    double observation = 0.0;
};

void write_trajectory_csv(std::ostream& os, const TrajectoryReport& report);
void write_beam_csv(std::ostream& os, const std::vector<BeamRow>& rows);
void write_observability_csv(std::ostream& os, const std::vector<ObservabilityReport>& rows);
void write_abscissa_csv(std::ostream& os, const std::vector<SpectrumReport>& rows);
void write_eigenvalues_csv(std::ostream& os, const std::vector<std::complex<double>>& values);
void write_quasimode_csv(std::ostream& os, const ObservabilityReport& report);

// Writes through a temporary file so a failed run never leaves a truncated CSV behind.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace torusdamp
