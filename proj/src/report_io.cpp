#include "torusdamp/report_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "torusdamp/errors.hpp"

namespace torusdamp {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_hex(ss.str());
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["board"] = {{"path", board_path}, {"fnv1a64", board_hash}};
    j["params"] = params;
    j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    j["version"] = version;
    j["timestamp"] = timestamp;
    return j;
}

RunManifest make_manifest(const std::string& command, const std::string& board_path) {
    RunManifest m;
    m.command = command;
    m.board_path = board_path;
    m.board_hash = file_hash(board_path);
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    m.timestamp = buf;
    return m;
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidArgument("cannot write " + path);
        out << text;
        if (!out) throw InvalidArgument("write failed for " + path);
    }
    std::filesystem::rename(tmp, path);
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    write_text_file(path, manifest.to_json().dump(2) + "\n");
}

void write_trajectory_csv(std::ostream& os, const TrajectoryReport& report) {
    os << "t,energy,dissipated\n";
    for (std::size_t i = 0; i < report.times.size(); ++i)
        os << format_double(report.times[i]) << ',' << format_double(report.energies[i]) << ','
           << format_double(report.dissipated[i]) << '\n';
}

void write_beam_csv(std::ostream& os, const std::vector<BeamRow>& rows) {
    os << "h,energy,residual,observation\n";
    for (const BeamRow& r : rows)
        os << format_double(r.h) << ',' << format_double(r.energy) << ',' << format_double(r.residual) << ','
           << format_double(r.observation) << '\n';
}

void write_observability_csv(std::ostream& os, const std::vector<ObservabilityReport>& rows) {
    os << "h,w,shell_size,mu_min\n";
    for (const ObservabilityReport& r : rows)
        os << format_double(r.h) << ',' << format_double(r.w) << ',' << r.shell.modes.size() << ','
           << format_double(r.mu_min) << '\n';
}

void write_abscissa_csv(std::ostream& os, const std::vector<SpectrumReport>& rows) {
    os << "K,abscissa\n";
    for (const SpectrumReport& r : rows) os << r.K << ',' << format_double(r.abscissa) << '\n';
}

void write_eigenvalues_csv(std::ostream& os, const std::vector<std::complex<double>>& values) {
    os << "re,im\n";
    for (const auto& z : values) os << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
}

void write_quasimode_csv(std::ostream& os, const ObservabilityReport& report) {
    os << "k1,k2,re,im\n";
    for (std::size_t q = 0; q < report.shell.modes.size(); ++q) {
        const auto c = report.quasimode(static_cast<Eigen::Index>(q));
        os << report.shell.modes[q][0] << ',' << report.shell.modes[q][1] << ',' << format_double(c.real()) << ','
           << format_double(c.imag()) << '\n';
    }
}

}  // namespace torusdamp
