// torusdamp: damping boards on flat tori, from geometric verdicts to simulated decay.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusdamp/errors.hpp"
#include "torusdamp/gaussian_beam.hpp"
#include "torusdamp/helmholtz_obs.hpp"
#include "torusdamp/report_io.hpp"
#include "torusdamp/torus_geometry.hpp"
#include "torusdamp/wave_sim.hpp"

using namespace torusdamp;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

// Runs fn(i) for i in [0, count) on at most `jobs` threads; results land by index.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
    const std::size_t width = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
    if (width <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < width; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        // accept 1/32 as well as 0.03125
        const auto slash = item.find('/');
        try {
            if (slash == std::string::npos)
                out.push_back(std::stod(item));
            else
                out.push_back(std::stod(item.substr(0, slash)) / std::stod(item.substr(slash + 1)));
        } catch (const std::exception&) {
            throw InvalidArgument(flag + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw InvalidArgument(flag + ": empty list");
    return out;
}

std::string direction_text(const ClosedDirection& d) { return "(" + std::to_string(d.n) + "," + std::to_string(d.m) + ")"; }

std::string condition_label(Condition c) {
    std::string s = to_string(c);
    for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

json witness_json(const Witness& w) {
    json j;
    j["direction"] = w.direction ? json::array({w.direction->n, w.direction->m}) : json(nullptr);
    j["offset"] = w.offset;
    j["kind"] = to_string(w.kind);
    return j;
}

void print_verdict(std::ostream& os, const GeomVerdict& v) {
    os << condition_label(v.condition) << ": " << (v.passes ? "PASS" : "FAIL");
    if (!v.passes && v.witnesses.size() == 1 && !v.witnesses[0].direction) os << " (" << to_string(v.witnesses[0].kind) << ")";
    os << "  [" << v.checked_directions.size() << " directions checked]\n";
    for (const Witness& w : v.witnesses) {
        if (!w.direction) continue;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6g", w.offset);
        os << "  witness direction " << direction_text(*w.direction) << " offset " << buf << " " << to_string(w.kind) << "\n";
    }
}

struct Common {
    std::string board_path;
    std::string out;
    std::string manifest;
    int jobs = 1;
};

void emit_manifest(const Common& c, RunManifest m) {
    std::string path = c.manifest;
    if (path.empty() && !c.out.empty()) path = c.out + ".manifest.json";
    if (!path.empty()) write_manifest(m, path);
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

int cmd_check(const Common& c, const std::string& condition, bool as_json, const std::string& eps_list) {
    const DampingBoard board = load_board(c.board_path);
    std::vector<Condition> conds;
    if (condition == "all")
        conds = {Condition::geom, Condition::wgcc, Condition::sgcc, Condition::ggcc};
    else if (condition == "geom")
        conds = {Condition::geom};
    else if (condition == "wgcc")
        conds = {Condition::wgcc};
    else if (condition == "sgcc")
        conds = {Condition::sgcc};
    else if (condition == "ggcc")
        conds = {Condition::ggcc};
    else
        throw InvalidArgument("--condition: unknown condition '" + condition + "'");

    json records = json::array();
    std::ostringstream text;
    bool all_pass = true;
    for (Condition cond : conds) {
        GeomVerdict v;
        json rec;
        if (cond == Condition::ggcc) {
            std::vector<double> eps;
            if (eps_list.empty()) {
                const double mf = min_feature(board);
                for (int p = 3; p <= 7; ++p) eps.push_back(mf * std::ldexp(1.0, -p));
            } else {
                eps = parse_list(eps_list, "--eps-list");
            }
            const GgccReport r = board.polygons.empty() ? GgccReport{check_geom(board), {}} : check_ggcc(board, eps);
            v = r.analytic;
            v.condition = Condition::ggcc;
            json tubes = json::array();
            for (double e : eps) {
                double lo = INFINITY;
                for (const TubeSample& s : r.numeric)
                    if (s.eps == e) lo = std::min(lo, s.average);
                if (std::isfinite(lo)) tubes.push_back({{"eps", e}, {"min_average", lo}});
            }
            rec["tube_minima"] = tubes;
            print_verdict(text, v);
            for (const auto& t : tubes) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "  eps %.6g  min tube average %.6g\n", t["eps"].get<double>(),
                              t["min_average"].get<double>());
                text << buf;
            }
        } else {
            v = cond == Condition::geom ? check_geom(board) : cond == Condition::wgcc ? check_wgcc(board) : check_sgcc(board);
            print_verdict(text, v);
        }
        rec["condition"] = to_string(cond);
        rec["passes"] = v.passes;
        rec["checked_directions"] = v.checked_directions.size();
        rec["witnesses"] = json::array();
        for (const Witness& w : v.witnesses) rec["witnesses"].push_back(witness_json(w));
        records.push_back(rec);
        all_pass = all_pass && v.passes;
    }

    RunManifest m = make_manifest("check", c.board_path);
    m.params = {{"condition", condition}};
    if (!eps_list.empty()) m.params["eps_list"] = eps_list;
    if (as_json) {
        json out = {{"board", board.name}, {"results", records}, {"manifest", m.to_json()}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << text.str();
    }
    emit_manifest(c, m);
    return all_pass ? kExitPass : kExitFail;
}

BeamSpec parse_beam(const std::string& geodesic, double h, double r0) {
    const std::vector<double> g = parse_list(geodesic, "--geodesic");
    if (g.size() != 4) throw InvalidArgument("--geodesic: expected x0,y0,dx,dy");
    BeamSpec s;
    s.geodesic = Geodesic{{g[0], g[1]}, {g[2], g[3]}, 1.0};
    s.h = h;
    s.cutoff_radius = r0;
    return s;
}

int cmd_simulate(const Common& c, int n, double dt, double t_end, const std::string& init, std::uint64_t seed,
                 int stride, const std::string& geodesic, double h, double r0) {
    const DampingBoard board = load_board(c.board_path);
    Grid grid{n, n, board.lattice};
    validate_grid(grid);
    SimConfig cfg;
    cfg.dt = dt > 0.0 ? dt : cfl_limit(grid) / 8.0;
    cfg.t_end = t_end;
    cfg.mass = board.mass;
    cfg.stride = stride;
    InitialData data;
    if (init == "broadband") {
        data = BroadbandInit{seed, 0};
    } else if (init == "beam") {
        if (geodesic.empty()) throw InvalidArgument("--init beam requires --geodesic");
        const BeamSpec spec = parse_beam(geodesic, h, r0);
        check_beam_resolution(spec, grid);
        data = spec;
    } else {
        throw InvalidArgument("--init: expected broadband or beam");
    }
    const TrajectoryReport rep = run(board, data, grid, cfg);
    std::ostringstream csv;
    write_trajectory_csv(csv, rep);
    if (!c.out.empty()) write_text_file(c.out, csv.str());
    std::printf("decay_rate %.6g\ndissipation_residual %.6g\nmax_energy_rise %.6g\nsteps %zu dt %.6g\n", rep.decay_rate,
                dissipation_residual(rep), rep.max_energy_rise, rep.times.size() - 1, rep.dt);
    RunManifest m = make_manifest("simulate", c.board_path);
    m.params = {{"grid", n}, {"dt", cfg.dt}, {"t_end", t_end}, {"init", init}, {"stride", stride}};
    if (init == "beam") m.params.update({{"geodesic", geodesic}, {"h", h}, {"r0", r0}});
    m.seed = seed;
    emit_manifest(c, m);
    return kExitPass;
}

int cmd_beam(const Common& c, const std::string& geodesic, const std::string& h_list, double T, double r0) {
    const DampingBoard board = load_board(c.board_path);
    const std::vector<double> hs = parse_list(h_list, "--h-list");
    std::vector<BeamRow> rows(hs.size());
    parallel_for(hs.size(), c.jobs, [&](std::size_t i) {
        const BeamSpec spec = parse_beam(geodesic, hs[i], r0);
        const Grid grid = beam_grid(spec.h, board.lattice);
        rows[i] = {spec.h, beam_energy(spec, grid), beam_residual(spec, grid, 0.0),
                   damping_observation(spec, board, T, grid, spec.h / 4.0)};
    });
    std::ostringstream csv;
    write_beam_csv(csv, rows);
    write_or_print(c.out, csv.str());
    RunManifest m = make_manifest("beam", c.board_path);
    m.params = {{"geodesic", geodesic}, {"h_list", h_list}, {"T", T}, {"r0", r0}};
    emit_manifest(c, m);
    return kExitPass;
}

int cmd_spectrum(const Common& c, const std::string& k_list, const std::string& eig_out) {
    const DampingBoard board = load_board(c.board_path);
    std::vector<int> Ks;
    for (double k : parse_list(k_list, "--K-list")) {
        if (k != std::floor(k)) throw InvalidArgument("--K-list: K must be an integer");
        Ks.push_back(static_cast<int>(k));
    }
    std::vector<SpectrumReport> reps(Ks.size());
    parallel_for(Ks.size(), c.jobs, [&](std::size_t i) { reps[i] = generator_spectrum(board, board.mass, Ks[i]); });
    std::ostringstream csv;
    write_abscissa_csv(csv, reps);
    write_or_print(c.out, csv.str());
    if (!eig_out.empty()) {
        std::ostringstream eig;
        write_eigenvalues_csv(eig, reps.back().eigenvalues);
        write_text_file(eig_out, eig.str());
    }
    RunManifest m = make_manifest("spectrum", c.board_path);
    m.params = {{"K_list", k_list}, {"mass", board.mass}};
    emit_manifest(c, m);
    return kExitPass;
}

int cmd_observability(const Common& c, const std::string& h_list, double w, const std::string& quasimode_out) {
    const DampingBoard board = load_board(c.board_path);
    const std::vector<double> hs = parse_list(h_list, "--h-list");
    std::vector<ObservabilityReport> reps(hs.size());
    parallel_for(hs.size(), c.jobs, [&](std::size_t i) { reps[i] = min_observability(board, hs[i], w); });
    std::ostringstream csv;
    write_observability_csv(csv, reps);
    write_or_print(c.out, csv.str());
    if (!quasimode_out.empty()) {
        std::ostringstream q;
        write_quasimode_csv(q, reps.back());
        write_text_file(quasimode_out, q.str());
    }
    RunManifest m = make_manifest("observability", c.board_path);
    m.params = {{"h_list", h_list}, {"w", w}};
    emit_manifest(c, m);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Damped waves on flat tori with polygonal damping"};
    app.set_version_flag("--version", std::string(TORUSDAMP_VERSION));
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub, bool has_out) {
        sub->add_option("board", common.board_path, "board file (JSON)")->required();
        if (has_out) sub->add_option("--out", common.out, "output CSV (stdout when omitted)");
        sub->add_option("--manifest", common.manifest, "run manifest path (default: <out>.manifest.json)");
        sub->add_option("--jobs", common.jobs, "parallel sweep width")->check(CLI::PositiveNumber);
    };

    std::string condition = "geom", eps_list;
    bool as_json = false;
    CLI::App* check = app.add_subcommand("check", "geometric verdicts with witness geodesics");
    add_common(check, false);
    check->add_option("--condition", condition, "geom | wgcc | sgcc | ggcc | all");
    check->add_flag("--json", as_json, "machine-readable output");
    check->add_option("--eps-list", eps_list, "tube widths for ggcc (default 2^-3..2^-7 x min feature)");

    int grid_n = 128, stride = 1;
    double dt = 0.0, t_end = 1.0, beam_h = 1.0 / 32.0, r0 = 0.25, T = 1.0, w = 0.5;
    std::string init = "broadband", geodesic, h_list, k_list = "8,12,16", eig_out, quasimode_out;
    std::uint64_t seed = 1;

    CLI::App* simulate = app.add_subcommand("simulate", "damped wave simulation with energy bookkeeping");
    add_common(simulate, true);
    simulate->add_option("--grid", grid_n, "grid points per side (power of two)");
    simulate->add_option("--dt", dt, "time step (default: stability limit / 8)");
    simulate->add_option("--t-end", t_end, "final time");
    simulate->add_option("--init", init, "broadband | beam");
    simulate->add_option("--seed", seed, "seed for broadband data");
    simulate->add_option("--stride", stride, "record every n-th step");
    simulate->add_option("--geodesic", geodesic, "beam geodesic x0,y0,dx,dy");
    simulate->add_option("--beam-h", beam_h, "beam parameter");
    simulate->add_option("--r0", r0, "beam cutoff radius");

    CLI::App* beam = app.add_subcommand("beam", "Gaussian beam diagnostics along a geodesic");
    add_common(beam, true);
    beam->add_option("--geodesic", geodesic, "x0,y0,dx,dy")->required();
    beam->add_option("--h-list", h_list, "comma-separated h values, e.g. 1/32,1/64")->required();
    beam->add_option("--T", T, "observation time");
    beam->add_option("--r0", r0, "cutoff radius");

    CLI::App* spectrum = app.add_subcommand("spectrum", "truncated generator spectrum");
    add_common(spectrum, true);
    spectrum->add_option("--K-list", k_list, "Fourier truncations");
    spectrum->add_option("--eigenvalues-out", eig_out, "full eigenvalue dump for the last K");

    CLI::App* observability = app.add_subcommand("observability", "frequency-shell observability");
    add_common(observability, true);
    observability->add_option("--h-list", h_list, "comma-separated h values")->required();
    observability->add_option("--w", w, "shell window in (0, 1)");
    observability->add_option("--quasimode-out", quasimode_out, "quasimode coefficients for the last h");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    try {
        if (check->parsed()) return cmd_check(common, condition, as_json, eps_list);
        if (simulate->parsed()) return cmd_simulate(common, grid_n, dt, t_end, init, seed, stride, geodesic, beam_h, r0);
        if (beam->parsed()) return cmd_beam(common, geodesic, h_list, T, r0);
        if (spectrum->parsed()) return cmd_spectrum(common, k_list, eig_out);
        if (observability->parsed()) return cmd_observability(common, h_list, w, quasimode_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
