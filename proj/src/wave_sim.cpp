#include "torusdamp/wave_sim.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "torusdamp/errors.hpp"

namespace torusdamp {

double cfl_limit(const Grid& grid) { return 0.4 * std::min(grid.hx(), grid.hy()); }

Field rasterize_damping(const DampingBoard& board, const Grid& grid, int subsamples) {
    if (subsamples < 1) throw InvalidArgument("rasterize_damping: subsamples must be >= 1");
    validate_grid(grid);
    const double hx = grid.hx(), hy = grid.hy();
    const double sub = static_cast<double>(subsamples);
    const double tol = board.lattice.tol();
    Field out(grid.size(), 0.0);
    // subsample points cover [-hx/2, A - hx/2) x [-hy/2, B - hy/2)
    const Box domain{{-0.5 * hx, -0.5 * hy}, {grid.lattice.A, grid.lattice.B}};
    const long total_x = static_cast<long>(grid.nx) * subsamples;
    const long total_y = static_cast<long>(grid.ny) * subsamples;
    const double sx = hx / sub, sy = hy / sub;
    for (const Polygon& poly : board.polygons) {
        const Box pb = bounding_box(poly.vertices);
        for (const Vec2& t : lattice_shifts_meeting(pb, domain, grid.lattice)) {
            const Ring ring = translated(poly.vertices, t);
            const Box b = bounding_box(ring);
            // subsample index p sits at -hx/2 + (p + 1/2) sx
            const long p0 = std::max(0L, static_cast<long>(std::floor((b.lo.x + 0.5 * hx) / sx - 0.5)));
            const long p1 = std::min(total_x - 1, static_cast<long>(std::ceil((b.hi.x + 0.5 * hx) / sx - 0.5)));
            const long q0 = std::max(0L, static_cast<long>(std::floor((b.lo.y + 0.5 * hy) / sy - 0.5)));
            const long q1 = std::min(total_y - 1, static_cast<long>(std::ceil((b.hi.y + 0.5 * hy) / sy - 0.5)));
            for (long q = q0; q <= q1; ++q) {
                const double y = -0.5 * hy + (q + 0.5) * sy;
                for (long p = p0; p <= p1; ++p) {
                    const double x = -0.5 * hx + (p + 0.5) * sx;
                    if (locate({x, y}, ring, tol) != Location::interior) continue;
                    const std::size_t cell = static_cast<std::size_t>(q / subsamples) * grid.nx + static_cast<std::size_t>(p / subsamples);
                    out[cell] += poly.coefficient;
                }
            }
        }
    }
    for (double& a : out) a /= sub * sub;
    return out;
}

double energy(const WaveState& state, Spectral& spectral, double mass) {
    const Grid& g = spectral.grid();
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) s += state.v[k] * state.v[k] + mass * state.u[k] * state.u[k];
    return spectral.gradient_energy(state.u) + s * g.cell_area();
}

double energy(const WaveState& state, const Grid& grid, double mass) {
    Spectral spectral(grid);
    return energy(state, spectral, mass);
}

WaveState broadband_state(const Grid& grid, std::uint64_t seed, int k_max, double mass) {
    Spectral spectral(grid);
    if (k_max <= 0) k_max = grid.nx / 4;
    if (k_max >= std::min(grid.nx, grid.ny) / 2) throw InvalidArgument("broadband k_max must stay below the Nyquist index");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int hw = spectral.half_width();
    ComplexField cu(static_cast<std::size_t>(grid.ny) * hw), cv(cu.size());
    auto index = [&](int i, int k2) { return static_cast<std::size_t>(k2 >= 0 ? k2 : k2 + grid.ny) * hw + i; };
    for (int j = 0; j < grid.ny; ++j) {
        const int k2 = spectral.k2_of(j);
        for (int i = 0; i <= k_max; ++i) {
            if (i * i + k2 * k2 > k_max * k_max || (i == 0 && k2 <= 0)) continue;
            const double ur = normal(rng), ui = normal(rng), vr = normal(rng), vi = normal(rng);
            cu[index(i, k2)] = {ur, ui};
            cv[index(i, k2)] = {vr, vi};
            if (i == 0) {
                cu[index(0, -k2)] = std::conj(cu[index(i, k2)]);
                cv[index(0, -k2)] = std::conj(cv[index(i, k2)]);
            }
        }
    }
    WaveState s;
    spectral.inverse(cu, s.u);
    spectral.inverse(cv, s.v);
    const double e = energy(s, spectral, mass);
    const double scale = e > 0.0 ? 1.0 / std::sqrt(e) : 0.0;
    for (double& x : s.u) x *= scale;
    for (double& x : s.v) x *= scale;
    return s;
}

WaveState modes_state(const Grid& grid, const std::vector<ModeInit>& modes) {
    WaveState s;
    s.u.assign(grid.size(), 0.0);
    s.v.assign(grid.size(), 0.0);
    for (const ModeInit& m : modes) {
        const double kx = 2.0 * std::numbers::pi * m.k1 / grid.lattice.A;
        const double ky = 2.0 * std::numbers::pi * m.k2 / grid.lattice.B;
        for (int j = 0; j < grid.ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const Vec2 x = grid.point(i, j);
                const std::complex<double> e = std::polar(1.0, kx * x.x + ky * x.y);
                const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
                s.u[k] += (m.u_coeff * e).real();
                s.v[k] += (m.v_coeff * e).real();
            }
    }
    return s;
}

WaveState initial_state(const InitialData& init, const Grid& grid, double mass) {
    validate_grid(grid);
    if (const auto* b = std::get_if<BroadbandInit>(&init)) return broadband_state(grid, b->seed, b->k_max, mass);
    if (const auto* beam = std::get_if<BeamSpec>(&init)) {
        auto [u, v] = beam_initial_data(*beam, grid);
        return WaveState{std::move(u), std::move(v), 0.0};
    }
    if (const auto* modes = std::get_if<std::vector<ModeInit>>(&init)) return modes_state(grid, *modes);
    WaveState s = std::get<WaveState>(init);
    if (s.u.size() != grid.size() || s.v.size() != grid.size()) throw InvalidArgument("initial state does not match grid");
    return s;
}

WaveSolver::WaveSolver(const Grid& grid, SimConfig config) : grid_(grid), config_(std::move(config)), spectral_(grid) {
    if (!(config_.dt > 0.0) || !(config_.t_end > 0.0)) throw InvalidArgument("dt and t_end must be positive");
    if (config_.dt > cfl_limit(grid) * (1.0 + 1e-12))
        throw CflViolation("dt = " + std::to_string(config_.dt) + " exceeds the stability limit " + std::to_string(cfl_limit(grid)));
    if (!(config_.mass >= 0.0)) throw InvalidArgument("mass must be nonnegative");
    if (config_.damping_raster.empty()) config_.damping_raster.assign(grid.size(), 0.0);
    if (config_.damping_raster.size() != grid.size()) throw InvalidArgument("damping raster does not match grid");
    for (double a : config_.damping_raster)
        if (!(a >= 0.0)) throw InvalidArgument("damping raster must be nonnegative");
    if (config_.stride < 1) throw InvalidArgument("stride must be >= 1");
}

void WaveSolver::force(const Field& u, Field& out) {
    spectral_.laplacian(u, out);
    if (config_.mass != 0.0)
        for (std::size_t k = 0; k < u.size(); ++k) out[k] -= config_.mass * u[k];
}

void WaveSolver::step(WaveState& s) {
    const double dt = config_.dt;
    const Field& a = config_.damping_raster;
    force(s.u, lap_);
    for (std::size_t k = 0; k < s.u.size(); ++k) s.v[k] = (1.0 - 0.5 * dt * a[k]) * s.v[k] + 0.5 * dt * lap_[k];
    for (std::size_t k = 0; k < s.u.size(); ++k) s.u[k] += dt * s.v[k];
    force(s.u, lap_);
    for (std::size_t k = 0; k < s.u.size(); ++k) s.v[k] = (s.v[k] + 0.5 * dt * lap_[k]) / (1.0 + 0.5 * dt * a[k]);
    s.t += dt;
}

TrajectoryReport WaveSolver::run(WaveState s) {
    const double dt = config_.dt;
    const Field& a = config_.damping_raster;
    const double cell = grid_.cell_area();
    const long nsteps = static_cast<long>(std::ceil(config_.t_end / dt - 1e-9));

    auto power = [&](const WaveState& st) {
        double p = 0.0;
        for (std::size_t k = 0; k < st.v.size(); ++k) p += a[k] * st.v[k] * st.v[k];
        return 2.0 * p * cell;
    };
    // energy from the cached force: integral of |grad u|^2 equals -<u, Laplacian u>
    auto energy_from_force = [&](const WaveState& st) {
        double e = 0.0;
        for (std::size_t k = 0; k < st.u.size(); ++k) e += -st.u[k] * lap_[k] + st.v[k] * st.v[k];
        return e * cell;
    };

    TrajectoryReport rep;
    rep.dt = dt;
    force(s.u, lap_);
    double e_prev = energy_from_force(s);
    const double e0 = e_prev;
    double p_prev = power(s);
    double dissipated = 0.0;
    rep.times.push_back(s.t);
    rep.energies.push_back(e0);
    rep.dissipated.push_back(0.0);

    for (long n = 1; n <= nsteps; ++n) {
        for (std::size_t k = 0; k < s.u.size(); ++k) s.v[k] = (1.0 - 0.5 * dt * a[k]) * s.v[k] + 0.5 * dt * lap_[k];
        for (std::size_t k = 0; k < s.u.size(); ++k) s.u[k] += dt * s.v[k];
        force(s.u, lap_);
        for (std::size_t k = 0; k < s.u.size(); ++k) s.v[k] = (s.v[k] + 0.5 * dt * lap_[k]) / (1.0 + 0.5 * dt * a[k]);
        s.t = n * dt;

        const double e = energy_from_force(s);
        const double p = power(s);
        dissipated += 0.5 * dt * (p_prev + p);
        if (e0 > 0.0) rep.max_energy_rise = std::max(rep.max_energy_rise, (e - e_prev) / e0);
        e_prev = e;
        p_prev = p;
        if (n % config_.stride == 0 || n == nsteps) {
            rep.times.push_back(s.t);
            rep.energies.push_back(e);
            rep.dissipated.push_back(dissipated);
        }
    }
    bool positive = rep.times.size() >= 2;
    for (double e : rep.energies) positive = positive && e > 0.0;
    rep.decay_rate = positive ? decay_rate(rep, rep.times.front(), rep.times.back()) : 0.0;
    return rep;
}

WaveState step(const WaveState& state, const SimConfig& config, const Grid& grid) {
    WaveSolver solver(grid, config);
    WaveState out = state;
    solver.step(out);
    return out;
}

TrajectoryReport run(const DampingBoard& board, const InitialData& init, const Grid& grid, SimConfig config) {
    if (config.damping_raster.empty()) config.damping_raster = rasterize_damping(board, grid);
    WaveState s = initial_state(init, grid, config.mass);
    WaveSolver solver(grid, std::move(config));
    return solver.run(std::move(s));
}

double dissipation_residual(const TrajectoryReport& report) {
    if (report.energies.empty() || report.energies.front() == 0.0) return 0.0;
    const double e0 = report.energies.front();
    double r = 0.0;
    for (std::size_t k = 0; k < report.energies.size(); ++k)
        r = std::max(r, std::abs(report.energies[k] - e0 + report.dissipated[k]) / e0);
    return r;
}

double decay_rate(const TrajectoryReport& report, double t0, double t1) {
    if (report.times.empty() || !(t1 > t0)) throw InvalidArgument("decay_rate: empty trajectory or window");
    const double slack = 1e-9 * std::max(1.0, std::abs(report.times.back()));
    if (t0 < report.times.front() - slack || t1 > report.times.back() + slack)
        throw InvalidArgument("decay_rate: window outside trajectory");
    double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t k = 0; k < report.times.size(); ++k) {
        const double t = report.times[k];
        if (t < t0 - slack || t > t1 + slack) continue;
        if (!(report.energies[k] > 0.0)) throw InvalidArgument("decay_rate: energies must be positive on the window");
        const double y = std::log(report.energies[k]);
        n += 1;
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    if (n < 2) throw InvalidArgument("decay_rate: need at least two samples in the window");
    const double slope = (n * sty - st * sy) / (n * stt - st * st);
    return -slope;
}

}  // namespace torusdamp
