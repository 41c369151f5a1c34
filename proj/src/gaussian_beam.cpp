#include "torusdamp/gaussian_beam.hpp"

#include <cmath>
#include <numbers>

#include "torusdamp/errors.hpp"
#include "torusdamp/wave_sim.hpp"

namespace torusdamp {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

// Smooth radial cutoff: 1 on [0, r0/2], 0 beyond r0. Returns value and d/dr.
std::pair<double, double> bump(double r, double r0) {
    const double half = 0.5 * r0;
    if (r <= half) return {1.0, 0.0};
    if (r >= r0) return {0.0, 0.0};
    const double tau = (r - half) / half;
    const double a = std::exp(-1.0 / (1.0 - tau));
    const double b = std::exp(-1.0 / tau);
    const double da = -a / ((1.0 - tau) * (1.0 - tau));
    const double db = b / (tau * tau);
    const double sum = a + b;
    return {a / sum, (da * b - a * db) / (sum * sum) / half};
}

struct BeamFrame {
    Vec2 u;
    Vec2 nu;
    double amplitude;
};

BeamFrame frame_of(const BeamSpec& spec) {
    const Vec2 u = spec.geodesic.direction * (1.0 / norm(spec.geodesic.direction));
    return {u, left_normal(u), std::sqrt(2.0 / std::numbers::pi) * std::sqrt(spec.h)};
}

// Beam value and (optionally) its time derivative at one point.
void evaluate(const BeamSpec& spec, const BeamFrame& f, const TorusLattice& lat, double t, Vec2 x, cd* value, cd* dvalue) {
    const Vec2 center = spec.geodesic.base + f.u * t;
    Vec2 d = x - center;
    d.x -= lat.A * std::round(d.x / lat.A);
    d.y -= lat.B * std::round(d.y / lat.B);
    const double s = -dot(d, f.u);
    const double xp = dot(d, f.nu);
    const double r = std::hypot(s, xp);
    const auto [sig, dsig_dr] = bump(r, spec.cutoff_radius);
    if (sig == 0.0) {
        if (value) *value = 0.0;
        if (dvalue) *dvalue = 0.0;
        return;
    }
    const double h = spec.h;
    const cd N = 1.0 + 2.0 * I * s;
    const cd D = N - 2.0 * I * t;
    const cd g = N / D;
    const cd Phi = s + I * (s * s + g * xp * xp);
    const cd w = std::sqrt(g);
    const cd E = std::exp(I * Phi / h);
    if (value) *value = f.amplitude * E * sig * w;
    if (dvalue) {
        const cd dg = (2.0 * I * N + 4.0 * t) / (D * D);  // total t-derivative of g along x fixed
        const cd dPhi = 1.0 + 2.0 * I * s + I * dg * xp * xp;
        const cd dw = dg / (2.0 * w);
        const double dsig = r > 0.0 ? dsig_dr * s / r : 0.0;
        *dvalue = f.amplitude * E * ((I / h) * dPhi * sig * w + dsig * w + sig * dw);
    }
}

}  // namespace

void validate_beam(const BeamSpec& spec) {
    if (!(spec.h > 0.0 && spec.h < 1.0)) throw InvalidArgument("beam: h must lie in (0, 1)");
    if (!(spec.cutoff_radius > 0.0)) throw InvalidArgument("beam: cutoff radius must be positive");
    if (spec.order != 1) throw InvalidArgument("beam: only order 1 is supported");
    if (!(norm(spec.geodesic.direction) > 0.0)) throw InvalidArgument("beam: geodesic direction must be nonzero");
}

std::complex<double> beam_g(double t) { return 1.0 / (1.0 - 2.0 * I * t); }

std::complex<double> phase(double t, double x1, double xperp) {
    const double s = t - x1;
    return s + I * (s * s + beam_g(t) * xperp * xperp);
}

double beam_max_spacing(double h) {
    return std::min(std::sqrt(h) / 4.0, std::numbers::pi * h / (1.0 + 6.0 * std::sqrt(h)));
}

Grid beam_grid(double h, const TorusLattice& lattice) {
    const double dx = beam_max_spacing(h);
    auto size_for = [&](double period) {
        int n = 16;
        while (period / n > dx) n *= 2;
        return n;
    };
    return Grid{size_for(lattice.A), size_for(lattice.B), lattice};
}

void check_beam_resolution(const BeamSpec& spec, const Grid& grid) {
    validate_beam(spec);
    validate_grid(grid);
    const double dx = beam_max_spacing(spec.h);
    if (grid.hx() > dx * (1.0 + 1e-12) || grid.hy() > dx * (1.0 + 1e-12))
        throw UnderResolved("grid spacing " + std::to_string(std::max(grid.hx(), grid.hy())) + " exceeds " +
                            std::to_string(dx) + " needed for h = " + std::to_string(spec.h));
    if (2.0 * spec.cutoff_radius >= std::min(grid.lattice.A, grid.lattice.B))
        throw InvalidArgument("beam: cutoff diameter must be smaller than the lattice periods");
}

BeamField beam_field(const BeamSpec& spec, double t, const Grid& grid) {
    check_beam_resolution(spec, grid);
    const BeamFrame f = frame_of(spec);
    BeamField out;
    out.t = t;
    out.values.resize(grid.size());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            evaluate(spec, f, grid.lattice, t, grid.point(i, j), &out.values[static_cast<std::size_t>(j) * grid.nx + i], nullptr);
    return out;
}

ComplexField beam_time_derivative(const BeamSpec& spec, double t, const Grid& grid) {
    check_beam_resolution(spec, grid);
    const BeamFrame f = frame_of(spec);
    ComplexField out(grid.size());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            evaluate(spec, f, grid.lattice, t, grid.point(i, j), nullptr, &out[static_cast<std::size_t>(j) * grid.nx + i]);
    return out;
}

std::pair<Field, Field> beam_initial_data(const BeamSpec& spec, const Grid& grid) {
    const BeamField v = beam_field(spec, 0.0, grid);
    const ComplexField dv = beam_time_derivative(spec, 0.0, grid);
    Field u(grid.size()), ut(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        u[k] = v.values[k].real();
        ut[k] = dv[k].real();
    }
    return {std::move(u), std::move(ut)};
}

double beam_energy(const BeamSpec& spec, const Grid& grid) {
    auto [u, v] = beam_initial_data(spec, grid);
    return energy(WaveState{std::move(u), std::move(v), 0.0}, grid, 0.0);
}

double beam_residual(const BeamSpec& spec, const Grid& grid, double t) {
    check_beam_resolution(spec, grid);
    const double delta = spec.h * spec.h / 8.0;
    auto real_part = [&](double tt) {
        const BeamField b = beam_field(spec, tt, grid);
        Field out(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) out[k] = b.values[k].real();
        return out;
    };
    const Field c = real_part(t);
    const Field p1 = real_part(t + delta), m1 = real_part(t - delta);
    const Field p2 = real_part(t + 0.5 * delta), m2 = real_part(t - 0.5 * delta);
    Field lap;
    Spectral spectral(grid);
    spectral.laplacian(c, lap);
    double sum = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double d1 = (p1[k] - 2.0 * c[k] + m1[k]) / (delta * delta);
        const double d2 = (p2[k] - 2.0 * c[k] + m2[k]) / (0.25 * delta * delta);
        const double vtt = (4.0 * d2 - d1) / 3.0;
        const double r = vtt - lap[k];
        sum += r * r;
    }
    return std::sqrt(sum * grid.cell_area());
}

double damping_observation(const BeamSpec& spec, const DampingBoard& board, double T, const Grid& grid, double dt) {
    if (!(T > 0.0)) throw InvalidArgument("damping_observation: T must be positive");
    if (!(dt > 0.0)) throw InvalidArgument("damping_observation: dt must be positive");
    check_beam_resolution(spec, grid);
    const Field a = rasterize_damping(board, grid);
    std::vector<std::size_t> damped;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > 0.0) damped.push_back(k);
    if (damped.empty()) return 0.0;
    const BeamFrame f = frame_of(spec);
    const long n = static_cast<long>(std::ceil(T / dt - 1e-9));
    const double step = T / static_cast<double>(n);
    double total = 0.0;
    for (long k = 0; k <= n; ++k) {
        const double t = k * step;
        double s = 0.0;
        for (std::size_t idx : damped) {
            cd dv;
            const int i = static_cast<int>(idx % grid.nx), j = static_cast<int>(idx / grid.nx);
            evaluate(spec, f, grid.lattice, t, grid.point(i, j), nullptr, &dv);
            s += a[idx] * dv.real() * dv.real();
        }
        total += (k == 0 || k == n ? 0.5 : 1.0) * step * s;
    }
    return total * grid.cell_area();
}

}  // namespace torusdamp
