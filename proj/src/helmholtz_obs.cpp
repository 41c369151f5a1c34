#include "torusdamp/helmholtz_obs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "torusdamp/errors.hpp"

namespace torusdamp {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

Vec2 xi_of(Mode k, const TorusLattice& lat) {
    return {2.0 * std::numbers::pi * k[0] / lat.A, 2.0 * std::numbers::pi * k[1] / lat.B};
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// a_hat on the box |d1| <= r1, |d2| <= r2
struct FourierTable {
    int r1 = 0, r2 = 0;
    std::vector<cd> data;
    cd at(int d1, int d2) const { return data[static_cast<std::size_t>(d2 + r2) * (2 * r1 + 1) + (d1 + r1)]; }
};

FourierTable fourier_table(const DampingBoard& board, int r1, int r2) {
    FourierTable t;
    t.r1 = r1;
    t.r2 = r2;
    t.data.resize(static_cast<std::size_t>(2 * r1 + 1) * (2 * r2 + 1));
    for (int d2 = -r2; d2 <= r2; ++d2)
        for (int d1 = 0; d1 <= r1; ++d1) {
            const cd v = damping_fourier(board, {d1, d2});
            t.data[static_cast<std::size_t>(d2 + r2) * (2 * r1 + 1) + (d1 + r1)] = v;
            // a is real, so a_hat(-k) = conj(a_hat(k))
            t.data[static_cast<std::size_t>(-d2 + r2) * (2 * r1 + 1) + (-d1 + r1)] = std::conj(v);
        }
    return t;
}

Eigen::MatrixXcd matrix_from_table(const FourierTable& t, const std::vector<Mode>& modes) {
    const Eigen::Index n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index b = 0; b < n; ++b)
        for (Eigen::Index a = 0; a < n; ++a) m(a, b) = t.at(modes[a][0] - modes[b][0], modes[a][1] - modes[b][1]);
    return m;
}

std::pair<int, int> mode_extent(const std::vector<Mode>& modes) {
    int r1 = 0, r2 = 0;
    for (const Mode& k : modes) {
        r1 = std::max(r1, std::abs(k[0]));
        r2 = std::max(r2, std::abs(k[1]));
    }
    return {r1, r2};
}

}  // namespace

std::complex<double> polygon_fourier_coefficient(const Polygon& poly, Mode k, const TorusLattice& lattice) {
    const Ring& ring = poly.vertices;
    if (k[0] == 0 && k[1] == 0) return signed_area(ring) / lattice.area();
    const Vec2 xi = xi_of(k, lattice);
    const double xi2 = dot(xi, xi);
    cd sum = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = ring[i];
        const Vec2 e = ring[(i + 1) % n] - a;
        const double beta = dot(xi, e);
        const double flux = xi.x * e.y - xi.y * e.x;  // xi . outward normal (unnormalized)
        sum += I * flux / xi2 * std::polar(1.0, -dot(xi, a) - 0.5 * beta) * sinc(0.5 * beta);
    }
    return sum / lattice.area();
}

std::complex<double> damping_fourier(const DampingBoard& board, Mode k) {
    cd s = 0.0;
    for (const Polygon& p : board.polygons) s += p.coefficient * polygon_fourier_coefficient(p, k, board.lattice);
    return s;
}

FrequencyShell shell(const TorusLattice& lattice, double h, double w) {
    if (!(h > 0.0)) throw InvalidArgument("shell: h must be positive");
    if (!(w > 0.0 && w < 1.0)) throw InvalidArgument("shell: window must lie in (0, 1)");
    FrequencyShell s;
    s.h = h;
    s.w = w;
    const double rmax = std::sqrt(1.0 + w) / h;
    const int k1max = static_cast<int>(std::ceil(rmax * lattice.A / (2.0 * std::numbers::pi)));
    const int k2max = static_cast<int>(std::ceil(rmax * lattice.B / (2.0 * std::numbers::pi)));
    for (int k1 = -k1max; k1 <= k1max; ++k1)
        for (int k2 = -k2max; k2 <= k2max; ++k2) {
            const Vec2 xi = xi_of({k1, k2}, lattice);
            if (std::abs(h * h * dot(xi, xi) - 1.0) <= w) s.modes.push_back({k1, k2});
        }
    if (s.modes.empty()) throw EmptyShell("no lattice frequencies in the shell for h = " + std::to_string(h));
    return s;
}

Eigen::MatrixXcd damping_matrix(const DampingBoard& board, const std::vector<Mode>& modes) {
    const auto [r1, r2] = mode_extent(modes);
    return matrix_from_table(fourier_table(board, 2 * r1, 2 * r2), modes);
}

void hermitian_eigen(const Eigen::MatrixXcd& m, Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
    const lapack_int n = static_cast<lapack_int>(m.rows());
    vectors = m;
    values.resize(n);
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, vectors.data(), n, values.data());
    if (info != 0) throw EigenFailure("zheevd failed with info = " + std::to_string(info));
}

void general_eigen(Eigen::MatrixXcd m, Eigen::VectorXcd& values, Eigen::MatrixXcd& vectors) {
    const lapack_int n = static_cast<lapack_int>(m.rows());
    values.resize(n);
    vectors.resize(n, n);
    const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, m.data(), n, values.data(), nullptr, 1,
                                          vectors.data(), n);
    if (info != 0) throw EigenFailure("zgeev failed with info = " + std::to_string(info));
}

ObservabilityReport min_observability(const DampingBoard& board, double h, double w) {
    ObservabilityReport rep;
    rep.h = h;
    rep.w = w;
    rep.shell = shell(board.lattice, h, w);
    const Eigen::MatrixXcd m = damping_matrix(board, rep.shell.modes);
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
    hermitian_eigen(m, values, vectors);
    rep.mu_min = values(0);
    rep.quasimode = vectors.col(0);
    // fix the phase: largest entry real and positive
    Eigen::Index imax = 0;
    rep.quasimode.cwiseAbs().maxCoeff(&imax);
    rep.quasimode *= std::conj(rep.quasimode(imax)) / std::abs(rep.quasimode(imax));
    rep.quasimode.normalize();
    return rep;
}

std::vector<std::pair<double, double>> strip_mass_profile(const ObservabilityReport& report, const TorusLattice& lattice,
                                                          const ClosedDirection& dir, double offset,
                                                          const std::vector<double>& widths) {
    const auto [r1, r2] = mode_extent(report.shell.modes);
    auto size_for = [](int r) {
        int n = 64;
        while (n < 4 * (r + 1)) n *= 2;
        return n;
    };
    const int nx = size_for(r1), ny = size_for(r2);
    const double s = dir.strand_spacing;
    const Vec2 nu = dir.normal();
    std::vector<double> mass(static_cast<std::size_t>(nx) * ny), dist(mass.size());
    double total = 0.0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const Vec2 x{i * lattice.A / nx, j * lattice.B / ny};
            cd u = 0.0;
            for (std::size_t q = 0; q < report.shell.modes.size(); ++q)
                u += report.quasimode(static_cast<Eigen::Index>(q)) * std::polar(1.0, dot(xi_of(report.shell.modes[q], lattice), x));
            const std::size_t k = static_cast<std::size_t>(j) * nx + i;
            mass[k] = std::norm(u);
            total += mass[k];
            double o = std::fmod(dot(x, nu) - offset, s);
            if (o < 0.0) o += s;
            dist[k] = std::min(o, s - o);
        }
    std::vector<std::pair<double, double>> out;
    for (double width : widths) {
        if (width >= s) {
            out.emplace_back(width, 1.0);
            continue;
        }
        double inside = 0.0;
        for (std::size_t k = 0; k < mass.size(); ++k)
            if (dist[k] < 0.5 * width) inside += mass[k];
        out.emplace_back(width, total > 0.0 ? inside / total : 0.0);
    }
    return out;
}

SpectrumReport generator_spectrum(const DampingBoard& board, double mass, int K) {
    if (K < 4) throw InvalidArgument("generator_spectrum: K must be >= 4");
    if (!(mass >= 0.0)) throw InvalidArgument("generator_spectrum: mass must be nonnegative");
    SpectrumReport rep;
    rep.K = K;
    for (int k2 = -K; k2 <= K; ++k2)
        for (int k1 = -K; k1 <= K; ++k1) rep.modes.push_back({k1, k2});
    const Eigen::Index M = static_cast<Eigen::Index>(rep.modes.size());
    const Eigen::MatrixXcd ahat = matrix_from_table(fourier_table(board, 2 * K, 2 * K), rep.modes);
    Eigen::VectorXd stiffness(M);
    Eigen::Index zero_mode = 0;
    for (Eigen::Index q = 0; q < M; ++q) {
        const Vec2 xi = xi_of(rep.modes[q], board.lattice);
        stiffness(q) = dot(xi, xi) + mass;
        if (rep.modes[q][0] == 0 && rep.modes[q][1] == 0) zero_mode = q;
    }

    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
    gen.topRightCorner(M, M).setIdentity();
    for (Eigen::Index q = 0; q < M; ++q) gen(M + q, q) = -stiffness(q);
    gen.bottomRightCorner(M, M) = -ahat;

    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
    general_eigen(gen, values, vectors);

    // stationary residual on the displacement block
    const Eigen::MatrixXcd W = vectors.topRows(M);
    const Eigen::MatrixXcd AW = ahat * W;
    const Eigen::Index n = values.size();
    std::vector<double> residual(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const cd lam = values(c);
        const Eigen::VectorXcd w = W.col(c);
        const Eigen::VectorXcd r = (-stiffness.array() - lam * lam).matrix().cwiseProduct(w) - lam * AW.col(c);
        const double wn = w.norm();
        residual[c] = wn > 0.0 ? r.norm() / wn : 0.0;
    }

    std::vector<bool> skip(n, false);
    if (mass == 0.0) {
        Eigen::Index izero = 0;
        values.cwiseAbs().minCoeff(&izero);
        skip[izero] = true;
        Eigen::Index imean = -1;
        double best = -1.0;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (skip[c]) continue;
            const double wn = W.col(c).squaredNorm();
            const double weight = wn > 0.0 ? std::norm(W(zero_mode, c)) / wn : 0.0;
            if (weight > best) {
                best = weight;
                imean = c;
            }
        }
        if (imean >= 0) skip[imean] = true;
    }
    rep.abscissa = -INFINITY;
    Eigen::Index islow = -1;
    for (Eigen::Index c = 0; c < n; ++c) {
        rep.eigenvalues.push_back(values(c));
        rep.stationary_residuals.push_back(residual[c]);
        if (skip[c]) {
            rep.excluded.push_back(values(c));
            continue;
        }
        if (values(c).real() > rep.abscissa) {
            rep.abscissa = values(c).real();
            islow = c;
        }
    }
    if (islow >= 0) rep.slowest_mode = W.col(islow).normalized();
    return rep;
}

}  // namespace torusdamp
