#include "torusdamp/lemma1d.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "torusdamp/errors.hpp"

namespace torusdamp {

namespace {

constexpr int kStartDegree = 64;
constexpr int kMaxDegree = 2048;
constexpr double kChangeTol = 1e-9;
constexpr int kSupPoints = 1001;
constexpr int kBand = 8;  // k is a trig polynomial in pi z / 2 of this degree

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct GaussRule {
    std::vector<double> nodes, weights;
};

GaussRule gauss_legendre(int n) {
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        g.nodes[i] = x;
        g.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

// Composite Gauss rule on [a, b].
GaussRule composite(double a, double b, int panels, const GaussRule& base) {
    GaussRule out;
    const double hw = 0.5 * (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (2 * p + 1) * hw;
        for (std::size_t i = 0; i < base.nodes.size(); ++i) {
            out.nodes.push_back(mid + hw * base.nodes[i]);
            out.weights.push_back(hw * base.weights[i]);
        }
    }
    return out;
}

struct Cheb {
    int n = 0;
    VectorXd x;  // on [-1, 1], x_j = cos(pi j / n)
    VectorXd w;  // barycentric weights
    MatrixXd d2;  // second derivative in z = 2x
};

Cheb chebyshev(int n) {
    Cheb c;
    c.n = n;
    c.x.resize(n + 1);
    c.w.resize(n + 1);
    for (int j = 0; j <= n; ++j) {
        c.x(j) = std::sin(std::numbers::pi * (n - 2.0 * j) / (2.0 * n));
        c.w(j) = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == n) ? 0.5 : 1.0);
    }
    MatrixXd d(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        double row = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (i == j) continue;
            // x_i - x_j without cancellation
            const double diff = 2.0 * std::sin(std::numbers::pi * (i + j) / (2.0 * n)) *
                                std::sin(std::numbers::pi * (j - i) / (2.0 * n));
            d(i, j) = (c.w(j) / c.w(i)) / diff;
            row += d(i, j);
        }
        d(i, i) = -row;
    }
    c.d2 = d * d;
    for (int i = 0; i <= n; ++i) {
        double row = 0.0;
        for (int j = 0; j <= n; ++j)
            if (i != j) row += c.d2(i, j);
        c.d2(i, i) = -row;
    }
    c.d2 *= 0.25;
    return c;
}

// Rows interpolate nodal values (in z) at the given points.
MatrixXd interpolation_matrix(const Cheb& c, const std::vector<double>& z) {
    MatrixXd e = MatrixXd::Zero(static_cast<Eigen::Index>(z.size()), c.n + 1);
    for (std::size_t p = 0; p < z.size(); ++p) {
        const double x = 0.5 * z[p];
        double sum = 0.0;
        int exact = -1;
        for (int j = 0; j <= c.n; ++j) {
            const double dx = x - c.x(j);
            if (dx == 0.0) {
                exact = j;
                break;
            }
            e(p, j) = c.w(j) / dx;
            sum += e(p, j);
        }
        if (exact >= 0) {
            e.row(p).setZero();
            e(p, exact) = 1.0;
        } else {
            e.row(p) /= sum;
        }
    }
    return e;
}

// Trig basis of the random sources at points z: columns 1, cos(j pi z / 2), sin(j pi z / 2).
MatrixXd trig_basis(const VectorXd& z) {
    MatrixXd b(z.size(), 2 * kBand + 1);
    for (Eigen::Index p = 0; p < z.size(); ++p) {
        b(p, 0) = 1.0;
        for (int j = 1; j <= kBand; ++j) {
            b(p, 2 * j - 1) = std::cos(j * std::numbers::pi * z(p) / 2.0);
            b(p, 2 * j) = std::sin(j * std::numbers::pi * z(p) / 2.0);
        }
    }
    return b;
}

struct Batch {
    // source values at nodes, given the node vector z
    std::function<MatrixXd(const VectorXd&)> source;
    VectorXd left, right;
};

struct BatchSolution {
    int degree = 0;
    MatrixXd sup_values;  // at the uniform points of [-1, 1]
    MatrixXd outer_values;  // at the outer Gauss nodes
};

const std::vector<double>& sup_points() {
    static const std::vector<double> pts = [] {
        std::vector<double> p(kSupPoints);
        for (int i = 0; i < kSupPoints; ++i) p[i] = -1.0 + 2.0 * i / (kSupPoints - 1);
        return p;
    }();
    return pts;
}

const GaussRule& outer_rule() {
    static const GaussRule rule = [] {
        const GaussRule base = gauss_legendre(8);
        GaussRule l = composite(-2.0, -1.0, 32, base), r = composite(1.0, 2.0, 32, base);
        l.nodes.insert(l.nodes.end(), r.nodes.begin(), r.nodes.end());
        l.weights.insert(l.weights.end(), r.weights.begin(), r.weights.end());
        return l;
    }();
    return rule;
}

const GaussRule& full_rule() {
    static const GaussRule rule = composite(-2.0, 2.0, 128, gauss_legendre(8));
    return rule;
}

BatchSolution solve_batch(double tau, const Batch& batch) {
    MatrixXd prev;
    for (int n = kStartDegree; n <= kMaxDegree; n *= 2) {
        const Cheb c = chebyshev(n);
        const VectorXd z = 2.0 * c.x;
        MatrixXd op = c.d2;
        op.diagonal().array() += tau;
        MatrixXd rhs = batch.source(z);
        // node 0 is z = 2, node n is z = -2
        op.row(0).setZero();
        op(0, 0) = 1.0;
        op.row(n).setZero();
        op(n, n) = 1.0;
        rhs.row(0) = batch.right.transpose();
        rhs.row(n) = batch.left.transpose();
        const MatrixXd v = op.partialPivLu().solve(rhs);
        MatrixXd sup = interpolation_matrix(c, sup_points()) * v;
        if (!sup.allFinite()) throw NonConvergence("1-D solve produced non-finite values");
        if (prev.size() > 0) {
            // changes are measured against the size of v on the whole interval
            double worst = 0.0;
            for (Eigen::Index col = 0; col < sup.cols(); ++col) {
                const double scale = std::max(v.col(col).cwiseAbs().maxCoeff(), 1e-300);
                worst = std::max(worst, (sup.col(col) - prev.col(col)).cwiseAbs().maxCoeff() / scale);
            }
            if (worst < kChangeTol) {
                BatchSolution out;
                out.degree = n;
                out.sup_values = std::move(sup);
                out.outer_values = interpolation_matrix(c, outer_rule().nodes) * v;
                return out;
            }
        }
        prev = std::move(sup);
    }
    throw NonConvergence("1-D collocation did not converge up to degree " + std::to_string(kMaxDegree) +
                         " for tau = " + std::to_string(tau));
}

double ratio_of(double sup, double l2, double l1, double tau) {
    return sup / (l2 + l1 / std::sqrt(1.0 + std::abs(tau)));
}

VectorXd column_l2(const MatrixXd& outer) {
    const GaussRule& g = outer_rule();
    const Eigen::Map<const VectorXd> w(g.weights.data(), static_cast<Eigen::Index>(g.weights.size()));
    return (w.asDiagonal() * outer.cwiseAbs2()).colwise().sum().cwiseSqrt().transpose();
}

}  // namespace

Lemma1dSolve solve_1d(double tau, const std::function<double(double)>& k, double left, double right) {
    Batch b;
    b.source = [&](const VectorXd& z) {
        MatrixXd out(z.size(), 1);
        for (Eigen::Index i = 0; i < z.size(); ++i) out(i, 0) = k(z(i));
        return out;
    };
    b.left = VectorXd::Constant(1, left);
    b.right = VectorXd::Constant(1, right);
    const BatchSolution s = solve_batch(tau, b);
    Lemma1dSolve out;
    out.degree = s.degree;
    out.sup_inner = s.sup_values.cwiseAbs().maxCoeff();
    out.l2_outer = column_l2(s.outer_values)(0);
    const GaussRule& g = full_rule();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) out.l1_source += g.weights[i] * std::abs(k(g.nodes[i]));
    out.ratio = ratio_of(out.sup_inner, out.l2_outer, out.l1_source, tau);
    return out;
}

Lemma1dReport verify_1d_estimate(const std::vector<double>& taus, int trials, std::uint64_t seed) {
    if (trials < 1) throw InvalidArgument("verify_1d_estimate: trials must be >= 1");
    if (taus.empty()) throw InvalidArgument("verify_1d_estimate: no tau samples");
    Lemma1dReport rep;
    const GaussRule& g = full_rule();
    const VectorXd gz = Eigen::Map<const VectorXd>(g.nodes.data(), static_cast<Eigen::Index>(g.nodes.size()));
    const MatrixXd g_basis = trig_basis(gz);
    for (std::size_t t = 0; t < taus.size(); ++t) {
        const double tau = taus[t];
        // one stream per tau so that doubling trials extends the sample set
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(t)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal;
        std::uniform_real_distribution<double> expo(-2.0, 2.0);
        MatrixXd coef(2 * kBand + 1, trials);
        VectorXd left(trials), right(trials);
        for (int s = 0; s < trials; ++s) {
            const double scale = std::pow(10.0, expo(rng));
            for (int j = 0; j < coef.rows(); ++j) coef(j, s) = scale * normal(rng) / (1.0 + j / 2);
            left(s) = normal(rng);
            right(s) = normal(rng);
        }
        Batch b;
        b.source = [&](const VectorXd& z) -> MatrixXd { return trig_basis(z) * coef; };
        b.left = left;
        b.right = right;
        const BatchSolution sol = solve_batch(tau, b);
        const VectorXd l2 = column_l2(sol.outer_values);
        const MatrixXd kvals = g_basis * coef;
        Lemma1dTau row;
        row.tau = tau;
        row.degree = sol.degree;
        for (int s = 0; s < trials; ++s) {
            double l1 = 0.0;
            for (Eigen::Index i = 0; i < kvals.rows(); ++i) l1 += g.weights[i] * std::abs(kvals(i, s));
            const double r = ratio_of(sol.sup_values.col(s).cwiseAbs().maxCoeff(), l2(s), l1, tau);
            row.max_ratio = std::max(row.max_ratio, r);
        }
        rep.max_ratio = std::max(rep.max_ratio, row.max_ratio);
        rep.per_tau.push_back(row);
    }
    return rep;
}

}  // namespace torusdamp
