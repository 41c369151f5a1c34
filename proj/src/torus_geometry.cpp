#include "torusdamp/torus_geometry.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <tuple>

#include "torusdamp/errors.hpp"

namespace torusdamp {

namespace {

// a*x + b*y = g with g = gcd(|a|, |b|) >= 0
std::tuple<long, long, long> extended_gcd(long a, long b) {
    long old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
        const long q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_x, x) = std::make_pair(x, old_x - q * x);
        std::tie(old_y, y) = std::make_pair(y, old_y - q * y);
    }
    if (old_r < 0) return {-old_r, -old_x, -old_y};
    return {old_r, old_x, old_y};
}

double wrap(double v, double period) {
    double r = std::fmod(v, period);
    if (r < 0.0) r += period;
    if (r >= period) r = 0.0;
    return r + 0.0;  // no negative zero
}

std::pair<double, double> projection_range(const Ring& ring, Vec2 axis) {
    double lo = INFINITY, hi = -INFINITY;
    for (const Vec2& p : ring) {
        const double d = dot(p, axis);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

}  // namespace

Vec2 ClosedDirection::strand_shift(const TorusLattice& lattice) const {
    const auto [g, x, y] = extended_gcd(n, m);
    (void)g;
    return lattice.vector(-y, x);
}

ClosedDirection make_direction(int n, int m, const TorusLattice& lattice) {
    if (n == 0 && m == 0) throw InvalidArgument("closed direction (0,0)");
    if (std::gcd(std::abs(n), std::abs(m)) != 1) throw InvalidArgument("closed direction must be primitive");
    ClosedDirection d;
    d.n = n;
    d.m = m;
    const Vec2 v{n * lattice.A, m * lattice.B};
    d.loop_length = norm(v);
    d.unit = v * (1.0 / d.loop_length);
    d.strand_spacing = lattice.area() / d.loop_length;
    return d;
}

Geodesic geodesic_at(const ClosedDirection& dir, double offset) {
    return {dir.normal() * offset, dir.unit, dir.loop_length};
}

std::string to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::no_damping: return "no-damping";
        case FailureKind::misses_damping: return "misses-damping";
        case FailureKind::corners_only: return "corners-only";
        case FailureKind::one_sided_left: return "one-sided-left";
        case FailureKind::one_sided_right: return "one-sided-right";
        case FailureKind::two_sided: return "two-sided";
    }
    return "unknown";
}

std::string to_string(Condition cond) {
    switch (cond) {
        case Condition::geom: return "GEOM";
        case Condition::wgcc: return "WGCC";
        case Condition::sgcc: return "SGCC";
        case Condition::ggcc: return "GGCC";
    }
    return "unknown";
}

std::vector<ClosedDirection> closed_directions(const TorusLattice& lattice, double bound) {
    if (!(bound > 0.0)) throw InvalidArgument("closed_directions: bound must be positive");
    std::vector<ClosedDirection> out;
    const int nmax = static_cast<int>(std::floor(bound / lattice.A));
    const int mmax = static_cast<int>(std::floor(bound / lattice.B));
    const double b2 = bound * bound * (1.0 + 1e-12);
    for (int m = 0; m <= mmax; ++m) {
        for (int n = -nmax; n <= nmax; ++n) {
            if (m == 0 && n <= 0) continue;
            if (std::gcd(std::abs(n), m) != 1) continue;
            const double l2 = n * n * lattice.A * lattice.A + m * m * lattice.B * lattice.B;
            if (l2 <= b2) out.push_back(make_direction(n, m, lattice));
        }
    }
    std::sort(out.begin(), out.end(), [](const ClosedDirection& a, const ClosedDirection& b) {
        if (a.loop_length != b.loop_length) return a.loop_length < b.loop_length;
        if (a.m != b.m) return a.m < b.m;
        return a.n > b.n;
    });
    return out;
}

double direction_bound(const DampingBoard& board) {
    if (board.polygons.empty()) throw NoDamping();
    const double precision = 1e-4 * std::max(board.lattice.A, board.lattice.B);
    double rho = 0.0;
    for (const Polygon& p : board.polygons) rho = std::max(rho, pole_of_inaccessibility(p.vertices, precision).first);
    return board.lattice.area() / (2.0 * rho);
}

bool projection_covers(const ClosedDirection& dir, const DampingBoard& board, double offset) {
    const double s = dir.strand_spacing;
    const double tol = board.lattice.tol();
    const Vec2 nu = dir.normal();
    for (const Polygon& p : board.polygons) {
        const auto [lo, hi] = projection_range(p.vertices, nu);
        const double width = hi - lo;
        const double t = wrap(offset - lo, s);
        if ((t > tol && t < width - tol) || (t + s < width - tol)) return true;
    }
    return false;
}

LineProfile line_profile(const ClosedDirection& dir, double offset, const DampingBoard& board) {
    const double tol = board.lattice.tol();
    const double delta = 100.0 * tol;
    const double L = dir.loop_length;
    const double s = dir.strand_spacing;
    const Vec2 u = dir.unit;
    const Vec2 nu = dir.normal();
    const Vec2 tau1 = dir.strand_shift(board.lattice);
    const double tau1_u = dot(tau1, u);

    struct Piece {
        double t0, t1;
        bool left, right;
    };
    std::vector<Piece> pieces;
    LineProfile prof;
    std::vector<double> ts;

    for (const Polygon& poly : board.polygons) {
        const Ring& ring = poly.vertices;
        const auto [pmin, pmax] = projection_range(ring, nu);
        const long q0 = static_cast<long>(std::ceil((offset - pmax - tol) / s));
        const long q1 = static_cast<long>(std::floor((offset - pmin + tol) / s));
        for (long q = q0; q <= q1; ++q) {
            const double c = offset - static_cast<double>(q) * s;
            const double shift_t = static_cast<double>(q) * tau1_u;
            ts.clear();
            const std::size_t n = ring.size();
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2 a = ring[i], b = ring[(i + 1) % n];
                const double da = dot(a, nu) - c, db = dot(b, nu) - c;
                if (std::abs(da) <= tol) ts.push_back(dot(a, u));
                if ((da > tol && db < -tol) || (da < -tol && db > tol))
                    ts.push_back(dot(a, u) + (dot(b, u) - dot(a, u)) * da / (da - db));
            }
            if (ts.empty()) continue;
            prof.touches = true;
            std::sort(ts.begin(), ts.end());
            for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
                const double t0 = ts[k], t1 = ts[k + 1];
                if (t1 - t0 <= tol) continue;
                const Vec2 x = nu * c + u * (0.5 * (t0 + t1));
                const bool left = locate(x + nu * delta, ring, 0.1 * delta) == Location::interior;
                const bool right = locate(x - nu * delta, ring, 0.1 * delta) == Location::interior;
                if (left || right) pieces.push_back({t0 + shift_t, t1 + shift_t, left, right});
            }
        }
    }
    if (pieces.empty()) return prof;

    std::vector<Piece> folded;
    for (const Piece& p : pieces) {
        const double len = p.t1 - p.t0;
        if (len >= L) {
            folded.push_back({0.0, L, p.left, p.right});
            continue;
        }
        const double a = wrap(p.t0, L);
        const double b = a + len;
        if (b <= L) {
            folded.push_back({a, b, p.left, p.right});
        } else {
            folded.push_back({a, L, p.left, p.right});
            folded.push_back({0.0, b - L, p.left, p.right});
        }
    }
    std::vector<double> events{0.0, L};
    for (const Piece& p : folded) {
        events.push_back(p.t0);
        events.push_back(p.t1);
    }
    std::sort(events.begin(), events.end());
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
        const double len = events[k + 1] - events[k];
        if (len <= 0.0) continue;
        const double mid = 0.5 * (events[k] + events[k + 1]);
        bool left = false, right = false;
        for (const Piece& p : folded) {
            if (p.t0 < mid && mid < p.t1) {
                left = left || p.left;
                right = right || p.right;
            }
        }
        if (left && right) prof.interior += len;
        else if (left) prof.left_only += len;
        else if (right) prof.right_only += len;
    }
    return prof;
}

std::vector<std::pair<double, double>> Coverage::covered_arcs() const {
    std::vector<std::pair<double, double>> arcs;
    const std::size_t n = exceptional.size();
    if (n == 0) {
        if (!segments.empty() && segments[0].covered) arcs.emplace_back(0.0, spacing);
        return arcs;
    }
    // items: point i at 2i, segment i at 2i+1
    const std::size_t items = 2 * n;
    auto covered = [&](std::size_t k) { return k % 2 == 0 ? bool(exceptional_covered[k / 2]) : segments[k / 2].covered; };
    std::size_t start = items;
    for (std::size_t k = 0; k < items; ++k)
        if (!covered(k)) {
            start = k;
            break;
        }
    if (start == items) {
        arcs.emplace_back(0.0, spacing);
        return arcs;
    }
    std::size_t k = (start + 1) % items;
    for (std::size_t steps = 0; steps < items;) {
        if (!covered(k)) {
            k = (k + 1) % items;
            ++steps;
            continue;
        }
        double lo = k % 2 == 0 ? exceptional[k / 2] : segments[k / 2].lo;
        double length = 0.0;
        while (steps < items && covered(k)) {
            if (k % 2 == 1) length += segments[k / 2].hi - segments[k / 2].lo;
            k = (k + 1) % items;
            ++steps;
        }
        if (length > 0.0) arcs.emplace_back(wrap(lo, spacing), length);
    }
    std::sort(arcs.begin(), arcs.end());
    return arcs;
}

bool Coverage::covers(double offset, double tol) const {
    const double o = wrap(offset, spacing);
    for (std::size_t i = 0; i < exceptional.size(); ++i) {
        const double d = std::abs(o - exceptional[i]);
        if (std::min(d, spacing - d) <= tol) return exceptional_covered[i];
    }
    for (const Segment& seg : segments) {
        if ((seg.lo < o && o < seg.hi) || (seg.lo < o + spacing && o + spacing < seg.hi)) return seg.covered;
    }
    return false;
}

Coverage transversal_coverage(const ClosedDirection& dir, const DampingBoard& board) {
    const double s = dir.strand_spacing;
    const double tol = board.lattice.tol();
    const Vec2 nu = dir.normal();
    Coverage cov;
    cov.spacing = s;
    std::vector<double> e;
    for (const Polygon& p : board.polygons)
        for (const Vec2& v : p.vertices) {
            double o = wrap(dot(v, nu), s);
            if (s - o <= tol) o = 0.0;
            e.push_back(o);
        }
    std::sort(e.begin(), e.end());
    for (double o : e)
        if (cov.exceptional.empty() || o - cov.exceptional.back() > tol) cov.exceptional.push_back(o);
    if (cov.exceptional.size() > 1 && cov.exceptional.front() + s - cov.exceptional.back() <= tol)
        cov.exceptional.pop_back();

    if (cov.exceptional.empty()) {
        cov.segments.push_back({0.0, s, false});
        return cov;
    }
    for (double o : cov.exceptional) {
        const bool c = projection_covers(dir, board, o) || line_profile(dir, o, board).interior > tol;
        cov.exceptional_covered.push_back(c);
    }
    const std::size_t n = cov.exceptional.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = cov.exceptional[i];
        const double hi = i + 1 < n ? cov.exceptional[i + 1] : cov.exceptional[0] + s;
        cov.segments.push_back({lo, hi, projection_covers(dir, board, 0.5 * (lo + hi))});
    }
    return cov;
}

ClosedDirection direction_of(const Geodesic& geo, const TorusLattice& lattice, double max_length) {
    const double len = norm(geo.direction);
    if (!(len > 0.0)) throw InvalidArgument("geodesic direction must be nonzero");
    const Vec2 d = geo.direction * (1.0 / len);
    for (const ClosedDirection& c : closed_directions(lattice, max_length)) {
        if (std::abs(cross(c.unit, d)) <= 1e-9) return c;
    }
    throw InvalidArgument("geodesic is not closed within length " + std::to_string(max_length));
}

EdgeFollow edge_follow(const Geodesic& geo, const DampingBoard& board) {
    const ClosedDirection dir = direction_of(geo, board.lattice, geo.length * (1.0 + 1e-9) + board.lattice.tol());
    const LineProfile prof = line_profile(dir, dot(geo.base, dir.normal()), board);
    if (prof.interior > board.lattice.tol())
        throw NotBoundaryGeodesic("geodesic meets a polygon interior along length " + std::to_string(prof.interior));
    if (dot(geo.direction, dir.unit) > 0.0) return {prof.left_only, prof.right_only};
    return {prof.right_only, prof.left_only};
}

namespace {

GeomVerdict scan(const DampingBoard& board, Condition cond) {
    GeomVerdict v;
    v.condition = cond;
    if (board.polygons.empty()) {
        v.witnesses.push_back({std::nullopt, 0.0, FailureKind::no_damping});
        return v;
    }
    const double tol = board.lattice.tol();
    v.checked_directions = closed_directions(board.lattice, direction_bound(board) * (1.0 + 1e-9));
    for (const ClosedDirection& dir : v.checked_directions) {
        const Coverage cov = transversal_coverage(dir, board);
        for (const auto& seg : cov.segments) {
            if (!seg.covered)
                v.witnesses.push_back({dir, wrap(0.5 * (seg.lo + seg.hi), cov.spacing), FailureKind::misses_damping});
        }
        if (cond == Condition::wgcc) continue;
        for (std::size_t i = 0; i < cov.exceptional.size(); ++i) {
            if (cov.exceptional_covered[i]) continue;
            const double o = cov.exceptional[i];
            const LineProfile prof = line_profile(dir, o, board);
            const bool left = prof.left_only > tol, right = prof.right_only > tol;
            if (cond == Condition::geom && left && right) continue;
            FailureKind kind = FailureKind::corners_only;
            if (!prof.touches) kind = FailureKind::misses_damping;
            else if (left && !right) kind = FailureKind::one_sided_left;
            else if (right && !left) kind = FailureKind::one_sided_right;
            else if (left && right) kind = FailureKind::two_sided;
            v.witnesses.push_back({dir, o, kind});
        }
    }
    v.passes = v.witnesses.empty();
    return v;
}

}  // namespace

GeomVerdict check_geom(const DampingBoard& board) { return scan(board, Condition::geom); }
GeomVerdict check_wgcc(const DampingBoard& board) { return scan(board, Condition::wgcc); }
GeomVerdict check_sgcc(const DampingBoard& board) { return scan(board, Condition::sgcc); }

double min_feature(const DampingBoard& board) {
    double f = INFINITY;
    for (const Polygon& p : board.polygons) {
        const std::size_t n = p.vertices.size();
        for (std::size_t i = 0; i < n; ++i) f = std::min(f, norm(p.vertices[(i + 1) % n] - p.vertices[i]));
    }
    return std::isfinite(f) ? f : std::min(board.lattice.A, board.lattice.B);
}

namespace {

double sum_clipped(const DampingBoard& board, const Box& window, const auto& area_of) {
    double total = 0.0;
    for (const Polygon& poly : board.polygons) {
        const Box b = bounding_box(poly.vertices);
        for (const Vec2& t : lattice_shifts_meeting(b, window, board.lattice)) {
            const Ring q = translated(poly.vertices, t);
            total += poly.coefficient * area_of(q);
        }
    }
    return total;
}

Box box_of(std::initializer_list<Vec2> pts, double pad) {
    Box b{*pts.begin(), *pts.begin()};
    for (Vec2 p : pts) {
        b.lo.x = std::min(b.lo.x, p.x);
        b.lo.y = std::min(b.lo.y, p.y);
        b.hi.x = std::max(b.hi.x, p.x);
        b.hi.y = std::max(b.hi.y, p.y);
    }
    b.lo = b.lo - Vec2{pad, pad};
    b.hi = b.hi + Vec2{pad, pad};
    return b;
}

// Integral of a over the rectangle base + [0,T] u + [-eps, eps] nu.
double rect_integral(const DampingBoard& board, Vec2 base, Vec2 u, double T, double eps) {
    const Vec2 nu = left_normal(u);
    const Vec2 end = base + u * T;
    const Ring rect{base - nu * eps, end - nu * eps, end + nu * eps, base + nu * eps};
    const Box window = bounding_box(rect);
    return sum_clipped(board, window, [&](const Ring& q) {
        if (!bounding_box(q).intersects(window)) return 0.0;
        const Ring c = clip_convex(q, rect);
        return c.empty() ? 0.0 : signed_area(c);
    });
}

// Integral of a over the half disc of radius eps at center on the side dot(x - center, n) <= 0.
double cap_integral(const DampingBoard& board, Vec2 center, Vec2 n, double eps) {
    const Box window = box_of({center}, eps);
    return sum_clipped(board, window, [&](const Ring& q) {
        if (!bounding_box(q).intersects(window)) return 0.0;
        const Ring c = clip_halfplane(q, n, dot(n, center));
        return c.empty() ? 0.0 : disc_intersection_area(c, center, eps);
    });
}

// Average of a over the torus set of points within eps of any lift of the segment.
double quadrature_average(const DampingBoard& board, Vec2 base, Vec2 u, double T, double eps) {
    const TorusLattice& lat = board.lattice;
    const double cell = eps / 8.0;
    const int nx = std::clamp(static_cast<int>(std::ceil(lat.A / cell)), 64, 1024);
    const int ny = std::clamp(static_cast<int>(std::ceil(lat.B / cell)), 64, 1024);
    const double hx = lat.A / nx, hy = lat.B / ny;
    std::vector<char> mark(static_cast<std::size_t>(nx) * ny, 0);
    const Vec2 end = base + u * T;
    const Box seg = box_of({base, end}, eps);
    const Box domain{{0.0, 0.0}, {lat.A, lat.B}};
    for (const Vec2& t : lattice_shifts_meeting(seg, domain, lat)) {
        const Vec2 a = base + t, b = end + t;
        const int i0 = std::max(0, static_cast<int>(std::floor((seg.lo.x + t.x) / hx)));
        const int i1 = std::min(nx - 1, static_cast<int>(std::ceil((seg.hi.x + t.x) / hx)));
        const int j0 = std::max(0, static_cast<int>(std::floor((seg.lo.y + t.y) / hy)));
        const int j1 = std::min(ny - 1, static_cast<int>(std::ceil((seg.hi.y + t.y) / hy)));
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) {
                const Vec2 x{(i + 0.5) * hx, (j + 0.5) * hy};
                if (segment_distance(x, a, b) < eps) mark[static_cast<std::size_t>(j) * nx + i] = 1;
            }
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!mark[static_cast<std::size_t>(j) * nx + i]) continue;
            ++count;
            sum += damping_at(board, {(i + 0.5) * hx, (j + 0.5) * hy});
        }
    return count ? sum / static_cast<double>(count) : 0.0;
}

double band_average(const DampingBoard& board, const ClosedDirection& dir, double offset, double eps) {
    if (board.polygons.empty()) return 0.0;
    const Vec2 base = dir.normal() * offset;
    if (eps >= 0.5 * dir.strand_spacing) return quadrature_average(board, base, dir.unit, dir.loop_length, eps);
    return rect_integral(board, base, dir.unit, dir.loop_length, eps) / (2.0 * eps * dir.loop_length);
}

}  // namespace

double tube_average(const DampingBoard& board, const Geodesic& geo, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("tube_average: eps must be positive");
    if (!(geo.length > 0.0)) throw InvalidArgument("tube_average: geodesic length must be positive");
    if (board.polygons.empty()) return 0.0;
    const Vec2 u = geo.direction * (1.0 / norm(geo.direction));
    const double T = geo.length;
    const TorusLattice& lat = board.lattice;

    // a segment at least one loop long sweeps the whole band around its closed geodesic
    for (const ClosedDirection& c : closed_directions(lat, T * (1.0 + 1e-9))) {
        if (std::abs(cross(c.unit, u)) <= 1e-12) return band_average(board, c, dot(geo.base, c.normal()), eps);
    }

    const Vec2 end = geo.base + u * T;
    const Box seg = box_of({geo.base, end}, 0.0);
    for (const Vec2& t : lattice_shifts_meeting(seg, seg, lat, 2.0 * eps)) {
        if (t.x == 0.0 && t.y == 0.0) continue;
        const double d = std::min({segment_distance(geo.base + t, geo.base, end), segment_distance(end + t, geo.base, end),
                                   segment_distance(geo.base, geo.base + t, end + t), segment_distance(end, geo.base + t, end + t)});
        if (d < 2.0 * eps || segments_cross_properly(geo.base, end, geo.base + t, end + t, 0.0))
            return quadrature_average(board, geo.base, u, T, eps);
    }

    const double integral = rect_integral(board, geo.base, u, T, eps) + cap_integral(board, geo.base, u, eps) +
                            cap_integral(board, end, -u, eps);
    const double volume = 2.0 * eps * T + std::numbers::pi * eps * eps;
    return integral / volume;
}

GgccReport check_ggcc(const DampingBoard& board, const std::vector<double>& eps_sequence, int offsets_per_direction) {
    for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
        if (!(eps_sequence[i] > 0.0)) throw InvalidArgument("check_ggcc: eps values must be positive");
        if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
            throw InvalidArgument("check_ggcc: eps sequence must be decreasing");
    }
    GgccReport rep;
    rep.analytic = check_geom(board);
    rep.analytic.condition = Condition::ggcc;
    std::vector<ClosedDirection> dirs = rep.analytic.checked_directions;
    if (dirs.empty()) dirs = closed_directions(board.lattice, std::max(board.lattice.A, board.lattice.B));

    for (const ClosedDirection& dir : dirs) {
        std::vector<double> offsets;
        for (int k = 0; k < offsets_per_direction; ++k) offsets.push_back(dir.strand_spacing * k / offsets_per_direction);
        if (!board.polygons.empty()) {
            const Coverage cov = transversal_coverage(dir, board);
            offsets.insert(offsets.end(), cov.exceptional.begin(), cov.exceptional.end());
        }
        for (double eps : eps_sequence)
            for (double o : offsets) rep.numeric.push_back({dir, o, eps, band_average(board, dir, o, eps), false});
    }
    for (const Witness& w : rep.analytic.witnesses) {
        if (!w.direction) continue;
        for (double eps : eps_sequence) {
            double o = w.offset;
            if (w.kind == FailureKind::one_sided_left) o -= 2.0 * eps;
            if (w.kind == FailureKind::one_sided_right) o += 2.0 * eps;
            rep.numeric.push_back({*w.direction, o, eps, band_average(board, *w.direction, o, eps), true});
        }
    }
    return rep;
}

}  // namespace torusdamp
