#include "torusdamp/planar.hpp"

#include <algorithm>
#include <numbers>
#include <queue>

namespace torusdamp {

double signed_area(const Ring& ring) {
    double s = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(ring[i], ring[(i + 1) % n]);
    return 0.5 * s;
}

Box bounding_box(const Ring& ring) {
    Box b{ring.front(), ring.front()};
    for (const Vec2& p : ring) {
        b.lo.x = std::min(b.lo.x, p.x);
        b.lo.y = std::min(b.lo.y, p.y);
        b.hi.x = std::max(b.hi.x, p.x);
        b.hi.y = std::max(b.hi.y, p.y);
    }
    return b;
}

Ring translated(const Ring& ring, Vec2 shift) {
    Ring out;
    out.reserve(ring.size());
    for (const Vec2& p : ring) out.push_back(p + shift);
    return out;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 e = b - a;
    const double ee = dot(e, e);
    double t = ee > 0.0 ? dot(p - a, e) / ee : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + e * t));
}

namespace {

bool inside_crossing(Vec2 p, const Ring& ring) {
    bool in = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = ring[i];
        const Vec2& b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xs = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xs) in = !in;
        }
    }
    return in;
}

double boundary_distance(Vec2 p, const Ring& ring) {
    double d = INFINITY;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) d = std::min(d, segment_distance(p, ring[i], ring[(i + 1) % n]));
    return d;
}

double segment_segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
    if (segments_cross_properly(a, b, c, d, tol)) return 0.0;
    return std::min({segment_distance(a, c, d), segment_distance(b, c, d), segment_distance(c, a, b),
                     segment_distance(d, a, b)});
}

}  // namespace

Location locate(Vec2 p, const Ring& ring, double tol) {
    if (boundary_distance(p, ring) <= tol) return Location::boundary;
    return inside_crossing(p, ring) ? Location::interior : Location::exterior;
}

bool segments_cross_properly(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
    const Vec2 e = b - a;
    const Vec2 f = d - c;
    const double le = norm(e), lf = norm(f);
    if (le == 0.0 || lf == 0.0) return false;
    // signed distances of c, d from line ab and of a, b from line cd
    const double dc = cross(e, c - a) / le;
    const double dd = cross(e, d - a) / le;
    const double da = cross(f, a - c) / lf;
    const double db = cross(f, b - c) / lf;
    return ((dc > tol && dd < -tol) || (dc < -tol && dd > tol)) &&
           ((da > tol && db < -tol) || (da < -tol && db > tol));
}

std::optional<Vec2> segment_intersection(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
    const Vec2 e = b - a;
    const Vec2 f = d - c;
    const double den = cross(e, f);
    const double le = norm(e), lf = norm(f);
    if (le == 0.0 || lf == 0.0) return std::nullopt;
    if (std::abs(den) <= 1e-14 * le * lf) return std::nullopt;
    const double t = cross(c - a, f) / den;
    const double s = cross(c - a, e) / den;
    const double ta = tol / le, tc = tol / lf;
    if (t < -ta || t > 1 + ta || s < -tc || s > 1 + tc) return std::nullopt;
    return a + e * std::clamp(t, 0.0, 1.0);
}

bool is_simple(const Ring& ring, double tol) {
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = ring[i], b = ring[(i + 1) % n], c = ring[(i + 2) % n];
        if (norm(b - a) <= tol) return false;
        const Vec2 e1 = b - a, e2 = c - b;
        // backtracking along the same line
        if (std::abs(cross(e1, e2)) <= tol * norm(e1) && dot(e1, e2) < 0.0) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segment_segment_distance(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n], tol) <= tol)
                return false;
        }
    }
    return std::abs(signed_area(ring)) > tol * tol;
}

bool interiors_overlap(const Ring& p, const Ring& q, double tol) {
    const Box bp = bounding_box(p), bq = bounding_box(q);
    if (!bp.intersects(bq, -tol)) return false;

    std::vector<Vec2> candidates(p.begin(), p.end());
    candidates.insert(candidates.end(), q.begin(), q.end());
    const std::size_t np = p.size(), nq = q.size();
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < nq; ++j)
            if (auto x = segment_intersection(p[i], p[(i + 1) % np], q[j], q[(j + 1) % nq], tol))
                candidates.push_back(*x);

    const double scale = std::max({bp.hi.x - bp.lo.x, bp.hi.y - bp.lo.y, bq.hi.x - bq.lo.x, bq.hi.y - bq.lo.y});
    const double r = std::max(1e3 * tol, 1e-7 * scale);

    std::vector<double> angles;
    auto collect = [&](const Ring& ring, Vec2 c) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = ring[i], b = ring[(i + 1) % n];
            if (segment_distance(c, a, b) > tol) continue;
            const bool at_a = norm(c - a) <= tol, at_b = norm(c - b) <= tol;
            if (!at_b) angles.push_back(std::atan2(b.y - a.y, b.x - a.x));
            if (!at_a) angles.push_back(std::atan2(a.y - b.y, a.x - b.x));
        }
    };
    for (const Vec2& c : candidates) {
        angles.clear();
        collect(p, c);
        collect(q, c);
        if (angles.empty()) continue;
        std::sort(angles.begin(), angles.end());
        const std::size_t m = angles.size();
        for (std::size_t k = 0; k < m; ++k) {
            double lo = angles[k];
            double hi = k + 1 < m ? angles[k + 1] : angles[0] + 2 * std::numbers::pi;
            if (hi - lo <= 1e-12) continue;
            const double mid = 0.5 * (lo + hi);
            const Vec2 probe = c + Vec2{std::cos(mid), std::sin(mid)} * r;
            if (locate(probe, p, 0.1 * tol) == Location::interior &&
                locate(probe, q, 0.1 * tol) == Location::interior)
                return true;
        }
    }
    return false;
}

Ring clip_halfplane(const Ring& subject, Vec2 n, double c) {
    Ring out;
    const std::size_t m = subject.size();
    if (m == 0) return out;
    out.reserve(m + 4);
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 s = subject[i];
        const Vec2 e = subject[(i + 1) % m];
        const double ds = dot(n, s) - c;
        const double de = dot(n, e) - c;
        if (ds <= 0.0) out.push_back(s);
        if ((ds < 0.0 && de > 0.0) || (ds > 0.0 && de < 0.0)) {
            const double t = ds / (ds - de);
            out.push_back(s + (e - s) * t);
        }
    }
    if (out.size() < 3) out.clear();
    return out;
}

Ring clip_convex(const Ring& subject, const Ring& convex) {
    Ring out = subject;
    const std::size_t m = convex.size();
    for (std::size_t i = 0; i < m && !out.empty(); ++i) {
        const Vec2 a = convex[i];
        const Vec2 e = convex[(i + 1) % m] - a;
        const Vec2 n{e.y, -e.x};
        out = clip_halfplane(out, n, dot(n, a));
    }
    return out;
}

namespace {

// Signed area of disc(0, r) intersected with triangle (0, a, b).
double triangle_disc_area(Vec2 a, Vec2 b, double r) {
    const Vec2 d = b - a;
    const double qa = dot(d, d);
    if (qa == 0.0) return 0.0;
    const double qb = 2.0 * dot(a, d);
    const double qc = dot(a, a) - r * r;
    double ts[4] = {0.0, 0.0, 0.0, 1.0};
    int nt = 1;
    const double disc = qb * qb - 4 * qa * qc;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double t1 = (-qb - sq) / (2 * qa);
        const double t2 = (-qb + sq) / (2 * qa);
        if (t1 > 0.0 && t1 < 1.0) ts[nt++] = t1;
        if (t2 > 0.0 && t2 < 1.0) ts[nt++] = t2;
    }
    ts[nt++] = 1.0;
    double area = 0.0;
    for (int k = 0; k + 1 < nt; ++k) {
        const Vec2 p = a + d * ts[k];
        const Vec2 q = a + d * ts[k + 1];
        const Vec2 mid = (p + q) * 0.5;
        if (dot(mid, mid) <= r * r) {
            area += 0.5 * cross(p, q);
        } else {
            area += 0.5 * r * r * std::atan2(cross(p, q), dot(p, q));
        }
    }
    return area;
}

}  // namespace

double disc_intersection_area(const Ring& ring, Vec2 center, double radius) {
    double s = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) s += triangle_disc_area(ring[i] - center, ring[(i + 1) % n] - center, radius);
    return s;
}

std::pair<double, Vec2> pole_of_inaccessibility(const Ring& ring, double precision) {
    auto sdist = [&](Vec2 p) {
        const double d = boundary_distance(p, ring);
        return inside_crossing(p, ring) ? d : -d;
    };
    struct Cell {
        Vec2 c;
        double half;
        double d;
        double potential;
    };
    auto make = [&](Vec2 c, double half) {
        const double d = sdist(c);
        return Cell{c, half, d, d + half * std::numbers::sqrt2};
    };
    auto cmp = [](const Cell& a, const Cell& b) { return a.potential < b.potential; };
    std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

    const Box b = bounding_box(ring);
    const double w = b.hi.x - b.lo.x, h = b.hi.y - b.lo.y;
    const double size = std::min(w, h);
    const double half = 0.5 * size;
    for (double x = b.lo.x; x < b.hi.x; x += size)
        for (double y = b.lo.y; y < b.hi.y; y += size) queue.push(make({x + half, y + half}, half));

    // area centroid is a good first guess
    Vec2 centroid{0, 0};
    double a6 = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cross(ring[i], ring[(i + 1) % n]);
        centroid = centroid + (ring[i] + ring[(i + 1) % n]) * f;
        a6 += 3 * f;
    }
    Cell best = make(a6 != 0.0 ? centroid * (1.0 / a6) : ring[0], 0.0);
    const Cell boxc = make({b.lo.x + w / 2, b.lo.y + h / 2}, 0.0);
    if (boxc.d > best.d) best = boxc;

    while (!queue.empty()) {
        Cell cell = queue.top();
        queue.pop();
        if (cell.d > best.d) best = cell;
        if (cell.potential - best.d <= precision) continue;
        const double q = cell.half / 2;
        queue.push(make({cell.c.x - q, cell.c.y - q}, q));
        queue.push(make({cell.c.x + q, cell.c.y - q}, q));
        queue.push(make({cell.c.x - q, cell.c.y + q}, q));
        queue.push(make({cell.c.x + q, cell.c.y + q}, q));
    }
    return {std::max(best.d, 0.0), best.c};
}

}  // namespace torusdamp
