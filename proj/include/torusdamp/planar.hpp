#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace torusdamp {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 left_normal(Vec2 u) { return {-u.y, u.x}; }

struct Box {
    Vec2 lo;
    Vec2 hi;
    bool intersects(const Box& o, double pad = 0.0) const {
        return lo.x <= o.hi.x + pad && o.lo.x <= hi.x + pad && lo.y <= o.hi.y + pad &&
               o.lo.y <= hi.y + pad;
    }
    bool contains(Vec2 p, double pad = 0.0) const {
        return p.x >= lo.x - pad && p.x <= hi.x + pad && p.y >= lo.y - pad && p.y <= hi.y + pad;
    }
};

enum class Location { interior, boundary, exterior };

using Ring = std::vector<Vec2>;

double signed_area(const Ring& ring);
Box bounding_box(const Ring& ring);
Ring translated(const Ring& ring, Vec2 shift);

// Distance from p to the closed segment [a, b].
double segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Winding test with a boundary band of half-width tol.
Location locate(Vec2 p, const Ring& ring, double tol);

// True when the open segments (a,b) and (c,d) cross at a single point interior to both.
bool segments_cross_properly(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol);

// Intersection point of closed segments; nullopt when disjoint or collinear-overlapping.
std::optional<Vec2> segment_intersection(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol);

// Simple and non-degenerate (no repeated vertices, no zero-length or backtracking edges).
bool is_simple(const Ring& ring, double tol);

// True when the interiors of two simple rings overlap in a set of positive area.
bool interiors_overlap(const Ring& p, const Ring& q, double tol);

// Sutherland-Hodgman clip against the half-plane dot(n, x) <= c.
Ring clip_halfplane(const Ring& subject, Vec2 n, double c);

// Clip against a convex counter-clockwise ring.
Ring clip_convex(const Ring& subject, const Ring& convex);

// Area of the intersection of a ring with the disc of given center and radius.
double disc_intersection_area(const Ring& ring, Vec2 center, double radius);

// Largest inscribed disc radius (lower bound accurate to `precision`) and its center.
std::pair<double, Vec2> pole_of_inaccessibility(const Ring& ring, double precision);

}  // namespace torusdamp
