#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "torusdamp/planar.hpp"

using namespace torusdamp;

namespace {

Ring square(double x0, double y0, double side) {
    return {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
}

double clipped_area(const Ring& r) { return r.size() < 3 ? 0.0 : std::abs(signed_area(r)); }

}  // namespace

TEST(Planar, SignedAreaOrientation) {
    Ring s = square(0, 0, 2);
    EXPECT_DOUBLE_EQ(signed_area(s), 4.0);
    std::reverse(s.begin(), s.end());
    EXPECT_DOUBLE_EQ(signed_area(s), -4.0);
}

TEST(Planar, LocateSquare) {
    const Ring s = square(0, 0, 1);
    EXPECT_EQ(locate({0.5, 0.5}, s, 1e-9), Location::interior);
    EXPECT_EQ(locate({1.0, 1.0}, s, 1e-9), Location::boundary);
    EXPECT_EQ(locate({0.5, 0.0}, s, 1e-9), Location::boundary);
    EXPECT_EQ(locate({10.5, 0.5}, s, 1e-9), Location::exterior);
}

TEST(Planar, LocateNonConvex) {
    const Ring l = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    EXPECT_EQ(locate({0.5, 1.5}, l, 1e-9), Location::interior);
    EXPECT_EQ(locate({1.5, 1.5}, l, 1e-9), Location::exterior);
    EXPECT_EQ(locate({1.5, 1.0}, l, 1e-9), Location::boundary);
}

TEST(Planar, SegmentPredicates) {
    EXPECT_TRUE(segments_cross_properly({0, 0}, {1, 1}, {0, 1}, {1, 0}, 1e-12));
    EXPECT_FALSE(segments_cross_properly({0, 0}, {1, 0}, {1, 0}, {2, 1}, 1e-12));
    const auto p = segment_intersection({0, 0}, {2, 2}, {0, 2}, {2, 0}, 1e-12);
    ASSERT_TRUE(p.has_value());
    EXPECT_NEAR(p->x, 1.0, 1e-12);
    EXPECT_NEAR(p->y, 1.0, 1e-12);
    EXPECT_FALSE(segment_intersection({0, 0}, {1, 0}, {0, 1}, {1, 1}, 1e-12).has_value());
    EXPECT_DOUBLE_EQ(segment_distance({0.5, 2.0}, {0, 0}, {1, 0}), 2.0);
    EXPECT_DOUBLE_EQ(segment_distance({3.0, 4.0}, {0, 0}, {0, 0}), 5.0);
}

TEST(Planar, Simplicity) {
    EXPECT_TRUE(is_simple(square(0, 0, 1), 1e-9));
    const Ring bowtie = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
    EXPECT_FALSE(is_simple(bowtie, 1e-9));
    const Ring repeated = {{0, 0}, {1, 0}, {1, 0}, {0, 1}};
    EXPECT_FALSE(is_simple(repeated, 1e-9));
}

TEST(Planar, InteriorOverlap) {
    EXPECT_TRUE(interiors_overlap(square(0, 0, 1), square(0.5, 0.5, 1), 1e-9));
    // shared edge only
    EXPECT_FALSE(interiors_overlap(square(0, 0, 1), square(1, 0, 1), 1e-9));
    // shared corner only
    EXPECT_FALSE(interiors_overlap(square(0, 0, 1), square(1, 1, 1), 1e-9));
    // nested
    EXPECT_TRUE(interiors_overlap(square(0, 0, 4), square(1, 1, 1), 1e-9));
}

TEST(Planar, ClipHalfplaneAndConvex) {
    const Ring s = square(0, 0, 2);
    EXPECT_NEAR(clipped_area(clip_halfplane(s, {1, 0}, 0.5)), 1.0, 1e-12);
    EXPECT_NEAR(clipped_area(clip_convex(s, square(1, 1, 2))), 1.0, 1e-12);
    const Ring l = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
    EXPECT_NEAR(clipped_area(clip_convex(l, square(0.5, 0.5, 1))), 0.75, 1e-12);
    EXPECT_NEAR(clipped_area(clip_convex(s, square(5, 5, 1))), 0.0, 1e-12);
}

TEST(Planar, DiscIntersectionArea) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(disc_intersection_area(square(-2, -2, 4), {0, 0}, 1.0), pi, 1e-12);
    EXPECT_NEAR(disc_intersection_area(square(-0.1, -0.1, 0.2), {0, 0}, 1.0), 0.04, 1e-12);
    // half plane through the center
    EXPECT_NEAR(disc_intersection_area(square(0, -2, 4), {0, 0}, 1.0), pi / 2, 1e-12);
    // quarter
    EXPECT_NEAR(disc_intersection_area(square(0, 0, 4), {0, 0}, 1.0), pi / 4, 1e-12);
    // circular segment cut by x >= 0.5
    const double d = 0.5;
    const double seg = std::acos(d) - d * std::sqrt(1 - d * d);
    EXPECT_NEAR(disc_intersection_area(square(0.5, -2, 4), {0, 0}, 1.0), seg, 1e-12);
}

TEST(Planar, DiscAreaMatchesMonteCarlo) {
    const Ring tri = {{-0.7, -0.3}, {0.9, -0.5}, {0.1, 0.8}};
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 400000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const Vec2 p{u(rng), u(rng)};
        if (p.x * p.x + p.y * p.y < 0.6 * 0.6 && locate(p, tri, 0.0) == Location::interior) ++hits;
    }
    const double mc = 4.0 * hits / n;
    const double se = 4.0 * std::sqrt(mc / 4.0 * (1 - mc / 4.0) / n);
    EXPECT_NEAR(disc_intersection_area(tri, {0, 0}, 0.6), mc, 4 * se);
}

TEST(Planar, PoleOfInaccessibility) {
    const auto [r, c] = pole_of_inaccessibility(square(0, 0, 1), 1e-6);
    EXPECT_NEAR(r, 0.5, 1e-5);
    EXPECT_NEAR(c.x, 0.5, 1e-3);
    EXPECT_NEAR(c.y, 0.5, 1e-3);
    const Ring tri = {{0, 0}, {3, 0}, {0, 4}};  // inradius (3 + 4 - 5) / 2
    EXPECT_NEAR(pole_of_inaccessibility(tri, 1e-6).first, 1.0, 1e-5);
}
