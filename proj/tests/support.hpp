#pragma once

#include <cmath>
#include <random>
#include <string>

#include "torusdamp/board.hpp"
#include "torusdamp/errors.hpp"
#include "torusdamp/torus_geometry.hpp"

namespace torusdamp::testing {

inline const char* const kReferenceBoards[] = {"fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f"};

inline std::string board_path(const std::string& name) {
    return std::string(TORUSDAMP_BOARDS) + "/" + name + ".board";
}

inline Polygon rect(double x0, double y0, double x1, double y1, double coef = 1.0) {
    return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, coef};
}

// Random cells of the 1/4 grid on a 2 x 2 torus, each row's runs merged into rectangles.
// The fill probability varies per board so that both passing and failing boards occur.
inline DampingBoard random_rect_board(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double fill = 0.3 + 0.6 * unit(rng);
    constexpr int kCells = 8;
    constexpr double kSide = 0.25;
    DampingBoard b;
    b.lattice = {2.0, 2.0};
    b.name = "random-" + std::to_string(seed);
    for (int row = 0; row < kCells; ++row) {
        int start = -1;
        for (int col = 0; col <= kCells; ++col) {
            const bool on = col < kCells && unit(rng) < fill;
            if (on && start < 0) start = col;
            if (!on && start >= 0) {
                b.polygons.push_back(rect(start * kSide, row * kSide, col * kSide, (row + 1) * kSide));
                start = -1;
            }
        }
    }
    if (b.polygons.empty()) b.polygons.push_back(rect(0, 0, kSide, kSide));
    validate_board(b);
    return b;
}

// Brute-force coverage oracle: march one loop of the closed geodesic and look for an interior point.
inline bool ray_march_hits(const DampingBoard& board, const ClosedDirection& dir, double offset, int samples) {
    const Geodesic g = geodesic_at(dir, offset);
    for (int k = 0; k < samples; ++k) {
        const Vec2 p = g.base + g.direction * (g.length * (k + 0.5) / samples);
        if (damping_at(board, p) > 0.0) return true;
    }
    return false;
}

// Circle distance from offset to the nearest exceptional offset.
inline double distance_to_exceptional(const Coverage& cov, double offset) {
    double best = INFINITY;
    for (double e : cov.exceptional) {
        double d = std::fmod(std::abs(offset - e), cov.spacing);
        best = std::min({best, d, cov.spacing - d});
    }
    return best;
}

}  // namespace torusdamp::testing
