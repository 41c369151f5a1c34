#pragma once

#include <string>
#include <vector>

#include "torusdamp/planar.hpp"

namespace torusdamp {

struct TorusLattice {
    double A = 1.0;
    double B = 1.0;

    double tol() const { return 1e-9 * std::max(A, B); }
    double area() const { return A * B; }
    Vec2 vector(long k, long l) const { return {static_cast<double>(k) * A, static_cast<double>(l) * B}; }
};

struct Polygon {
    Ring vertices;
    double coefficient = 1.0;
};

struct DampingBoard {
    TorusLattice lattice;
    std::vector<Polygon> polygons;
    double mass = 0.0;
    std::string name;
    bool approximate = false;

    double max_coefficient() const;
};

// Representative of p in the half-open fundamental domain [0,A) x [0,B).
Vec2 reduce_point(Vec2 p, const TorusLattice& lattice);

// Lattice vectors t such that box + t meets window (closed boxes, padded by pad).
std::vector<Vec2> lattice_shifts_meeting(const Box& box, const Box& window, const TorusLattice& lattice,
                                         double pad = 0.0);

Location point_locate(Vec2 p, const Polygon& poly, double tol);

// Throws InvalidBoard with a description of the first violated rule.
void validate_lattice(const TorusLattice& lattice);
void validate_polygon(const Polygon& poly, const TorusLattice& lattice, const std::string& label);
void validate_board(const DampingBoard& board);

// Damping coefficient at a point, summed over all lifts (interior points only).
double damping_at(const DampingBoard& board, Vec2 p);

DampingBoard parse_board(const std::string& text, const std::string& source = "<board>");
DampingBoard load_board(const std::string& path);
std::string board_to_json(const DampingBoard& board);

}  // namespace torusdamp
