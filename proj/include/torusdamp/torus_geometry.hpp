#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusdamp/board.hpp"

namespace torusdamp {

struct ClosedDirection {
    int n = 1;
    int m = 0;
    Vec2 unit;
    double loop_length = 0.0;
    double strand_spacing = 0.0;

    Vec2 normal() const { return left_normal(unit); }
    // Lattice vector whose projection on normal() is one strand spacing.
    Vec2 strand_shift(const TorusLattice& lattice) const;
};

ClosedDirection make_direction(int n, int m, const TorusLattice& lattice);

struct Geodesic {
    Vec2 base;
    Vec2 direction;
    double length = 1.0;
};

// The closed geodesic of `dir` at transverse offset `offset` (offset = p . normal()).
Geodesic geodesic_at(const ClosedDirection& dir, double offset);

// two_sided only occurs in SGCC verdicts: the line follows edges on both sides but meets no interior.
enum class FailureKind { no_damping, misses_damping, corners_only, one_sided_left, one_sided_right, two_sided };
enum class Condition { geom, wgcc, sgcc, ggcc };

std::string to_string(FailureKind kind);
std::string to_string(Condition cond);

struct Witness {
    std::optional<ClosedDirection> direction;
    double offset = 0.0;
    FailureKind kind = FailureKind::no_damping;
};

struct GeomVerdict {
    Condition condition = Condition::geom;
    bool passes = false;
    std::vector<Witness> witnesses;
    std::vector<ClosedDirection> checked_directions;
};

// Offsets live on the circle [0, spacing). `segments` partition the circle minus the
// exceptional offsets into open arcs (lo, hi); the last arc may run past `spacing`.
struct Coverage {
    double spacing = 0.0;
    std::vector<double> exceptional;
    std::vector<bool> exceptional_covered;
    struct Segment {
        double lo;
        double hi;
        bool covered;
    };
    std::vector<Segment> segments;

    // Maximal covered arcs as (start, length); length == spacing means the whole circle.
    std::vector<std::pair<double, double>> covered_arcs() const;
    bool covers(double offset, double tol) const;
};

// Measures along one loop of a closed geodesic: length inside the interior of the damped
// set, and length where damping lies on one side only.
struct LineProfile {
    double interior = 0.0;
    double left_only = 0.0;
    double right_only = 0.0;
    bool touches = false;
};

struct EdgeFollow {
    double left_follow = 0.0;
    double right_follow = 0.0;
};

std::vector<ClosedDirection> closed_directions(const TorusLattice& lattice, double bound);
double direction_bound(const DampingBoard& board);

// True when offset o lies in the open projection of some polygon interior.
bool projection_covers(const ClosedDirection& dir, const DampingBoard& board, double offset);
Coverage transversal_coverage(const ClosedDirection& dir, const DampingBoard& board);
LineProfile line_profile(const ClosedDirection& dir, double offset, const DampingBoard& board);

// Closed direction matching a geodesic's direction; throws InvalidArgument if none within max_length.
ClosedDirection direction_of(const Geodesic& geo, const TorusLattice& lattice, double max_length);
EdgeFollow edge_follow(const Geodesic& geo, const DampingBoard& board);

GeomVerdict check_geom(const DampingBoard& board);
GeomVerdict check_wgcc(const DampingBoard& board);
GeomVerdict check_sgcc(const DampingBoard& board);

double tube_average(const DampingBoard& board, const Geodesic& geo, double eps);

struct TubeSample {
    ClosedDirection direction;
    double offset = 0.0;
    double eps = 0.0;
    double average = 0.0;
    bool witness = false;
};

struct GgccReport {
    GeomVerdict analytic;
    std::vector<TubeSample> numeric;
};

// Smallest polygon edge length; the natural length scale for tube widths.
double min_feature(const DampingBoard& board);

GgccReport check_ggcc(const DampingBoard& board, const std::vector<double>& eps_sequence, int offsets_per_direction = 16);

}  // namespace torusdamp
