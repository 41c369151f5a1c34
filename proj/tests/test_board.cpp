#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "torusdamp/board.hpp"
#include "torusdamp/errors.hpp"

using namespace torusdamp;

namespace {

const char* kBoardNames[] = {"fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f", "fig4", "empty"};

std::string board_path(const std::string& name) { return std::string(TORUSDAMP_BOARDS) + "/" + name + ".board"; }

std::string parse_error(const std::string& text) {
    try {
        parse_board(text);
    } catch (const InvalidBoard& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Board, ReducePointExamples) {
    const TorusLattice sq{2, 2};
    Vec2 p = reduce_point({0, 0}, sq);
    EXPECT_EQ(p.x, 0.0);
    EXPECT_EQ(p.y, 0.0);
    p = reduce_point({2.5, -0.5}, sq);
    EXPECT_DOUBLE_EQ(p.x, 0.5);
    EXPECT_DOUBLE_EQ(p.y, 1.5);
    p = reduce_point({-4, 6}, TorusLattice{2, 3});
    EXPECT_EQ(p.x, 0.0);
    EXPECT_EQ(p.y, 0.0);
}

TEST(Board, ReducePointPeriodicAndIdempotent) {
    const TorusLattice lat{2.0, 3.0};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    std::uniform_int_distribution<int> k(-20, 20);
    for (int i = 0; i < 2000; ++i) {
        const Vec2 p{u(rng), u(rng)};
        const Vec2 r = reduce_point(p, lat);
        ASSERT_GE(r.x, 0.0);
        ASSERT_LT(r.x, lat.A);
        ASSERT_GE(r.y, 0.0);
        ASSERT_LT(r.y, lat.B);
        const Vec2 rr = reduce_point(r, lat);
        ASSERT_EQ(rr.x, r.x);
        ASSERT_EQ(rr.y, r.y);
        const Vec2 shifted = reduce_point(p + lat.vector(k(rng), k(rng)), lat);
        ASSERT_NEAR(shifted.x, r.x, 1e-12);
        ASSERT_NEAR(shifted.y, r.y, 1e-12);
    }
}

TEST(Board, PointLocate) {
    Polygon sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 1.0};
    EXPECT_EQ(point_locate({0.5, 0.5}, sq, 1e-9), Location::interior);
    EXPECT_EQ(point_locate({1, 1}, sq, 1e-9), Location::boundary);
    EXPECT_EQ(point_locate({10.5, 0.5}, sq, 1e-9), Location::exterior);
    Polygon degenerate{{{0, 0}, {1, 0}}, 1.0};
    EXPECT_THROW(point_locate({0.5, 0.5}, degenerate, 1e-9), InvalidArgument);
}

TEST(Board, BundledBoardsLoadAndValidate) {
    for (const char* name : kBoardNames) {
        SCOPED_TRACE(name);
        const DampingBoard b = load_board(board_path(name));
        EXPECT_EQ(b.name, name);
        EXPECT_NO_THROW(validate_board(b));
        EXPECT_GT(b.lattice.A, 0.0);
        EXPECT_GT(b.lattice.B, 0.0);
        for (const Polygon& p : b.polygons) EXPECT_GT(signed_area(p.vertices), 0.0);
    }
    EXPECT_TRUE(load_board(board_path("fig1f")).approximate);
    EXPECT_TRUE(load_board(board_path("empty")).polygons.empty());
}

TEST(Board, ParseErrorsNameTheField) {
    EXPECT_NE(parse_error("{").find("JSON"), std::string::npos);
    EXPECT_NE(parse_error(R"({"schema_version": 2, "lattice": {"A": 1, "B": 1}, "polygons": []})").find("schema_version"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"schema_version": 1, "lattice": {"A": -1, "B": 1}, "polygons": []})").find("lattice"),
              std::string::npos);
    const std::string bad_vertex = R"({"schema_version": 1, "lattice": {"A": 2, "B": 2},
        "polygons": [{"vertices": [[0,0],[1,0],[1]], "coefficient": 1}]})";
    EXPECT_NE(parse_error(bad_vertex).find("polygons[0].vertices[2]"), std::string::npos);
    const std::string bad_coef = R"({"schema_version": 1, "lattice": {"A": 2, "B": 2},
        "polygons": [{"vertices": [[0,0],[1,0],[1,1]], "coefficient": -1}]})";
    EXPECT_NE(parse_error(bad_coef).find("polygons[0].coefficient"), std::string::npos);
    const std::string bad_mass = R"({"schema_version": 1, "lattice": {"A": 2, "B": 2}, "mass": -1, "polygons": []})";
    EXPECT_NE(parse_error(bad_mass).find("mass"), std::string::npos);
}

TEST(Board, ClockwiseInputIsReoriented) {
    const DampingBoard b = parse_board(R"({"schema_version": 1, "lattice": {"A": 2, "B": 2},
        "polygons": [{"vertices": [[0,0],[0,1],[1,1],[1,0]], "coefficient": 1}]})");
    EXPECT_DOUBLE_EQ(signed_area(b.polygons[0].vertices), 1.0);
}

TEST(Board, RejectsOverlapsIncludingTranslates) {
    // the second square overlaps the first one's lattice translate
    const std::string text = R"({"schema_version": 1, "lattice": {"A": 2, "B": 2},
        "polygons": [{"vertices": [[0,0],[1,0],[1,1],[0,1]], "coefficient": 1},
                     {"vertices": [[2.5,0.5],[3.5,0.5],[3.5,1.5],[2.5,1.5]], "coefficient": 1}]})";
    EXPECT_THROW(parse_board(text), InvalidBoard);
    // a polygon wider than the torus overlaps itself
    const std::string wide = R"({"schema_version": 1, "lattice": {"A": 2, "B": 2},
        "polygons": [{"vertices": [[0,0],[3,0],[3,1],[0,1]], "coefficient": 1}]})";
    EXPECT_THROW(parse_board(wide), InvalidBoard);
    const std::string bowtie = R"({"schema_version": 1, "lattice": {"A": 2, "B": 2},
        "polygons": [{"vertices": [[0,0],[1,1],[1,0],[0,1]], "coefficient": 1}]})";
    EXPECT_THROW(parse_board(bowtie), InvalidBoard);
}

TEST(Board, DampingAtIsPeriodic) {
    const DampingBoard b = load_board(board_path("fig1c"));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const Vec2 p{u(rng), u(rng)};
        ASSERT_EQ(damping_at(b, p), damping_at(b, p + b.lattice.vector(1, -2)));
    }
    EXPECT_EQ(damping_at(b, {-0.75, 0.3}), 1.0);
    EXPECT_EQ(damping_at(b, {-0.25, 0.9}), 0.0);
}

TEST(Board, JsonRoundTrip) {
    for (const char* name : kBoardNames) {
        SCOPED_TRACE(name);
        const DampingBoard b = load_board(board_path(name));
        const DampingBoard c = parse_board(board_to_json(b));
        ASSERT_EQ(c.polygons.size(), b.polygons.size());
        EXPECT_EQ(c.name, b.name);
        EXPECT_EQ(c.approximate, b.approximate);
        for (std::size_t i = 0; i < b.polygons.size(); ++i) {
            ASSERT_EQ(c.polygons[i].vertices.size(), b.polygons[i].vertices.size());
            for (std::size_t k = 0; k < b.polygons[i].vertices.size(); ++k)
                EXPECT_EQ(c.polygons[i].vertices[k], b.polygons[i].vertices[k]);
        }
    }
}
