#include "torusdamp/board.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "torusdamp/errors.hpp"

namespace torusdamp {

using nlohmann::json;

double DampingBoard::max_coefficient() const {
    double m = 0.0;
    for (const Polygon& p : polygons) m = std::max(m, p.coefficient);
    return m;
}

Vec2 reduce_point(Vec2 p, const TorusLattice& lattice) {
    auto wrap = [](double v, double period) {
        double r = std::fmod(v, period);
        if (r < 0.0) r += period;
        if (r >= period) r = 0.0;  // -tiny + period rounds up to period
        return r;
    };
    return {wrap(p.x, lattice.A), wrap(p.y, lattice.B)};
}

std::vector<Vec2> lattice_shifts_meeting(const Box& box, const Box& window, const TorusLattice& lattice,
                                         double pad) {
    const long k0 = static_cast<long>(std::ceil((window.lo.x - box.hi.x - pad) / lattice.A));
    const long k1 = static_cast<long>(std::floor((window.hi.x - box.lo.x + pad) / lattice.A));
    const long l0 = static_cast<long>(std::ceil((window.lo.y - box.hi.y - pad) / lattice.B));
    const long l1 = static_cast<long>(std::floor((window.hi.y - box.lo.y + pad) / lattice.B));
    std::vector<Vec2> out;
    for (long k = k0; k <= k1; ++k)
        for (long l = l0; l <= l1; ++l) out.push_back(lattice.vector(k, l));
    return out;
}

Location point_locate(Vec2 p, const Polygon& poly, double tol) {
    if (poly.vertices.size() < 3 || std::abs(signed_area(poly.vertices)) <= tol * tol)
        throw InvalidArgument("point_locate: degenerate polygon");
    return locate(p, poly.vertices, tol);
}

void validate_lattice(const TorusLattice& lattice) {
    if (!(lattice.A > 0.0) || !std::isfinite(lattice.A)) throw InvalidBoard("lattice.A: must be a positive number");
    if (!(lattice.B > 0.0) || !std::isfinite(lattice.B)) throw InvalidBoard("lattice.B: must be a positive number");
}

void validate_polygon(const Polygon& poly, const TorusLattice& lattice, const std::string& label) {
    const double tol = lattice.tol();
    if (!(poly.coefficient > 0.0) || !std::isfinite(poly.coefficient))
        throw InvalidBoard(label + ".coefficient: must be a positive number");
    if (poly.vertices.size() < 3) throw InvalidBoard(label + ".vertices: need at least 3 vertices");
    for (const Vec2& v : poly.vertices)
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InvalidBoard(label + ".vertices: non-finite coordinate");
    if (!is_simple(poly.vertices, tol)) throw InvalidBoard(label + ".vertices: polygon is not simple");
    if (signed_area(poly.vertices) <= 0.0) throw InvalidBoard(label + ".vertices: orientation must be counter-clockwise");
    const Box b = bounding_box(poly.vertices);
    for (const Vec2& t : lattice_shifts_meeting(b, b, lattice)) {
        if (t.x == 0.0 && t.y == 0.0) continue;
        if (interiors_overlap(poly.vertices, translated(poly.vertices, t), tol))
            throw InvalidBoard(label + ": overlaps its own lattice translate");
    }
}

void validate_board(const DampingBoard& board) {
    validate_lattice(board.lattice);
    if (!(board.mass >= 0.0) || !std::isfinite(board.mass)) throw InvalidBoard("mass: must be a nonnegative number");
    const double tol = board.lattice.tol();
    for (std::size_t i = 0; i < board.polygons.size(); ++i)
        validate_polygon(board.polygons[i], board.lattice, "polygons[" + std::to_string(i) + "]");
    for (std::size_t i = 0; i < board.polygons.size(); ++i) {
        const Ring& p = board.polygons[i].vertices;
        const Box bp = bounding_box(p);
        for (std::size_t j = i + 1; j < board.polygons.size(); ++j) {
            const Ring& q = board.polygons[j].vertices;
            for (const Vec2& t : lattice_shifts_meeting(bounding_box(q), bp, board.lattice)) {
                if (interiors_overlap(p, translated(q, t), tol))
                    throw InvalidBoard("polygons[" + std::to_string(i) + "] and polygons[" + std::to_string(j) +
                                       "]: interiors overlap on the torus");
            }
        }
    }
}

double damping_at(const DampingBoard& board, Vec2 p) {
    const double tol = board.lattice.tol();
    const Box pt{p, p};
    double a = 0.0;
    for (const Polygon& poly : board.polygons) {
        const Box b = bounding_box(poly.vertices);
        for (const Vec2& t : lattice_shifts_meeting(b, pt, board.lattice)) {
            if (locate(p - t, poly.vertices, tol) == Location::interior) a += poly.coefficient;
        }
    }
    return a;
}

namespace {

double number_field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw InvalidBoard(where + key + ": missing");
    if (!j.at(key).is_number()) throw InvalidBoard(where + key + ": expected a number");
    return j.at(key).get<double>();
}

}  // namespace

DampingBoard parse_board(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidBoard(source + ": not valid JSON (" + std::string(e.what()) + ")");
    }
    if (!doc.is_object()) throw InvalidBoard("document: expected an object");
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer())
        throw InvalidBoard("schema_version: missing or not an integer");
    if (doc["schema_version"].get<int>() != 1)
        throw InvalidBoard("schema_version: unsupported version " + doc["schema_version"].dump());

    DampingBoard board;
    if (!doc.contains("lattice") || !doc["lattice"].is_object()) throw InvalidBoard("lattice: missing or not an object");
    board.lattice.A = number_field(doc["lattice"], "A", "lattice.");
    board.lattice.B = number_field(doc["lattice"], "B", "lattice.");
    board.mass = doc.contains("mass") ? number_field(doc, "mass", "") : 0.0;
    if (doc.contains("name") && doc["name"].is_string()) board.name = doc["name"].get<std::string>();
    if (doc.contains("approximate")) {
        if (!doc["approximate"].is_boolean()) throw InvalidBoard("approximate: expected a boolean");
        board.approximate = doc["approximate"].get<bool>();
    }
    if (!doc.contains("polygons") || !doc["polygons"].is_array()) throw InvalidBoard("polygons: missing or not an array");
    const json& polys = doc["polygons"];
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const std::string where = "polygons[" + std::to_string(i) + "]";
        const json& pj = polys[i];
        if (!pj.is_object()) throw InvalidBoard(where + ": expected an object");
        Polygon poly;
        poly.coefficient = number_field(pj, "coefficient", where + ".");
        if (!pj.contains("vertices") || !pj["vertices"].is_array()) throw InvalidBoard(where + ".vertices: missing or not an array");
        const json& vs = pj["vertices"];
        for (std::size_t k = 0; k < vs.size(); ++k) {
            const json& v = vs[k];
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                throw InvalidBoard(where + ".vertices[" + std::to_string(k) + "]: expected [x, y]");
            poly.vertices.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        if (poly.vertices.size() >= 3 && signed_area(poly.vertices) < 0.0)
            std::reverse(poly.vertices.begin(), poly.vertices.end());
        board.polygons.push_back(std::move(poly));
    }
    validate_board(board);
    return board;
}

DampingBoard load_board(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidBoard(path + ": cannot open board file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_board(ss.str(), path);
}

std::string board_to_json(const DampingBoard& board) {
    json doc;
    doc["schema_version"] = 1;
    if (!board.name.empty()) doc["name"] = board.name;
    doc["lattice"] = {{"A", board.lattice.A}, {"B", board.lattice.B}};
    doc["mass"] = board.mass;
    if (board.approximate) doc["approximate"] = true;
    doc["polygons"] = json::array();
    for (const Polygon& p : board.polygons) {
        json vs = json::array();
        for (const Vec2& v : p.vertices) vs.push_back({v.x, v.y});
        doc["polygons"].push_back({{"vertices", vs}, {"coefficient", p.coefficient}});
    }
    return doc.dump(2);
}

}  // namespace torusdamp
