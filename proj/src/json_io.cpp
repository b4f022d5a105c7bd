#include "k3dual/json_io.hpp"

#include <fstream>
#include <sstream>

#include "k3dual/error.hpp"

namespace k3dual {

namespace {

const Integer kSafeMax("9007199254740991");

Error parse_error(const std::string& where, const std::string& what) {
    return Error(ErrorCode::ParseError, where + ": " + what);
}

}  // namespace

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw parse_error(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw parse_error(where, std::string("missing key \"") + key + "\"");
    return *it;
}

Json integer_to_json(const Integer& v) {
    if (abs(v) <= kSafeMax) return Json(v.get_si());
    return Json(v.get_str());
}

Integer integer_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
        return Integer(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) throw parse_error(where, "expected an integer, got \"" + s + "\"");
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw parse_error(where, "expected an integer, got \"" + s + "\"");
        return Integer(s[0] == '+' ? s.substr(1) : s);
    }
    throw parse_error(where, "expected an integer, got " + j.dump());
}

Json rational_to_json(const Rational& v) { return Json(v.get_str()); }

Json vector_to_json(const IntVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(integer_to_json(x));
    return a;
}

IntVector vector_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw parse_error(where, "expected an array");
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Json matrix_to_json(const IntMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i)));
    return a;
}

IntMatrix matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw parse_error(where, "expected an array of rows");
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(vector_from_json(j[i], where + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size()) throw parse_error(where, "rows have different lengths");
    }
    return IntMatrix::from_rows(rows);
}

Json point_to_json(const LatticeVector& p) { return vector_to_json(p.to_vector()); }

LatticeVector point_from_json(const Json& j, const std::string& where) {
    IntVector v = vector_from_json(j, where);
    if (v.size() != 3) throw parse_error(where, "expected 3 coordinates");
    return LatticeVector::from_vector(v);
}

Json points_to_json(const std::vector<LatticeVector>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(point_to_json(p));
    return a;
}

std::vector<LatticeVector> points_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw parse_error(where, "expected an array of points");
    std::vector<LatticeVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Json polytope_to_json(const std::string& name, const Polytope3& p) {
    return Json{{"name", name}, {"vertices", points_to_json(p.vertices())}};
}

PolytopeInput polytope_input_from_json(const Json& j, const std::string& where) {
    PolytopeInput in;
    if (j.is_object() && j.contains("name")) {
        if (!j["name"].is_string()) throw parse_error(where + ".name", "expected a string");
        in.name = j["name"].get<std::string>();
    }
    in.points = points_from_json(require(j, "vertices", where), where + ".vertices");
    return in;
}

Json gram_to_json(const GramLattice& l) { return Json{{"label", l.label()}, {"gram", matrix_to_json(l.gram())}}; }

GramLattice gram_from_json(const Json& j, const std::string& where) {
    IntMatrix m = matrix_from_json(require(j, "gram", where), where + ".gram");
    if (!m.is_symmetric()) throw Error(ErrorCode::NotSymmetric, where + ": Gram matrix must be square and symmetric");
    std::string label;
    if (j.contains("label") && j["label"].is_string()) label = j["label"].get<std::string>();
    return GramLattice(m, label);
}

Json weight_system_to_json(const WeightSystem& ws) {
    Json w = Json::array();
    for (const auto& x : ws.weights()) w.push_back(integer_to_json(x));
    Json b = Json::array();
    for (const auto& v : ws.basis()) b.push_back(vector_to_json(v));
    return Json{{"weights", w}, {"basis", b}};
}

WeightSystem weight_system_from_json(const Json& j, const std::string& where) {
    IntVector w = vector_from_json(require(j, "weights", where), where + ".weights");
    if (w.size() != 4) throw parse_error(where + ".weights", "expected 4 weights");
    IntMatrix b = matrix_from_json(require(j, "basis", where), where + ".basis");
    if (b.rows() != 3 || b.cols() != 4) throw parse_error(where + ".basis", "expected 3 vectors of length 4");
    return WeightSystem({w[0], w[1], w[2], w[3]}, {b.row(0), b.row(1), b.row(2)});
}

Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto pos = msg.find("syntax error");
        if (pos != std::string::npos) msg = msg.substr(pos);
        throw Error(ErrorCode::ParseError,
                    source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

}  // namespace k3dual
