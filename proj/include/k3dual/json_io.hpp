#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "k3dual/lattice.hpp"
#include "k3dual/polytope.hpp"
#include "k3dual/weight_system.hpp"

namespace k3dual {

using Json = nlohmann::json;

// Integers beyond the 53-bit safe range are written as decimal strings.
Json integer_to_json(const Integer& v);
Integer integer_from_json(const Json& j, const std::string& where);
Json rational_to_json(const Rational& v);

Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j, const std::string& where);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, const std::string& where);

Json point_to_json(const LatticeVector& p);
LatticeVector point_from_json(const Json& j, const std::string& where);
Json points_to_json(const std::vector<LatticeVector>& pts);
std::vector<LatticeVector> points_from_json(const Json& j, const std::string& where);

struct PolytopeInput {
    std::string name;
    std::vector<LatticeVector> points;
};

// {"name": ..., "vertices": [[x,y,z], ...]}
Json polytope_to_json(const std::string& name, const Polytope3& p);
PolytopeInput polytope_input_from_json(const Json& j, const std::string& where);

// {"label": ..., "gram": [[...], ...]}
Json gram_to_json(const GramLattice& l);
GramLattice gram_from_json(const Json& j, const std::string& where);

// {"weights": [4 ints], "basis": [[4 ints] x 3]}
Json weight_system_to_json(const WeightSystem& ws);
WeightSystem weight_system_from_json(const Json& j, const std::string& where);

// Parses a file; syntax errors carry path:line:column.
Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text, const std::string& source);

const Json& require(const Json& j, const char* key, const std::string& where);

}  // namespace k3dual
