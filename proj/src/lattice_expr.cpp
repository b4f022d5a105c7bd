#include "k3dual/lattice_expr.hpp"

#include <cctype>
#include <filesystem>
#include <vector>

#include "k3dual/error.hpp"
#include "k3dual/json_io.hpp"

namespace k3dual {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Splits on '+' outside brackets.
std::vector<std::string> split_terms(std::string_view expr) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < expr.size(); ++i) {
        char c = expr[i];
        if (c == '[') ++depth;
        else if (c == ']') --depth;
        else if (c == '+' && depth == 0) {
            out.push_back(trim(expr.substr(start, i - start)));
            start = i + 1;
        }
        if (depth < 0) throw Error(ErrorCode::ParseError, "unbalanced ']' in lattice expression");
    }
    if (depth != 0) throw Error(ErrorCode::ParseError, "unbalanced '[' in lattice expression");
    out.push_back(trim(expr.substr(start)));
    return out;
}

}  // namespace

GramLattice parse_lattice_expression(std::string_view expr, const std::string& base_dir) {
    std::vector<GramLattice> parts;
    for (const auto& term : split_terms(expr)) {
        if (term.empty()) throw Error(ErrorCode::ParseError, "empty term in lattice expression '" + std::string(expr) + "'");
        if (term.rfind("custom:", 0) == 0) {
            std::filesystem::path p(term.substr(7));
            if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
            parts.push_back(gram_from_json(read_json_file(p.string()), p.string()));
        } else if (term.front() == '[') {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(term);
            } catch (const nlohmann::json::parse_error& e) {
                throw Error(ErrorCode::ParseError, "bad inline matrix '" + term + "': " + e.what());
            }
            GramLattice g(matrix_from_json(j, "inline matrix"));
            parts.push_back(g.with_label(term));
        } else {
            try {
                parts.push_back(standard_lattice(term));
            } catch (const Error& e) {
                throw Error(ErrorCode::ParseError, "unknown lattice term '" + term + "'");
            }
        }
    }
    GramLattice sum = direct_sum(parts);
    return sum.with_label(std::string(expr));
}

}  // namespace k3dual
