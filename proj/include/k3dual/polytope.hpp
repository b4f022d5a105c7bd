#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "k3dual/error.hpp"
#include "k3dual/numeric.hpp"

namespace k3dual {

struct LatticeVector {
    Integer x = 0, y = 0, z = 0;

    LatticeVector() = default;
    LatticeVector(Integer a, Integer b, Integer c) : x(std::move(a)), y(std::move(b)), z(std::move(c)) {}
    LatticeVector(long a, long b, long c) : x(a), y(b), z(c) {}

    Integer& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    const Integer& operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

    IntVector to_vector() const { return {x, y, z}; }
    static LatticeVector from_vector(const IntVector& v);
};

bool operator==(const LatticeVector& a, const LatticeVector& b);
bool operator!=(const LatticeVector& a, const LatticeVector& b);
bool operator<(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator-(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator-(const LatticeVector& a);
LatticeVector operator*(const Integer& s, const LatticeVector& a);
Integer dot(const LatticeVector& a, const LatticeVector& b);
LatticeVector cross(const LatticeVector& a, const LatticeVector& b);
Integer content(const LatticeVector& a);  // gcd of coordinates
bool is_zero(const LatticeVector& a);
std::string to_string(const LatticeVector& v);

// Row-vector action v·T.
LatticeVector apply(const LatticeVector& v, const IntMatrix& t);

// {x : <normal, x> >= -offset}; normal is primitive.
struct HalfSpace {
    LatticeVector normal;
    Integer offset;

    Integer slack(const LatticeVector& p) const { return dot(normal, p) + offset; }
    bool contains(const LatticeVector& p) const { return slack(p) >= 0; }
};

bool operator==(const HalfSpace& a, const HalfSpace& b);

enum class FaceKind { Vertex, Edge, Facet };

struct FaceRef {
    FaceKind kind = FaceKind::Vertex;
    std::size_t index = 0;
};

bool operator==(const FaceRef& a, const FaceRef& b);
const char* face_kind_name(FaceKind kind);

struct Edge {
    std::size_t from = 0, to = 0;              // vertex indices, from < to
    std::vector<LatticeVector> interior;       // sorted from `from` towards `to`
    std::array<std::size_t, 2> facets{0, 0};   // sorted facet indices
};

struct Facet {
    HalfSpace plane;
    std::vector<std::size_t> vertices;         // sorted
    std::vector<std::size_t> edges;            // sorted
    std::vector<LatticeVector> interior;       // relative-interior lattice points, sorted
};

// Full-dimensional lattice polytope in Z^3 with its face lattice.
// Vertices are sorted lexicographically, facets by normal, edges by
// vertex pair.
class Polytope3 {
public:
    const std::vector<LatticeVector>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<std::size_t>& vertex_edges(std::size_t v) const { return vertex_edges_[v]; }
    const std::vector<std::size_t>& vertex_facets(std::size_t v) const { return vertex_facets_[v]; }

    std::optional<std::size_t> find_vertex(const LatticeVector& p) const;
    std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const;
    std::optional<std::size_t> find_facet(const LatticeVector& normal) const;

    bool contains(const LatticeVector& p) const;
    bool origin_strictly_interior() const;

    friend Polytope3 convex_hull(std::span<const LatticeVector> points);

private:
    Polytope3() = default;

    std::vector<LatticeVector> vertices_;
    std::vector<Facet> facets_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> vertex_edges_;
    std::vector<std::vector<std::size_t>> vertex_facets_;
};

Polytope3 convex_hull(std::span<const LatticeVector> points);
inline Polytope3 convex_hull(const std::vector<LatticeVector>& points) {
    return convex_hull(std::span<const LatticeVector>(points.data(), points.size()));
}

struct RationalPoint {
    Rational x, y, z;
};

class NonIntegralDualError : public Error {
public:
    NonIntegralDualError(const std::string& message, std::vector<RationalPoint> vertices)
        : Error(ErrorCode::NonIntegralDual, message), vertices_(std::move(vertices)) {}
    const std::vector<RationalPoint>& vertices() const { return vertices_; }

private:
    std::vector<RationalPoint> vertices_;
};

// {y : <x, y> >= -1 for all x in P}.
Polytope3 polar_dual(const Polytope3& p);
bool is_reflexive(const Polytope3& p);

enum class PointClass { Vertex, EdgeInterior, FacetInterior, Interior };
const char* point_class_name(PointClass c);

struct ClassifiedPoint {
    LatticeVector point;
    PointClass cls = PointClass::Interior;
    std::optional<FaceRef> face;  // carrier face, absent for interior points
};

struct LatticePointSet {
    std::vector<ClassifiedPoint> points;
    std::size_t count(PointClass c) const;
    std::size_t size() const { return points.size(); }
};

LatticePointSet lattice_points(const Polytope3& p);
std::vector<LatticeVector> interior_points(const Polytope3& p);

// Number of lattice points in the relative interior of a face.
std::size_t l_star(const Polytope3& p, const FaceRef& face);

// Face of `dual` (the polar dual of p) dual to `face`.
FaceRef dual_face(const Polytope3& p, const Polytope3& dual, const FaceRef& face);
FaceRef dual_face(const Polytope3& p, const FaceRef& face);

std::vector<LatticeVector> face_vertices(const Polytope3& p, const FaceRef& face);

bool contains(const Polytope3& outer, const Polytope3& inner);
bool contains(const Polytope3& outer, std::span<const LatticeVector> points);

}  // namespace k3dual
