#pragma once

#include <array>
#include <optional>
#include <vector>

#include "k3dual/lattice.hpp"
#include "k3dual/polytope.hpp"

namespace k3dual {

enum class RayKind { Vertex, EdgeInterior };
const char* ray_kind_name(RayKind kind);

struct Ray {
    LatticeVector point;
    RayKind kind = RayKind::Vertex;
    FaceRef face;              // owning vertex or edge of the polytope
    std::size_t position = 0;  // 1-based step along the edge for edge-interior rays
};

struct RaySet {
    std::vector<Ray> rays;
    std::size_t size() const { return rays.size(); }
    std::vector<LatticeVector> points() const;
};

// Boundary lattice points that are not facet-interior. Default order is
// lexicographic; `ordering` must be a permutation of that set.
RaySet picard_rays(const Polytope3& delta, const std::optional<std::vector<LatticeVector>>& ordering = std::nullopt);

// Row j holds the j-th coordinate of every ray.
IntMatrix linear_relations(const RaySet& rays);

struct PicardBasis {
    std::array<std::size_t, 3> dropped{};  // 0-based, ascending
    std::vector<std::size_t> kept;         // 0-based, ascending
};

PicardBasis select_basis(const RaySet& rays, const std::optional<std::array<std::size_t, 3>>& dropped = std::nullopt);

// Intersection numbers of all toric divisors restricted to the K3 surface.
IntMatrix full_intersection_form(const Polytope3& delta, const RaySet& rays);

GramLattice intersection_matrix(const Polytope3& delta, const RaySet& rays, const PicardBasis& basis);

std::size_t rk_l0(const Polytope3& delta);

struct PicardCount {
    long from_rays = 0;
    long from_points = 0;
    long rk_l0 = 0;
};

PicardCount picard_counts(const Polytope3& delta);
long picard_number(const Polytope3& delta);

}  // namespace k3dual
