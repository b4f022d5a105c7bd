#pragma once

#include <array>
#include <vector>

#include "k3dual/polytope.hpp"

namespace k3dual {

// Four positive weights and a basis of the weight-orthogonal sublattice
// of Z^4, used to place monomials of a weighted homogeneous polynomial in Z^3.
class WeightSystem {
public:
    WeightSystem(std::array<Integer, 4> weights, std::array<IntVector, 3> basis);

    const std::array<Integer, 4>& weights() const { return weights_; }
    const std::array<IntVector, 3>& basis() const { return basis_; }
    Integer degree() const;

    // Index of the span of the basis inside {u : sum w_i u_i = 0}.
    Integer sublattice_index() const;

private:
    std::array<Integer, 4> weights_;
    std::array<IntVector, 3> basis_;
};

LatticeVector monomial_to_lattice_point(const WeightSystem& ws, const std::array<Integer, 4>& exponents);

// Convex hull of the lattice points of the given monomials.
Polytope3 newton_polytope(const WeightSystem& ws, const std::vector<std::array<Integer, 4>>& monomials);

}  // namespace k3dual
