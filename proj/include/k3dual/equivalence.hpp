#pragma once

#include <optional>

#include "k3dual/polytope.hpp"

namespace k3dual {

// Returns T in GL(3,Z) such that v -> v·T maps the vertices of p onto the
// vertices of q, or nothing when no such matrix exists.
std::optional<IntMatrix> unimodular_equivalent(const Polytope3& p, const Polytope3& q);

// True when det T = ±1 and v·T maps vertices of p bijectively onto those of q.
bool is_equivalence_witness(const Polytope3& p, const Polytope3& q, const IntMatrix& t);

}  // namespace k3dual
