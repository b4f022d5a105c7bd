#pragma once

#include <vector>

#include "k3dual/numeric.hpp"

namespace k3dual {

// P·A·Q = S with P, Q unimodular and S diagonal; diagonal entries are
// non-negative and each divides the next.
struct SmithForm {
    IntMatrix S;
    IntMatrix P, P_inverse;
    IntMatrix Q, Q_inverse;
    std::vector<Integer> diagonal;  // length min(rows, cols)
    std::size_t rank = 0;

    // Diagonal entries greater than one.
    std::vector<Integer> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

// Columns form a Z-basis of {x in Z^n : A·x = 0}.
IntMatrix kernel_basis(const IntMatrix& a);

}  // namespace k3dual
