#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "k3dual/numeric.hpp"

namespace k3dual {

struct SignaturePair {
    long positive = 0;
    long negative = 0;
};

inline bool operator==(const SignaturePair& a, const SignaturePair& b) {
    return a.positive == b.positive && a.negative == b.negative;
}
std::string to_string(const SignaturePair& s);

// Integral symmetric bilinear form on Z^n given by its Gram matrix.
class GramLattice {
public:
    GramLattice() = default;
    explicit GramLattice(IntMatrix gram, std::string label = {});

    const IntMatrix& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    std::size_t rank() const { return gram_.rows(); }
    bool is_even() const;
    GramLattice with_label(std::string label) const;

    Integer pair(const IntVector& a, const IntVector& b) const;
    Integer norm(const IntVector& a) const { return pair(a, a); }

private:
    IntMatrix gram_;
    std::string label_;
};

Integer determinant(const GramLattice& l);
SignaturePair signature(const GramLattice& l);
SignaturePair signature(const IntMatrix& symmetric);
std::vector<Integer> invariant_factors(const GramLattice& l);

GramLattice lattice_U();
GramLattice lattice_A(long n);
GramLattice lattice_D(long n);
GramLattice lattice_E(long n);
GramLattice lattice_C6_8();
// Single named summand: U, A<n>, D<n>, E6, E7, E8, C6_8.
GramLattice standard_lattice(std::string_view name);

GramLattice direct_sum(const GramLattice& a, const GramLattice& b);
GramLattice direct_sum(const std::vector<GramLattice>& parts);

// B·G·B^T. B must have independent rows.
GramLattice apply_basis_change(const GramLattice& l, const IntMatrix& b);

// Least s >= 1 with s·x·G^{-1} integral.
Integer torsion_order(const GramLattice& l, const IntVector& x);

}  // namespace k3dual
