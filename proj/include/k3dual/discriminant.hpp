#pragma once

#include <optional>
#include <vector>

#include "k3dual/lattice.hpp"

namespace k3dual {

// Discriminant group L*/L with its quadratic form. Elements are written as
// coefficient vectors over the cyclic generators.
struct FiniteQuadraticForm {
    std::vector<Integer> invariant_factors;          // d_1 | d_2 | ..., each > 1
    std::vector<IntVector> generators;               // x such that x·G^{-1} represents the generator
    std::vector<Rational> q_values;                  // in [0, 2)
    std::vector<std::vector<Rational>> bilinear;     // in [0, 1)

    Integer order() const;
    std::size_t size() const { return invariant_factors.size(); }
    Rational q(const IntVector& coeffs) const;
    Rational b(const IntVector& c1, const IntVector& c2) const;
    Integer element_order(const IntVector& coeffs) const;
};

FiniteQuadraticForm discriminant_form(const GramLattice& l);
std::size_t min_generators(const FiniteQuadraticForm& f);

// images[i] is the image of generator i of the source, as a coefficient
// vector over the target's generators. With sign = -1, q is negated.
struct FormIsomorphism {
    std::vector<IntVector> images;
    int sign = 1;
};

std::optional<FormIsomorphism> find_form_isomorphism(const FiniteQuadraticForm& from, const FiniteQuadraticForm& to,
                                                     int sign, const Integer& max_order = 10000);
std::optional<FormIsomorphism> forms_opposite(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                              const Integer& max_order = 10000);
bool verify_form_isomorphism(const FiniteQuadraticForm& from, const FiniteQuadraticForm& to,
                             const FormIsomorphism& iso);

}  // namespace k3dual
