#pragma once

#include "k3dual/lattice.hpp"

namespace k3dual {

// Criteria for a primitive embedding of an even lattice into an even
// unimodular lattice of the given signature.
struct NikulinReport {
    SignaturePair ambient;
    SignaturePair lattice;
    long rank = 0;
    long ambient_rank = 0;
    long discriminant_length = 0;   // l(A_L)
    long signature_difference = 0;  // l+ - l-
    long positive_gap = 0;          // l+ - t+
    long negative_gap = 0;          // l- - t-
    long rank_gap = 0;              // rk ambient - rk L
    bool strict = true;
    bool condition1 = false;        // l+ - l- = 0 mod 8
    bool condition2 = false;        // both gaps non-negative
    bool condition3 = false;        // rank gap > l(A_L), or >= when relaxed

    bool passed() const { return condition1 && condition2 && condition3; }
};

NikulinReport nikulin_embedding_check(const GramLattice& l, SignaturePair ambient = {3, 19}, bool strict = true);

}  // namespace k3dual
