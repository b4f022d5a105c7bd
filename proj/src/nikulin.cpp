#include "k3dual/nikulin.hpp"

#include "k3dual/discriminant.hpp"
#include "k3dual/error.hpp"

namespace k3dual {

NikulinReport nikulin_embedding_check(const GramLattice& l, SignaturePair ambient, bool strict) {
    if (!l.is_even()) throw Error(ErrorCode::NotEven, "embedding criteria need an even lattice");
    NikulinReport r;
    r.ambient = ambient;
    r.lattice = signature(l);
    r.rank = static_cast<long>(l.rank());
    r.ambient_rank = ambient.positive + ambient.negative;
    r.discriminant_length = static_cast<long>(min_generators(discriminant_form(l)));
    r.signature_difference = ambient.positive - ambient.negative;
    r.positive_gap = ambient.positive - r.lattice.positive;
    r.negative_gap = ambient.negative - r.lattice.negative;
    r.rank_gap = r.ambient_rank - r.rank;
    r.strict = strict;
    r.condition1 = r.signature_difference % 8 == 0;
    r.condition2 = r.positive_gap >= 0 && r.negative_gap >= 0;
    r.condition3 = strict ? r.rank_gap > r.discriminant_length : r.rank_gap >= r.discriminant_length;
    return r;
}

}  // namespace k3dual
