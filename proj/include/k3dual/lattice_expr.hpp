#pragma once

#include <string>
#include <string_view>

#include "k3dual/lattice.hpp"

namespace k3dual {

// Sum of terms separated by '+':
//   U | A<n> | D<n> | E6 | E7 | E8 | C6_8 | custom:<path> | [[a,b],[c,d]]
// custom: paths are resolved relative to `base_dir` when not absolute.
GramLattice parse_lattice_expression(std::string_view expr, const std::string& base_dir = {});

}  // namespace k3dual
