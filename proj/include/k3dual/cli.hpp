#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace k3dual::cli {

// Exit codes: 0 success or PASS, 1 FAIL verdict or negative answer, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k3dual::cli
