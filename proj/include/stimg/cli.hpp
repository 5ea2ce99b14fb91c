#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stimg::cli {

// Parses and dispatches one invocation. Report lines are prefixed
// FACT/INDET/NOTE/ERR. Exit status: 0 success, 1 input error,
// 2 indeterminate-only results, 3 cap exhaustion.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stimg::cli
