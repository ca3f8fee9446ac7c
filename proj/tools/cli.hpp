#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vgit::cli {

/// Runs one command line (args exclude the program name). Returns the exit
/// code: 0 success, 1 domain error, 2 input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vgit::cli
