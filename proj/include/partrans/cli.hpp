#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace partrans {

/// Runs the partrans command line. args[0] is the program name.
/// Exit status: 0 on success or a true verdict, 1 on a false verdict, 2 on errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace partrans
