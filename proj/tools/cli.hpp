#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cflobdd::cli {

enum ExitCode : int { ok = 0, bad_arguments = 2, resource_guard = 3, inconclusive = 4 };

/// Runs the command line; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cflobdd::cli
