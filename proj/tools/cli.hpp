#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlsspf::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUnknown = 2, kInputError = 3 };

// Runs one subcommand. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlsspf::cli
