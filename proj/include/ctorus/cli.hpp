#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ctorus {

enum ExitCode : int { ExitOk = 0, ExitRefuted = 1, ExitInputError = 2, ExitInternal = 3 };

/// Runs one command line (without the program name). Output is assembled in full before anything
/// is written to `out`; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ctorus
