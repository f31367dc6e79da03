#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hochkit::cli {

// Exit codes: 0 success, 1 a computation reported a failing verdict, 2 bad input or usage.
enum ExitCode { ok = 0, failed = 1, bad_input = 2 };

// Runs one command line (arguments after the program name). The report goes to `out` in one piece.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hochkit::cli
