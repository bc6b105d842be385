#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it directly.

#include <iosfwd>
#include <string>
#include <vector>

namespace floer::cli {

inline constexpr const char* version = "0.1.0";

enum ExitCode : int { ok = 0, usage = 2, input_error = 3, computation_error = 4 };

/// args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floer::cli
