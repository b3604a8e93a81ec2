#pragma once

#include <string>
#include <vector>

namespace rigidpoints {

inline constexpr const char* kVersionTag = "rigidpoints/0.1.0";

// Runs one CLI invocation (argv without the program name) and writes the
// report artifacts. Exit codes: 0 success, 2 validation error, 3
// numerical failure. Validation and numerical errors print a
// machine-readable JSON object on stdout.
int run_command(const std::vector<std::string>& args);

// Re-emits the tidy plot CSV from a report JSON produced by run_command.
std::string emit_plotdata(const std::string& report_json_path);

}  // namespace rigidpoints
