#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace focksim {

/// Exit codes of the command-line surface.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;       // verification failures, I/O problems
inline constexpr int parse_error = 2;   // CLI or config parsing
inline constexpr int guard_error = 3;   // dimension/coupling/truncation guards
inline constexpr int norm_leakage = 4;  // truncation loss above budget
}  // namespace exit_code

/// Run the CLI with explicit streams; `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace focksim
