#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace contractible {

// Exit codes: 0 success or pass, 1 checker violations, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitInput = 2;

// Runs one command line (args[0] is the program name). Reports go to
// `out`, diagnostics to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contractible
