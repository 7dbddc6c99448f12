#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pseudoherm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one command. `args` excludes the program name. Data goes to the file
/// named by --out, or to `out` when --out is absent; the one-line summary goes
/// to `out` when data went to a file and to `err` otherwise. Diagnostics go to
/// `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pseudoherm::cli
