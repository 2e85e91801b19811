#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rulek::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

/// Runs one command line (args[0] is the program name). Results go to `out`,
/// one-line diagnostics to `err`. Returns the process exit status.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rulek::cli
