#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stochord::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kFails = 3,
  kPrecondition = 4,
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or to the file named by --out where that option names the report),
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochord::cli
