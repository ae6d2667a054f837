#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verification suite failed, or a runtime fault
inline constexpr int kExitUsage = 2;   // bad flags or parameters

/// Runs the pdlab command line. args excludes the program name. Results go
/// to `out` (or to --out), diagnostics and error JSON to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdlab::cli
