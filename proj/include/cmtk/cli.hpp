#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmtk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Entry point of the `cmtk` binary. args excludes the program name.
/// Results go to `out` (or the --out file), diagnostics as JSON to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmtk
