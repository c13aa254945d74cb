#ifndef OPTDESIGN_TOOLS_CLI_HPP
#define OPTDESIGN_TOOLS_CLI_HPP

#include <iosfwd>

namespace optdesign::cli {

inline constexpr int kExitCertified = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBestFound = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitUsage = 64;

/// Runs the optdesign command line. Output that has no --out target goes to
/// `out`; diagnostics and metadata go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optdesign::cli

#endif  // OPTDESIGN_TOOLS_CLI_HPP
