#pragma once

#include <iosfwd>

namespace rumor::cli {

/// Exit statuses: 0 success, 1 verification or generation failure, 2 usage.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv (argv[0] is the program name) and runs the subcommand.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rumor::cli
