#pragma once

#include <string>
#include <vector>

namespace colsel_cli {

/// Runs one colsel command. Returns the process exit code:
///   0 success, 1 data error, 2 usage error.
/// Data and usage failures print a single machine-readable JSON line on
/// standard error.
int dispatch(int argc, const char* const* argv);

/// Convenience overload for in-process callers (tests); the program name is
/// prepended automatically.
int dispatch(const std::vector<std::string>& args);

}  // namespace colsel_cli
