#pragma once

#include <iosfwd>

namespace qsr::cli {

/// Exit codes of `run`.
enum ExitCode : int { kOk = 0, kValidationFailure = 1, kInternalError = 2 };

/// Entry point of the `qsr` command. Diagnostics go to `err` as one JSON
/// object per line; results go to `out` unless `--out` names a file.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsr::cli
