#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lpmlens::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kTimeout = 3 };

/// Runs one `lpm_lens` invocation. `args` excludes the program name. JSON goes
/// to `out` (or the `--out` file), summaries and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpmlens::cli
