#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coxrig::cli {

enum ExitCode : int { kOk = 0, kAnalysisFailure = 1, kInputError = 2 };

/// Runs one invocation; `args` excludes the program name. The report is
/// written to `out` in one piece (or to --output via a rename), diagnostics
/// to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits a batch file into systems at blank lines.
std::vector<std::string> split_stanzas(const std::string& text);

}  // namespace coxrig::cli
