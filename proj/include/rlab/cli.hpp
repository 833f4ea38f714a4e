#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rlab::cli {

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs one command line (without the program name). The report goes to
/// --out when given, else to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Removes wall-clock fields so two reports can be compared byte-for-byte.
std::string strip_timing(const std::string& report_json);

}  // namespace rlab::cli
