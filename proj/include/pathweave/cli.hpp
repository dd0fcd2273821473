#pragma once

// Command-line front end. `run` is the whole program minus process setup,
// so tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace pathweave::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, numeric = 3 };

enum class LogLevel { warn, info, debug };

/// Parses a PATHWEAVE_LOG value; unknown or empty values mean warn.
LogLevel parse_log_level(const char* value);

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        LogLevel level = LogLevel::warn);

/// Fixed-format rendering used for CSV cells: 9 significant digits,
/// '.' decimal separator, independent of the global locale.
std::string format_number(double value);

}  // namespace pathweave::cli
