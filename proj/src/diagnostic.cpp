#include "pathweave/diagnostic.hpp"

#include <algorithm>
#include <sstream>

#include "pathweave/errors.hpp"

namespace pathweave {

bool has_errors(const Diagnostics& diagnostics) {
  return count_errors(diagnostics) > 0;
}

std::size_t count_errors(const Diagnostics& diagnostics) {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(),
      [](const Diagnostic& d) { return d.severity == Severity::error; }));
}

const char* to_string(Severity severity) {
  return severity == Severity::error ? "error" : "warning";
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string line = to_string(d.severity);
  if (!d.subject.empty()) {
    line += " [" + d.subject + "]";
  }
  line += " " + d.message;
  return line;
}

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  return os << format_diagnostic(d);
}

namespace {

std::string summarize(const Diagnostics& diagnostics) {
  std::ostringstream os;
  os << count_errors(diagnostics) << " validation error(s)";
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) {
      os << "; " << format_diagnostic(d);
    }
  }
  return os.str();
}

std::string join_cycle(const std::vector<std::string>& cycle) {
  std::string out = "cyclic assignment rules: ";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i > 0) out += " -> ";
    out += cycle[i];
  }
  return out;
}

std::string with_time(const std::string& message, double time) {
  std::ostringstream os;
  os.precision(9);
  os << message << " at t=" << time;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(Diagnostics diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

CycleError::CycleError(std::vector<std::string> cycle)
    : Error(join_cycle(cycle)), cycle_(std::move(cycle)) {}

IntegrationError::IntegrationError(const std::string& message, double time)
    : Error(with_time(message, time)), time_(time) {}

}  // namespace pathweave
