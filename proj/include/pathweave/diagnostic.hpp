#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathweave {

enum class Severity { warning, error };

/// A validation finding. `subject` is the id of the offending object
/// (empty when the finding concerns the document as a whole).
struct Diagnostic {
  Severity severity = Severity::error;
  std::string subject;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline Diagnostic make_error(std::string subject, std::string message) {
  return {Severity::error, std::move(subject), std::move(message)};
}

inline Diagnostic make_warning(std::string subject, std::string message) {
  return {Severity::warning, std::move(subject), std::move(message)};
}

bool has_errors(const Diagnostics& diagnostics);
std::size_t count_errors(const Diagnostics& diagnostics);

const char* to_string(Severity severity);

// One line, no trailing newline: "error [reaction1] species 'Q' ..."
std::string format_diagnostic(const Diagnostic& d);

std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

}  // namespace pathweave
