#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathweave/diagnostic.hpp"

namespace pathweave {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed XML. `line` is 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed XML that is not the expected document type, or that uses
/// a construct outside the supported subset.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A reference (rdf:resource, species id, ...) that does not resolve.
class ReferenceError : public Error {
 public:
  ReferenceError(const std::string& message, std::string target)
      : Error(message), target_(std::move(target)) {}
  const std::string& target() const noexcept { return target_; }

 private:
  std::string target_;
};

/// Aggregated validation failure.
class ValidationError : public Error {
 public:
  explicit ValidationError(Diagnostics diagnostics);
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

/// Unsupported or unknown MathML element.
class MathParseError : public Error {
 public:
  MathParseError(const std::string& message, std::string element)
      : Error(message), element_(std::move(element)) {}
  const std::string& element() const noexcept { return element_; }

 private:
  std::string element_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class UnboundVariableError : public Error {
 public:
  explicit UnboundVariableError(std::string name)
      : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Division by zero, zero to a negative power, and similar. Carries the
/// offending subexpression serialized as MathML.
class NumericDomainError : public Error {
 public:
  NumericDomainError(const std::string& message, std::string subexpression)
      : Error(message + ": " + subexpression), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

/// Lookup of an id that does not exist (query ops, symbol resolution).
class LookupError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numeric failure during integration; `time()` is where it happened.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& message, double time);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Adaptive step size fell below the underflow threshold.
class StiffnessError : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

/// State became non-finite.
class DivergenceError : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

}  // namespace pathweave
