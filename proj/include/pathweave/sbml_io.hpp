#pragma once

#include <string>
#include <string_view>

#include "pathweave/diagnostic.hpp"
#include "pathweave/sbml_model.hpp"

namespace pathweave::sbml {

inline constexpr std::string_view kNamespace = "http://www.sbml.org/sbml/level2";

/// Reads the document structure without validating the model. Unknown
/// elements are skipped and reported as warnings in `warnings` when given.
/// Throws SyntaxError on malformed XML and FormatError on a wrong root
/// element, namespace, or an unparseable attribute.
SbmlModel read_sbml(std::string_view document, Diagnostics* warnings = nullptr);

/// read_sbml followed by validate(); throws ValidationError when the
/// model has error-severity findings.
SbmlModel parse_sbml(std::string_view document, Diagnostics* warnings = nullptr);

/// Canonical UTF-8 output with two-space indentation and a fixed
/// attribute order. Numbers are written in shortest round-trip form.
std::string serialize_sbml(const SbmlModel& model);

}  // namespace pathweave::sbml
