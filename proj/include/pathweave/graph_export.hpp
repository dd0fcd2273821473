#pragma once

// Graphviz DOT rendering of an SBML reaction network.

#include <string>
#include <string_view>

#include "pathweave/sbml_model.hpp"

namespace pathweave::dot {

/// Species become ellipses and reactions boxes, both labeled by name (id
/// when the name is empty). Reactant->reaction and reaction->product edges
/// are solid, modifier->reaction edges dashed. Output follows document
/// order and carries no layout hints. Throws ValidationError for an invalid
/// model.
std::string export_dot(const sbml::SbmlModel& model);

/// `s` as a double-quoted DOT identifier.
std::string quote(std::string_view s);

}  // namespace pathweave::dot
