#pragma once

// Projection of a dynamic SBML model onto a static BioPAX graph.

#include <string>

#include "pathweave/biopax_model.hpp"
#include "pathweave/diagnostic.hpp"
#include "pathweave/sbml_model.hpp"

namespace pathweave::convert {

/// Maps species to physicalEntity, compartments to
/// openControlledVocabulary, reactions to conversion_<id> with
/// <id>_LEFT_<s> / <id>_RIGHT_<s> participants, and modifiers to
/// control_<id> with <id>_CONTROLLER_<s> participants. Kinetics, rules,
/// units and initial values are dropped. Throws ValidationError for an
/// invalid model and FormatError when a generated id collides.
biopax::BiopaxGraph sbml_to_biopax(const sbml::SbmlModel& model, std::string base_uri = {});

/// One warning per category of information sbml_to_biopax discards.
Diagnostics conversion_report(const sbml::SbmlModel& model);

}  // namespace pathweave::convert
