#pragma once

// In-memory SBML Level 2 model: compartments, species, global parameters,
// assignment rules and reactions with kinetic laws.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathweave/diagnostic.hpp"
#include "pathweave/mathml.hpp"
#include "pathweave/xml.hpp"

namespace pathweave::sbml {

/// Verbatim XML content of a notes or annotation element. `bytes` is the
/// exact source text between the start and end tag; `namespaces` holds
/// prefix bindings the content uses but that were declared outside it.
struct XmlBlob {
  std::string bytes;
  xml::NamespaceMap namespaces;
  bool operator==(const XmlBlob&) const = default;
};

struct Compartment {
  std::string id;
  std::string name;
  double size = 1.0;
  std::string units;
  std::string metaid;
  std::optional<XmlBlob> annotation;
  bool operator==(const Compartment&) const = default;
};

struct Species {
  std::string id;
  std::string name;
  std::string compartment;
  double initial_concentration = 0.0;
  std::string substance_units;
  std::string spatial_size_units;  // carried verbatim, never interpreted
  bool boundary_condition = false;
  std::string metaid;
  std::optional<XmlBlob> annotation;
  bool operator==(const Species&) const = default;
};

struct Parameter {
  std::string id;
  std::string name;
  std::optional<double> value;
  std::string units;
  bool constant = true;
  bool operator==(const Parameter&) const = default;
};

struct AssignmentRule {
  std::string variable;
  mathml::MathExpr math = mathml::MathExpr::integer(0);
  std::string metaid;
  bool operator==(const AssignmentRule&) const = default;
};

struct SpeciesRef {
  std::string species;
  double stoichiometry = 1.0;
  bool operator==(const SpeciesRef&) const = default;
};

struct KineticLaw {
  mathml::MathExpr math = mathml::MathExpr::integer(0);
  std::vector<Parameter> local_parameters;
  std::string time_units;
  std::string substance_units;

  const Parameter* find_local(std::string_view id) const;
  bool operator==(const KineticLaw&) const = default;
};

struct Reaction {
  std::string id;
  std::string name;
  bool reversible = true;
  bool fast = false;
  std::vector<SpeciesRef> reactants;
  std::vector<SpeciesRef> products;
  std::vector<std::string> modifiers;
  std::optional<KineticLaw> kinetic_law;
  std::string metaid;
  std::optional<XmlBlob> annotation;
  bool operator==(const Reaction&) const = default;
};

struct SbmlModel {
  std::string id;
  std::string name;
  std::vector<Compartment> compartments;
  std::vector<Species> species;
  std::vector<Parameter> parameters;
  std::vector<AssignmentRule> rules;
  std::vector<Reaction> reactions;
  std::optional<XmlBlob> notes;
  std::optional<XmlBlob> annotation;
  std::string metaid;
  // Attributes of the enclosing <sbml> element.
  int version = 1;
  std::string document_metaid;

  const Compartment* find_compartment(std::string_view id) const;
  const Species* find_species(std::string_view id) const;
  const Parameter* find_parameter(std::string_view id) const;
  const Reaction* find_reaction(std::string_view id) const;
  const AssignmentRule* find_rule(std::string_view variable) const;

  bool operator==(const SbmlModel&) const = default;
};

/// Returns every invariant violation; empty iff the model is valid.
/// Findings are returned, never thrown.
Diagnostics validate(const SbmlModel& model);

enum class SymbolKind { species, compartment, global_parameter, local_parameter };

const char* to_string(SymbolKind kind);

/// Resolves `name` as seen from the kinetic law of `reaction_id`: local
/// parameters shadow globals. Throws LookupError for an unknown reaction
/// or name.
SymbolKind resolve_symbol(const SbmlModel& model, std::string_view reaction_id, std::string_view name);

}  // namespace pathweave::sbml
