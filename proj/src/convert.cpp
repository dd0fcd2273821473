#include "pathweave/convert.hpp"

#include <set>

#include "pathweave/errors.hpp"

namespace pathweave::convert {

using biopax::BiopaxClass;
using biopax::BiopaxGraph;
using biopax::Individual;

namespace {

const std::string& label(const std::string& name, const std::string& id) { return name.empty() ? id : name; }

Individual participant(const sbml::SbmlModel& model, const std::string& id, const std::string& species) {
  Individual p(id, BiopaxClass::physicalEntityParticipant);
  p.add_ref(biopax::kPhysicalEntity, species);
  p.add_ref(biopax::kCellularLocation, model.find_species(species)->compartment);
  return p;
}

}  // namespace

BiopaxGraph sbml_to_biopax(const sbml::SbmlModel& model, std::string base_uri) {
  if (auto findings = sbml::validate(model); has_errors(findings)) {
    throw ValidationError(std::move(findings));
  }
  BiopaxGraph graph(std::move(base_uri));

  for (const auto& c : model.compartments) {
    Individual vocab(c.id, BiopaxClass::openControlledVocabulary);
    vocab.add_literal(biopax::kTerm, label(c.name, c.id));
    graph.add(std::move(vocab));
  }
  for (const auto& s : model.species) {
    Individual entity(s.id, BiopaxClass::physicalEntity);
    entity.add_literal(biopax::kName, label(s.name, s.id));
    graph.add(std::move(entity));
  }

  for (const auto& r : model.reactions) {
    Individual conversion("conversion_" + r.id, BiopaxClass::conversion);
    conversion.add_literal(biopax::kName, label(r.name, r.id));
    std::vector<Individual> parts;

    auto attach = [&](const std::vector<sbml::SpeciesRef>& refs, std::string_view side) {
      std::set<std::string> seen;
      for (const auto& ref : refs) {
        if (!seen.insert(ref.species).second) continue;  // one participant per species and side
        const std::string id = r.id + "_" + std::string(side) + "_" + ref.species;
        conversion.add_ref(side, id);
        parts.push_back(participant(model, id, ref.species));
      }
    };
    attach(r.reactants, biopax::kLeft);
    attach(r.products, biopax::kRight);
    graph.add(std::move(conversion));
    for (auto& p : parts) graph.add(std::move(p));

    if (r.modifiers.empty()) continue;
    Individual control("control_" + r.id, BiopaxClass::control);
    std::set<std::string> seen;
    std::vector<Individual> controllers;
    for (const auto& species : r.modifiers) {
      if (!seen.insert(species).second) continue;
      const std::string id = r.id + "_CONTROLLER_" + species;
      control.add_ref(biopax::kController, id);
      controllers.push_back(participant(model, id, species));
    }
    control.add_ref(biopax::kControlled, "conversion_" + r.id);
    graph.add(std::move(control));
    for (auto& p : controllers) graph.add(std::move(p));
  }
  return graph;
}

Diagnostics conversion_report(const sbml::SbmlModel& model) {
  Diagnostics out;
  std::size_t laws = 0;
  std::size_t locals = 0;
  for (const auto& r : model.reactions) {
    if (!r.kinetic_law) continue;
    ++laws;
    locals += r.kinetic_law->local_parameters.size();
  }
  if (laws > 0) {
    out.push_back(make_warning(model.id, "dropped " + std::to_string(laws) + " kinetic law(s)"));
  }
  if (const std::size_t total = model.parameters.size() + locals; total > 0) {
    out.push_back(make_warning(model.id, "dropped " + std::to_string(total) + " parameter(s) (" +
                                             std::to_string(model.parameters.size()) + " global, " +
                                             std::to_string(locals) + " local)"));
  }
  if (!model.rules.empty()) {
    out.push_back(make_warning(model.id, "dropped " + std::to_string(model.rules.size()) + " assignment rule(s)"));
  }
  for (const auto& r : model.reactions) {
    if (r.reversible) {
      out.push_back(make_warning(r.id, "reversible reaction exported as a single forward conversion"));
    }
    auto lossy = [](const std::vector<sbml::SpeciesRef>& refs) {
      std::set<std::string> seen;
      for (const auto& ref : refs) {
        if (ref.stoichiometry != 1.0 || !seen.insert(ref.species).second) return true;
      }
      return false;
    };
    if (lossy(r.reactants) || lossy(r.products)) {
      out.push_back(make_warning(r.id, "stoichiometry other than 1 is not represented"));
    }
  }
  return out;
}

}  // namespace pathweave::convert
