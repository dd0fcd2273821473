#include "pathweave/sbml_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "pathweave/errors.hpp"

namespace pathweave::sbml {

namespace {

template <class T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  const auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

class Validator {
 public:
  explicit Validator(const SbmlModel& m) : m_(m) {}

  Diagnostics run() {
    check_ids();
    check_compartments();
    check_species();
    check_parameters();
    check_rules();
    check_reactions();
    return std::move(out_);
  }

 private:
  void error(const std::string& subject, std::string message) {
    out_.push_back(make_error(subject, std::move(message)));
  }
  void warning(const std::string& subject, std::string message) {
    out_.push_back(make_warning(subject, std::move(message)));
  }

  void check_ids() {
    std::set<std::string, std::less<>> seen;
    auto visit = [&](const std::string& id, const char* what) {
      if (id.empty()) {
        error("", std::string(what) + " without an id");
      } else if (!seen.insert(id).second) {
        error(id, "duplicate id " + quoted(id));
      }
    };
    for (const auto& c : m_.compartments) visit(c.id, "compartment");
    for (const auto& s : m_.species) visit(s.id, "species");
    for (const auto& p : m_.parameters) visit(p.id, "parameter");
    for (const auto& r : m_.reactions) visit(r.id, "reaction");
  }

  void check_compartments() {
    for (const auto& c : m_.compartments) {
      if (!(c.size > 0.0) || !std::isfinite(c.size)) {
        error(c.id, "compartment size must be positive");
      }
    }
  }

  void check_species() {
    for (const auto& s : m_.species) {
      if (!m_.find_compartment(s.compartment)) {
        error(s.id, "compartment " + quoted(s.compartment) + " does not resolve");
      }
      if (!(s.initial_concentration >= 0.0) || !std::isfinite(s.initial_concentration)) {
        error(s.id, "initial concentration must be non-negative");
      }
    }
  }

  void check_parameters() {
    for (const auto& p : m_.parameters) {
      if (p.value && !std::isfinite(*p.value)) {
        error(p.id, "parameter value must be finite");
      }
      if (p.constant && !p.value) {
        error(p.id, "constant parameter " + quoted(p.id) + " has no value");
      } else if (!p.constant && !p.value && !m_.find_rule(p.id)) {
        error(p.id, "unresolvable parameter " + p.id);
      }
    }
  }

  bool is_global_symbol(std::string_view name) const {
    return m_.find_species(name) || m_.find_compartment(name) || m_.find_parameter(name);
  }

  void check_rules() {
    std::set<std::string, std::less<>> targets;
    for (const auto& rule : m_.rules) {
      const Parameter* p = m_.find_parameter(rule.variable);
      if (!p) {
        error(rule.variable, "assignment rule target " + quoted(rule.variable) +
                                 " is not a global parameter");
      } else if (p->constant) {
        error(rule.variable, "assignment rule targets constant parameter " + quoted(rule.variable));
      }
      if (!targets.insert(rule.variable).second) {
        error(rule.variable, "more than one assignment rule for " + quoted(rule.variable));
      }
      for (const auto& name : mathml::free_variables(rule.math)) {
        if (!is_global_symbol(name)) {
          error(rule.variable, "identifier " + quoted(name) + " in assignment rule does not resolve");
        }
      }
    }
  }

  void check_species_ref(const Reaction& r, const std::string& species, const char* role) {
    if (!m_.find_species(species)) {
      error(r.id, std::string(role) + " species " + quoted(species) + " does not resolve");
    }
  }

  void check_reactions() {
    for (const auto& r : m_.reactions) {
      for (const auto& ref : r.reactants) {
        check_species_ref(r, ref.species, "reactant");
        if (!(ref.stoichiometry > 0.0) || !std::isfinite(ref.stoichiometry)) {
          error(r.id, "stoichiometry of reactant " + quoted(ref.species) + " must be positive");
        }
      }
      for (const auto& ref : r.products) {
        check_species_ref(r, ref.species, "product");
        if (!(ref.stoichiometry > 0.0) || !std::isfinite(ref.stoichiometry)) {
          error(r.id, "stoichiometry of product " + quoted(ref.species) + " must be positive");
        }
      }
      for (const auto& mod : r.modifiers) check_species_ref(r, mod, "modifier");
      if (r.reactants.empty() && r.products.empty()) {
        error(r.id, "reaction has neither reactants nor products");
      }
      if (!r.kinetic_law) {
        warning(r.id, "reaction has no kinetic law");
        continue;
      }
      check_kinetic_law(r, *r.kinetic_law);
    }
  }

  void check_kinetic_law(const Reaction& r, const KineticLaw& law) {
    std::set<std::string, std::less<>> locals;
    for (const auto& p : law.local_parameters) {
      if (p.id.empty()) {
        error(r.id, "local parameter without an id");
      } else if (!locals.insert(p.id).second) {
        error(r.id, "duplicate local parameter " + quoted(p.id));
      }
      if (!p.value) {
        error(r.id, "local parameter " + quoted(p.id) + " has no value");
      } else if (!std::isfinite(*p.value)) {
        error(r.id, "local parameter " + quoted(p.id) + " must be finite");
      }
      if (!p.constant) {
        error(r.id, "local parameter " + quoted(p.id) + " must be constant");
      }
    }
    for (const auto& name : mathml::free_variables(law.math)) {
      if (!locals.contains(name) && !is_global_symbol(name)) {
        error(r.id, "identifier " + quoted(name) + " in kinetic law does not resolve");
      }
    }
  }

  const SbmlModel& m_;
  Diagnostics out_;
};

}  // namespace

const Parameter* KineticLaw::find_local(std::string_view id) const {
  return find_by_id(local_parameters, id);
}

const Compartment* SbmlModel::find_compartment(std::string_view id) const { return find_by_id(compartments, id); }
const Species* SbmlModel::find_species(std::string_view id) const { return find_by_id(species, id); }
const Parameter* SbmlModel::find_parameter(std::string_view id) const { return find_by_id(parameters, id); }
const Reaction* SbmlModel::find_reaction(std::string_view id) const { return find_by_id(reactions, id); }

const AssignmentRule* SbmlModel::find_rule(std::string_view variable) const {
  const auto it = std::find_if(rules.begin(), rules.end(),
                               [&](const AssignmentRule& r) { return r.variable == variable; });
  return it == rules.end() ? nullptr : &*it;
}

Diagnostics validate(const SbmlModel& model) { return Validator(model).run(); }

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::species: return "species";
    case SymbolKind::compartment: return "compartment";
    case SymbolKind::global_parameter: return "global-parameter";
    case SymbolKind::local_parameter: return "local-parameter";
  }
  return "?";
}

SymbolKind resolve_symbol(const SbmlModel& model, std::string_view reaction_id, std::string_view name) {
  const Reaction* r = model.find_reaction(reaction_id);
  if (!r) throw LookupError("unknown reaction " + quoted(reaction_id));
  if (r->kinetic_law && r->kinetic_law->find_local(name)) return SymbolKind::local_parameter;
  if (model.find_parameter(name)) return SymbolKind::global_parameter;
  if (model.find_species(name)) return SymbolKind::species;
  if (model.find_compartment(name)) return SymbolKind::compartment;
  throw LookupError("unknown identifier " + quoted(name) + " in reaction " + quoted(reaction_id));
}

}  // namespace pathweave::sbml
