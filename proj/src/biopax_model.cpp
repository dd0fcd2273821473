#include "pathweave/biopax_model.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>

#include "pathweave/errors.hpp"

namespace pathweave::biopax {

namespace {

constexpr std::size_t kMany = std::numeric_limits<std::size_t>::max();

struct PropertyRule {
  std::string_view name;
  std::size_t min;
  std::size_t max;
  bool is_ref;
  std::initializer_list<BiopaxClass> targets;
};

using BC = BiopaxClass;

// Per-class property table. Pathway NAME is optional; a control may name
// several controllers (one per SBML modifier).
std::vector<PropertyRule> rules_for(BiopaxClass cls) {
  switch (cls) {
    case BC::physicalEntity:
      return {{kName, 1, 1, false, {}}};
    case BC::openControlledVocabulary:
      return {{kTerm, 1, 1, false, {}}};
    case BC::physicalEntityParticipant:
      return {{kPhysicalEntity, 1, 1, true, {BC::physicalEntity}},
              {kCellularLocation, 0, 1, true, {BC::openControlledVocabulary}}};
    case BC::conversion:
      return {{kName, 1, 1, false, {}},
              {kLeft, 0, kMany, true, {BC::physicalEntityParticipant}},
              {kRight, 0, kMany, true, {BC::physicalEntityParticipant}}};
    case BC::control:
      return {{kController, 1, kMany, true, {BC::physicalEntityParticipant}},
              {kControlled, 1, 1, true, {BC::conversion}}};
    case BC::pathway:
      return {{kName, 0, 1, false, {}},
              {kPathwayComponents, 0, kMany, true, {BC::conversion, BC::control}}};
    case BC::opaque:
      return {};
  }
  return {};
}

std::vector<const Property*> sorted(const std::vector<Property>& props) {
  std::vector<const Property*> out;
  out.reserve(props.size());
  for (const auto& p : props) out.push_back(&p);
  std::sort(out.begin(), out.end(), [](const Property* a, const Property* b) { return a->name < b->name; });
  return out;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

void validate_individual(const BiopaxGraph& graph, const Individual& ind, Diagnostics& out) {
  const auto table = rules_for(ind.cls());
  for (const auto& prop : ind.properties()) {
    const auto rule = std::find_if(table.begin(), table.end(),
                                   [&](const PropertyRule& r) { return r.name == prop.name; });
    if (rule == table.end()) {
      out.push_back(make_error(ind.id(), "property " + prop.name + " is not allowed on " + ind.class_name()));
      continue;
    }
    for (const auto& v : prop.values) {
      if (v.is_ref() != rule->is_ref) {
        out.push_back(make_error(ind.id(), prop.name + (rule->is_ref ? " must be a reference" : " must be a literal")));
        continue;
      }
      if (!v.is_ref()) continue;
      const Individual* target = graph.find(v.text);
      if (!target) continue;  // reported by the dangling-reference pass
      if (std::find(rule->targets.begin(), rule->targets.end(), target->cls()) == rule->targets.end()) {
        out.push_back(make_error(ind.id(), "wrong target class: " + prop.name + " refers to " +
                                               target->class_name() + " " + quoted(target->id())));
      }
    }
  }
  for (const auto& rule : table) {
    const Property* prop = ind.find(rule.name);
    const std::size_t n = prop ? prop->values.size() : 0;
    if (n < rule.min) {
      out.push_back(make_error(ind.id(), "missing " + std::string(rule.name)));
    } else if (n > rule.max) {
      out.push_back(make_error(ind.id(), std::string(rule.name) + " takes at most " + std::to_string(rule.max) +
                                             " value(s), found " + std::to_string(n)));
    }
  }
  if (ind.cls() == BC::conversion && !ind.find(kLeft) && !ind.find(kRight)) {
    out.push_back(make_error(ind.id(), "conversion has neither LEFT nor RIGHT participants"));
  }
}

}  // namespace

const char* to_string(BiopaxClass cls) {
  switch (cls) {
    case BC::physicalEntity: return "physicalEntity";
    case BC::physicalEntityParticipant: return "physicalEntityParticipant";
    case BC::conversion: return "conversion";
    case BC::control: return "control";
    case BC::pathway: return "pathway";
    case BC::openControlledVocabulary: return "openControlledVocabulary";
    case BC::opaque: return "opaque";
  }
  return "?";
}

std::optional<BiopaxClass> class_from_name(std::string_view name) {
  for (const auto cls : {BC::physicalEntity, BC::physicalEntityParticipant, BC::conversion, BC::control,
                         BC::pathway, BC::openControlledVocabulary}) {
    if (name == to_string(cls)) return cls;
  }
  return std::nullopt;
}

Individual::Individual(std::string id, BiopaxClass cls, std::string class_name)
    : id_(std::move(id)), cls_(cls), class_name_(std::move(class_name)) {
  if (class_name_.empty()) class_name_ = to_string(cls_);
}

const Property* Individual::find(std::string_view name) const {
  const auto it = std::find_if(properties_.begin(), properties_.end(),
                               [&](const Property& p) { return p.name == name; });
  return it == properties_.end() ? nullptr : &*it;
}

void Individual::add(std::string_view name, PropertyValue value) {
  auto it = std::find_if(properties_.begin(), properties_.end(),
                         [&](const Property& p) { return p.name == name; });
  if (it == properties_.end()) {
    properties_.push_back(Property{std::string(name), {}});
    it = std::prev(properties_.end());
  }
  it->values.push_back(std::move(value));
}

bool Individual::operator==(const Individual& other) const {
  if (id_ != other.id_ || cls_ != other.cls_ || class_name_ != other.class_name_ ||
      properties_.size() != other.properties_.size()) {
    return false;
  }
  const auto a = sorted(properties_);
  const auto b = sorted(other.properties_);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(*a[i] == *b[i])) return false;
  }
  return true;
}

Individual& BiopaxGraph::add(Individual individual) {
  if (individual.id().empty()) throw FormatError("individual without an id");
  if (index_.contains(individual.id())) {
    throw FormatError("duplicate individual id " + quoted(individual.id()));
  }
  index_.emplace(individual.id(), individuals_.size());
  individuals_.push_back(std::move(individual));
  return individuals_.back();
}

const Individual* BiopaxGraph::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &individuals_[it->second];
}

Individual* BiopaxGraph::find_mutable(std::string_view id) {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &individuals_[it->second];
}

std::size_t BiopaxGraph::count(BiopaxClass cls) const {
  return static_cast<std::size_t>(std::count_if(individuals_.begin(), individuals_.end(),
                                                [&](const Individual& i) { return i.cls() == cls; }));
}

bool BiopaxGraph::same_individuals(const BiopaxGraph& other) const {
  if (individuals_.size() != other.individuals_.size()) return false;
  for (const auto& ind : individuals_) {
    const Individual* peer = other.find(ind.id());
    if (!peer || !(*peer == ind)) return false;
  }
  return true;
}

Diagnostics validate_graph(const BiopaxGraph& graph) {
  Diagnostics out;
  for (const auto& ind : graph.individuals()) {
    for (const auto& prop : ind.properties()) {
      for (const auto& v : prop.values) {
        if (v.is_ref() && !graph.find(v.text)) {
          out.push_back(make_error(ind.id(), "dangling reference " + prop.name + " -> " + quoted(v.text)));
        }
      }
    }
    if (ind.cls() != BC::opaque) validate_individual(graph, ind, out);
  }
  return out;
}

std::vector<Attribute> attributes(const BiopaxGraph& graph, std::string_view id) {
  const Individual* ind = graph.find(id);
  if (!ind) throw LookupError("unknown individual " + quoted(id));
  std::vector<Attribute> out;
  out.push_back(Attribute{"type", {ind->class_name()}});
  for (const auto& prop : ind->properties()) {
    Attribute a{prop.name, {}};
    for (const auto& v : prop.values) a.values.push_back(v.text);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<std::string> participants(const BiopaxGraph& graph, std::string_view interaction, Side side) {
  const Individual* ind = graph.find(interaction);
  if (!ind) throw LookupError("unknown individual " + quoted(interaction));

  std::string_view property;
  if (side == Side::controller) {
    if (ind->cls() != BC::control) {
      throw LookupError(quoted(interaction) + " is a " + ind->class_name() + ", not a control");
    }
    property = kController;
  } else {
    if (ind->cls() != BC::conversion) {
      throw LookupError(quoted(interaction) + " is a " + ind->class_name() + ", not a conversion");
    }
    property = side == Side::left ? kLeft : kRight;
  }

  std::vector<std::string> out;
  const Property* prop = ind->find(property);
  if (!prop) return out;
  for (const auto& v : prop->values) {
    const Individual* participant = graph.find(v.text);
    if (!participant) throw LookupError("dangling participant " + quoted(v.text));
    const Property* entity = participant->find(kPhysicalEntity);
    if (!entity || entity->values.empty()) {
      throw LookupError("participant " + quoted(v.text) + " has no PHYSICAL-ENTITY");
    }
    out.push_back(entity->values.front().text);
  }
  return out;
}

}  // namespace pathweave::biopax
