#pragma once

// BioPAX Level 2 individual/property graph restricted to the classes used
// by pathway exports: physicalEntity, physicalEntityParticipant,
// conversion, control, pathway and openControlledVocabulary.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pathweave/diagnostic.hpp"

namespace pathweave::biopax {

enum class BiopaxClass {
  physicalEntity,
  physicalEntityParticipant,
  conversion,
  control,
  pathway,
  openControlledVocabulary,
  opaque,  // any other bp: class; kept but not validated
};

/// BioPAX local name of a modeled class ("conversion", ...).
const char* to_string(BiopaxClass cls);
std::optional<BiopaxClass> class_from_name(std::string_view name);

// Property names.
inline constexpr std::string_view kName = "NAME";
inline constexpr std::string_view kTerm = "TERM";
inline constexpr std::string_view kPhysicalEntity = "PHYSICAL-ENTITY";
inline constexpr std::string_view kCellularLocation = "CELLULAR-LOCATION";
inline constexpr std::string_view kLeft = "LEFT";
inline constexpr std::string_view kRight = "RIGHT";
inline constexpr std::string_view kController = "CONTROLLER";
inline constexpr std::string_view kControlled = "CONTROLLED";
inline constexpr std::string_view kPathwayComponents = "PATHWAY-COMPONENTS";

struct PropertyValue {
  enum class Kind { literal, ref };
  Kind kind = Kind::literal;
  std::string text;  // literal text, or the referenced individual id

  static PropertyValue literal(std::string s) { return {Kind::literal, std::move(s)}; }
  static PropertyValue ref(std::string id) { return {Kind::ref, std::move(id)}; }
  bool is_ref() const noexcept { return kind == Kind::ref; }
  bool operator==(const PropertyValue&) const = default;
};

struct Property {
  std::string name;
  std::vector<PropertyValue> values;  // document order
  bool operator==(const Property&) const = default;
};

class Individual {
 public:
  Individual() = default;
  Individual(std::string id, BiopaxClass cls, std::string class_name = {});

  const std::string& id() const noexcept { return id_; }
  BiopaxClass cls() const noexcept { return cls_; }
  /// The bp: local name; equals to_string(cls()) for modeled classes.
  const std::string& class_name() const noexcept { return class_name_; }

  /// Properties in first-appearance order.
  const std::vector<Property>& properties() const noexcept { return properties_; }
  const Property* find(std::string_view name) const;

  void add(std::string_view name, PropertyValue value);
  void add_literal(std::string_view name, std::string text) { add(name, PropertyValue::literal(std::move(text))); }
  void add_ref(std::string_view name, std::string id) { add(name, PropertyValue::ref(std::move(id))); }

  /// Property order is not significant; value order within a property is.
  bool operator==(const Individual& other) const;

 private:
  std::string id_;
  BiopaxClass cls_ = BiopaxClass::opaque;
  std::string class_name_;
  std::vector<Property> properties_;
};

class BiopaxGraph {
 public:
  BiopaxGraph() = default;
  explicit BiopaxGraph(std::string base_uri) : base_uri_(std::move(base_uri)) {}

  const std::string& base_uri() const noexcept { return base_uri_; }
  void set_base_uri(std::string uri) { base_uri_ = std::move(uri); }

  /// Throws FormatError on a duplicate id.
  Individual& add(Individual individual);

  const Individual* find(std::string_view id) const;
  Individual* find_mutable(std::string_view id);

  /// Individuals in insertion order.
  const std::vector<Individual>& individuals() const noexcept { return individuals_; }
  std::size_t size() const noexcept { return individuals_.size(); }
  std::size_t count(BiopaxClass cls) const;

  /// Same individuals regardless of insertion order; base URI ignored.
  bool same_individuals(const BiopaxGraph& other) const;

  bool operator==(const BiopaxGraph& other) const {
    return base_uri_ == other.base_uri_ && same_individuals(other);
  }

 private:
  std::string base_uri_;
  std::vector<Individual> individuals_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Class, arity and reference checks; empty iff the graph is valid.
Diagnostics validate_graph(const BiopaxGraph& graph);

struct Attribute {
  std::string key;
  std::vector<std::string> values;
  bool operator==(const Attribute&) const = default;
};

/// `type` first, then every property in document order; reference values
/// are given as the target id. Throws LookupError for an unknown id.
std::vector<Attribute> attributes(const BiopaxGraph& graph, std::string_view id);

enum class Side { left, right, controller };

/// Physical entities behind the participants on `side` of a conversion
/// (left/right) or control (controller). Throws LookupError for an unknown
/// id or a side that does not apply to the individual's class.
std::vector<std::string> participants(const BiopaxGraph& graph, std::string_view interaction, Side side);

}  // namespace pathweave::biopax
