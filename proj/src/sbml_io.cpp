#include "pathweave/sbml_io.hpp"

#include <charconv>
#include <cmath>

#include "pathweave/errors.hpp"
#include "pathweave/xml.hpp"

namespace pathweave::sbml {

namespace {

using xml::Element;

std::string at_line(const Element& el, const std::string& message) {
  return "line " + std::to_string(el.line) + ": " + message;
}

class Reader {
 public:
  Reader(std::string_view source, Diagnostics* warnings) : source_(source), warnings_(warnings) {}

  SbmlModel read(const Element& root) {
    if (root.local != "sbml" || root.ns != kNamespace) {
      throw FormatError("not an SBML Level 2 document: root element <" + root.qname +
                        "> in namespace '" + root.ns + "'");
    }
    if (const auto level = root.attribute("level"); level && *level != "2") {
      throw FormatError("unsupported SBML level " + *level);
    }
    SbmlModel model;
    model.document_metaid = root.attribute("metaid").value_or("");
    if (const auto version = root.attribute("version")) {
      model.version = parse_int(root, "version", *version);
    }

    const Element* model_el = nullptr;
    for (const auto& child : root.children) {
      if (in_sbml(child) && child.local == "model") {
        if (model_el) throw FormatError(at_line(child, "more than one <model> element"));
        model_el = &child;
      } else {
        skip(child, "sbml");
      }
    }
    if (!model_el) throw FormatError("SBML document has no <model> element");
    read_model(*model_el, model);
    return model;
  }

 private:
  static bool in_sbml(const Element& el) { return el.ns == kNamespace; }

  void skip(const Element& el, const std::string& context) {
    if (warnings_) {
      warnings_->push_back(make_warning(context, at_line(el, "skipping unsupported element <" + el.qname + ">")));
    }
  }

  void warn(const std::string& subject, const std::string& message) {
    if (warnings_) warnings_->push_back(make_warning(subject, message));
  }

  XmlBlob blob(const Element& el) const {
    return XmlBlob{std::string(el.inner_xml(source_)), el.inherited_bindings()};
  }

  static double parse_double(const Element& el, const char* attr, std::string_view text) {
    const std::string_view t = xml::trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
      throw FormatError(at_line(el, "invalid number '" + std::string(text) + "' for attribute " + attr));
    }
    return v;
  }

  static int parse_int(const Element& el, const char* attr, std::string_view text) {
    const std::string_view t = xml::trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
      throw FormatError(at_line(el, "invalid integer '" + std::string(text) + "' for attribute " + attr));
    }
    return v;
  }

  static bool parse_bool(const Element& el, const char* attr, std::string_view text) {
    const std::string_view t = xml::trim(text);
    if (t == "true" || t == "1") return true;
    if (t == "false" || t == "0") return false;
    throw FormatError(at_line(el, "invalid boolean '" + std::string(text) + "' for attribute " + attr));
  }

  static std::optional<double> optional_double(const Element& el, const char* attr) {
    if (const auto v = el.attribute(attr)) return parse_double(el, attr, *v);
    return std::nullopt;
  }

  static bool optional_bool(const Element& el, const char* attr, bool fallback) {
    if (const auto v = el.attribute(attr)) return parse_bool(el, attr, *v);
    return fallback;
  }

  static std::string str(const Element& el, const char* attr) { return el.attribute(attr).value_or(""); }

  // Calls `fn` for each SBML child named `item`; warns about anything else.
  template <class Fn>
  void for_each_item(const Element& list, std::string_view item, Fn&& fn) {
    for (const auto& child : list.children) {
      if (in_sbml(child) && child.local == item) {
        fn(child);
      } else {
        skip(child, list.local);
      }
    }
  }

  void read_model(const Element& el, SbmlModel& model) {
    model.id = str(el, "id");
    model.name = str(el, "name");
    model.metaid = str(el, "metaid");
    for (const auto& child : el.children) {
      if (!in_sbml(child)) {
        skip(child, model.id);
        continue;
      }
      const std::string& n = child.local;
      if (n == "notes") {
        model.notes = blob(child);
      } else if (n == "annotation") {
        model.annotation = blob(child);
      } else if (n == "listOfCompartments") {
        for_each_item(child, "compartment", [&](const Element& c) { model.compartments.push_back(read_compartment(c)); });
      } else if (n == "listOfSpecies") {
        for_each_item(child, "species", [&](const Element& s) { model.species.push_back(read_species(s)); });
      } else if (n == "listOfParameters") {
        for_each_item(child, "parameter", [&](const Element& p) { model.parameters.push_back(read_parameter(p)); });
      } else if (n == "listOfRules") {
        for_each_item(child, "assignmentRule", [&](const Element& r) { model.rules.push_back(read_rule(r)); });
      } else if (n == "listOfReactions") {
        for_each_item(child, "reaction", [&](const Element& r) { model.reactions.push_back(read_reaction(r)); });
      } else {
        skip(child, model.id);
      }
    }
  }

  Compartment read_compartment(const Element& el) {
    Compartment c;
    c.id = str(el, "id");
    c.name = str(el, "name");
    c.units = str(el, "units");
    c.metaid = str(el, "metaid");
    if (const auto size = optional_double(el, "size")) {
      c.size = *size;
    } else {
      warn(c.id, "compartment has no size; assuming 1");
    }
    c.annotation = read_annotation(el, c.id);
    return c;
  }

  Species read_species(const Element& el) {
    Species s;
    s.id = str(el, "id");
    s.name = str(el, "name");
    s.compartment = str(el, "compartment");
    s.substance_units = str(el, "substanceUnits");
    s.spatial_size_units = str(el, "spatialSizeUnits");
    s.boundary_condition = optional_bool(el, "boundaryCondition", false);
    s.metaid = str(el, "metaid");
    if (const auto c = optional_double(el, "initialConcentration")) {
      s.initial_concentration = *c;
    } else {
      warn(s.id, "species has no initialConcentration; assuming 0");
    }
    s.annotation = read_annotation(el, s.id);
    return s;
  }

  static Parameter read_parameter(const Element& el) {
    Parameter p;
    p.id = str(el, "id");
    p.name = str(el, "name");
    p.value = optional_double(el, "value");
    p.units = str(el, "units");
    p.constant = optional_bool(el, "constant", true);
    return p;
  }

  // Only annotation is kept on list items; anything else is reported.
  std::optional<XmlBlob> read_annotation(const Element& el, const std::string& subject) {
    std::optional<XmlBlob> out;
    for (const auto& child : el.children) {
      if (in_sbml(child) && child.local == "annotation") {
        out = blob(child);
      } else {
        skip(child, subject);
      }
    }
    return out;
  }

  mathml::MathExpr read_math(const Element& parent) {
    const Element* math = nullptr;
    for (const auto& child : parent.children) {
      if (child.local == "math") math = &child;
    }
    if (!math) throw FormatError(at_line(parent, "<" + parent.local + "> has no <math> element"));
    if (math->ns != mathml::kNamespace) {
      throw FormatError(at_line(*math, "<math> must be in namespace " + std::string(mathml::kNamespace)));
    }
    return mathml::parse_mathml(*math);
  }

  AssignmentRule read_rule(const Element& el) {
    AssignmentRule r;
    r.variable = str(el, "variable");
    r.metaid = str(el, "metaid");
    r.math = read_math(el);
    return r;
  }

  Reaction read_reaction(const Element& el) {
    Reaction r;
    r.id = str(el, "id");
    r.name = str(el, "name");
    r.metaid = str(el, "metaid");
    r.reversible = optional_bool(el, "reversible", true);
    r.fast = optional_bool(el, "fast", false);
    for (const auto& child : el.children) {
      if (!in_sbml(child)) {
        skip(child, r.id);
        continue;
      }
      const std::string& n = child.local;
      if (n == "annotation") {
        r.annotation = blob(child);
      } else if (n == "listOfReactants") {
        for_each_item(child, "speciesReference", [&](const Element& s) { r.reactants.push_back(read_species_ref(s, r.id)); });
      } else if (n == "listOfProducts") {
        for_each_item(child, "speciesReference", [&](const Element& s) { r.products.push_back(read_species_ref(s, r.id)); });
      } else if (n == "listOfModifiers") {
        for_each_item(child, "modifierSpeciesReference", [&](const Element& s) { r.modifiers.push_back(str(s, "species")); });
      } else if (n == "kineticLaw") {
        r.kinetic_law = read_kinetic_law(child, r.id);
      } else {
        skip(child, r.id);
      }
    }
    return r;
  }

  SpeciesRef read_species_ref(const Element& el, const std::string& reaction) {
    SpeciesRef ref;
    ref.species = str(el, "species");
    if (const auto s = optional_double(el, "stoichiometry")) ref.stoichiometry = *s;
    for (const auto& child : el.children) skip(child, reaction);
    return ref;
  }

  KineticLaw read_kinetic_law(const Element& el, const std::string& reaction) {
    KineticLaw law;
    law.time_units = str(el, "timeUnits");
    law.substance_units = str(el, "substanceUnits");
    law.math = read_math(el);
    for (const auto& child : el.children) {
      if (child.local == "math") continue;
      if (in_sbml(child) && child.local == "listOfParameters") {
        for_each_item(child, "parameter", [&](const Element& p) { law.local_parameters.push_back(read_parameter(p)); });
      } else {
        skip(child, reaction);
      }
    }
    return law;
  }

  std::string_view source_;
  Diagnostics* warnings_;
};

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Writer {
 public:
  std::string write(const SbmlModel& m) {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<sbml xmlns=\"" + std::string(kNamespace) + "\"";
    attr("metaid", m.document_metaid);
    out_ += " level=\"2\" version=\"" + std::to_string(m.version) + "\">\n";

    const bool empty = !m.notes && !m.annotation && m.compartments.empty() && m.species.empty() &&
                       m.parameters.empty() && m.rules.empty() && m.reactions.empty();
    indent(1);
    out_ += "<model";
    attr("metaid", m.metaid);
    attr("id", m.id);
    attr("name", m.name);
    if (empty) {
      out_ += "/>\n";
    } else {
      out_ += ">\n";
      if (m.notes) write_blob("notes", *m.notes, 2);
      if (m.annotation) write_blob("annotation", *m.annotation, 2);
      write_list("listOfCompartments", m.compartments, 2, [&](const Compartment& c) { write_compartment(c); });
      write_list("listOfSpecies", m.species, 2, [&](const Species& s) { write_species(s); });
      write_list("listOfParameters", m.parameters, 2, [&](const Parameter& p) { write_parameter(p, 3); });
      write_list("listOfRules", m.rules, 2, [&](const AssignmentRule& r) { write_rule(r); });
      write_list("listOfReactions", m.reactions, 2, [&](const Reaction& r) { write_reaction(r); });
      indent(1);
      out_ += "</model>\n";
    }
    out_ += "</sbml>\n";
    return std::move(out_);
  }

 private:
  void indent(int level) { out_.append(static_cast<std::size_t>(level) * 2, ' '); }

  void attr(const char* name, const std::string& value) {
    if (value.empty()) return;
    out_ += ' ';
    out_ += name;
    out_ += "=\"" + xml::escape_attribute(value) + "\"";
  }

  void attr(const char* name, double value) { attr(name, number(value)); }

  void write_blob(const char* tag, const XmlBlob& b, int level) {
    indent(level);
    out_ += "<";
    out_ += tag;
    for (const auto& [prefix, uri] : b.namespaces) {
      out_ += " xmlns:" + prefix + "=\"" + xml::escape_attribute(uri) + "\"";
    }
    out_ += ">" + b.bytes + "</" + tag + ">\n";
  }

  template <class T, class Fn>
  void write_list(const char* tag, const std::vector<T>& items, int level, Fn&& fn) {
    if (items.empty()) return;
    indent(level);
    out_ += "<" + std::string(tag) + ">\n";
    for (const auto& item : items) fn(item);
    indent(level);
    out_ += "</" + std::string(tag) + ">\n";
  }

  // Closes an element that may carry an annotation child.
  void close_annotated(const char* tag, const std::optional<XmlBlob>& annotation, int level) {
    if (!annotation) {
      out_ += "/>\n";
      return;
    }
    out_ += ">\n";
    write_blob("annotation", *annotation, level + 1);
    indent(level);
    out_ += "</" + std::string(tag) + ">\n";
  }

  void write_compartment(const Compartment& c) {
    indent(3);
    out_ += "<compartment";
    attr("metaid", c.metaid);
    attr("id", c.id);
    attr("name", c.name);
    attr("size", c.size);
    attr("units", c.units);
    close_annotated("compartment", c.annotation, 3);
  }

  void write_species(const Species& s) {
    indent(3);
    out_ += "<species";
    attr("metaid", s.metaid);
    attr("id", s.id);
    attr("name", s.name);
    attr("compartment", s.compartment);
    attr("initialConcentration", s.initial_concentration);
    attr("substanceUnits", s.substance_units);
    attr("spatialSizeUnits", s.spatial_size_units);
    if (s.boundary_condition) out_ += " boundaryCondition=\"true\"";
    close_annotated("species", s.annotation, 3);
  }

  void write_parameter(const Parameter& p, int level) {
    indent(level);
    out_ += "<parameter";
    attr("id", p.id);
    attr("name", p.name);
    if (p.value) attr("value", *p.value);
    attr("units", p.units);
    if (!p.constant) out_ += " constant=\"false\"";
    out_ += "/>\n";
  }

  void write_math(const mathml::MathExpr& math, int level) {
    indent(level);
    out_ += mathml::serialize_math_element(math) + "\n";
  }

  void write_rule(const AssignmentRule& r) {
    indent(3);
    out_ += "<assignmentRule";
    attr("metaid", r.metaid);
    attr("variable", r.variable);
    out_ += ">\n";
    write_math(r.math, 4);
    indent(3);
    out_ += "</assignmentRule>\n";
  }

  void write_refs(const char* tag, const std::vector<SpeciesRef>& refs) {
    write_list(tag, refs, 4, [&](const SpeciesRef& ref) {
      indent(5);
      out_ += "<speciesReference";
      attr("species", ref.species);
      if (ref.stoichiometry != 1.0) attr("stoichiometry", ref.stoichiometry);
      out_ += "/>\n";
    });
  }

  void write_reaction(const Reaction& r) {
    indent(3);
    out_ += "<reaction";
    attr("metaid", r.metaid);
    attr("id", r.id);
    attr("name", r.name);
    out_ += r.reversible ? " reversible=\"true\"" : " reversible=\"false\"";
    out_ += r.fast ? " fast=\"true\"" : " fast=\"false\"";
    out_ += ">\n";
    if (r.annotation) write_blob("annotation", *r.annotation, 4);
    write_refs("listOfReactants", r.reactants);
    write_refs("listOfProducts", r.products);
    write_list("listOfModifiers", r.modifiers, 4, [&](const std::string& species) {
      indent(5);
      out_ += "<modifierSpeciesReference";
      attr("species", species);
      out_ += "/>\n";
    });
    if (r.kinetic_law) {
      const KineticLaw& law = *r.kinetic_law;
      indent(4);
      out_ += "<kineticLaw";
      attr("timeUnits", law.time_units);
      attr("substanceUnits", law.substance_units);
      out_ += ">\n";
      write_math(law.math, 5);
      write_list("listOfParameters", law.local_parameters, 5, [&](const Parameter& p) { write_parameter(p, 6); });
      indent(4);
      out_ += "</kineticLaw>\n";
    }
    indent(3);
    out_ += "</reaction>\n";
  }

  std::string out_;
};

}  // namespace

SbmlModel read_sbml(std::string_view document, Diagnostics* warnings) {
  const Element root = xml::parse(document);
  return Reader(document, warnings).read(root);
}

SbmlModel parse_sbml(std::string_view document, Diagnostics* warnings) {
  SbmlModel model = read_sbml(document, warnings);
  Diagnostics findings = validate(model);
  if (has_errors(findings)) throw ValidationError(std::move(findings));
  if (warnings) warnings->insert(warnings->end(), findings.begin(), findings.end());
  return model;
}

std::string serialize_sbml(const SbmlModel& model) { return Writer().write(model); }

}  // namespace pathweave::sbml
