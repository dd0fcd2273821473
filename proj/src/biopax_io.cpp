#include "pathweave/biopax_io.hpp"

#include <map>
#include <set>

#include "pathweave/errors.hpp"
#include "pathweave/xml.hpp"

namespace pathweave::biopax {

namespace {

using xml::Element;

std::string at_line(const Element& el, const std::string& message) {
  return "line " + std::to_string(el.line) + ": " + message;
}

class Reader {
 public:
  explicit Reader(Diagnostics* warnings) : warnings_(warnings) {}

  BiopaxGraph read(const Element& root) {
    if (!root.is(kRdfNamespace, "RDF")) {
      throw FormatError("not an RDF/XML document: missing rdf:RDF root (found <" + root.qname + ">)");
    }
    if (const auto* base = root.find_attribute(xml::kXmlNamespace, "base")) {
      graph_.set_base_uri(base->value);
    }
    for (const auto& child : root.children) {
      if (child.is(kOwlNamespace, "Ontology")) continue;
      if (child.ns == kBiopaxNamespace) {
        read_individual(child);
      } else if (child.ns == kRdfNamespace) {
        throw FormatError(at_line(child, "unsupported RDF construct <" + child.qname + ">"));
      } else {
        warn("", at_line(child, "skipping non-BioPAX element <" + child.qname + ">"));
      }
    }
    check_references();
    return std::move(graph_);
  }

 private:
  void warn(const std::string& subject, const std::string& message) {
    if (warnings_) warnings_->push_back(make_warning(subject, message));
  }

  static void reject_rdf_attributes(const Element& el, std::initializer_list<std::string_view> names) {
    for (const auto name : names) {
      if (el.find_attribute(kRdfNamespace, name)) {
        throw FormatError(at_line(el, "rdf:" + std::string(name) + " is not supported"));
      }
    }
  }

  // Maps an rdf:about / rdf:resource URI reference to a local id.
  std::optional<std::string> local_id(std::string_view uri) const {
    if (uri.starts_with('#')) return std::string(uri.substr(1));
    const std::string& base = graph_.base_uri();
    if (!base.empty() && uri.size() > base.size() + 1 && uri.starts_with(base) && uri[base.size()] == '#') {
      return std::string(uri.substr(base.size() + 1));
    }
    return std::nullopt;
  }

  std::string individual_id(const Element& el) const {
    reject_rdf_attributes(el, {"nodeID"});
    if (const auto* id = el.find_attribute(kRdfNamespace, "ID")) return id->value;
    if (const auto* about = el.find_attribute(kRdfNamespace, "about")) {
      if (auto id = local_id(about->value)) return *id;
      throw FormatError(at_line(el, "rdf:about '" + about->value + "' is outside the document base"));
    }
    throw FormatError(at_line(el, "<" + el.qname + "> has neither rdf:ID nor rdf:about"));
  }

  std::string read_individual(const Element& el) {
    const std::string id = individual_id(el);
    BiopaxClass cls = BiopaxClass::opaque;
    if (const auto known = class_from_name(el.local)) {
      cls = *known;
    } else {
      warn(id, at_line(el, "unsupported BioPAX class bp:" + el.local + " kept as an opaque individual"));
    }
    if (!xml::is_blank(el.text)) {
      throw FormatError(at_line(el, "unexpected text inside <" + el.qname + ">"));
    }
    Individual ind(id, cls, el.local);
    for (const auto& prop : el.children) {
      if (prop.ns != kBiopaxNamespace) {
        warn(id, at_line(prop, "skipping non-BioPAX property <" + prop.qname + ">"));
        continue;
      }
      ind.add(prop.local, read_value(prop));
    }
    try {
      graph_.add(std::move(ind));
    } catch (const FormatError& e) {
      throw FormatError(at_line(el, e.what()));
    }
    return id;
  }

  PropertyValue read_value(const Element& prop) {
    reject_rdf_attributes(prop, {"nodeID", "parseType", "ID", "bagID"});
    const auto* resource = prop.find_attribute(kRdfNamespace, "resource");
    if (resource) {
      if (!prop.children.empty() || !xml::is_blank(prop.text)) {
        throw FormatError(at_line(prop, "<" + prop.qname + "> has both rdf:resource and content"));
      }
      auto id = local_id(resource->value);
      if (!id) throw ReferenceError(at_line(prop, "unresolved rdf:resource '" + resource->value + "'"), resource->value);
      pending_.emplace_back(*id, prop.line);
      return PropertyValue::ref(std::move(*id));
    }
    if (prop.children.empty()) {
      return PropertyValue::literal(prop.text);
    }
    if (prop.children.size() != 1 || !xml::is_blank(prop.text)) {
      throw FormatError(at_line(prop, "<" + prop.qname + "> must contain a single nested individual"));
    }
    const Element& nested = prop.children.front();
    if (nested.ns != kBiopaxNamespace) {
      throw FormatError(at_line(nested, "unsupported nested element <" + nested.qname + ">"));
    }
    return PropertyValue::ref(read_individual(nested));
  }

  void check_references() const {
    for (const auto& [id, line] : pending_) {
      if (!graph_.find(id)) {
        throw ReferenceError("line " + std::to_string(line) + ": unresolved reference '#" + id + "'", id);
      }
    }
  }

  Diagnostics* warnings_;
  BiopaxGraph graph_;
  std::vector<std::pair<std::string, std::size_t>> pending_;
};

class Writer {
 public:
  explicit Writer(const BiopaxGraph& g) : g_(g) {
    std::map<std::string, std::size_t> incoming;
    std::map<std::string, std::string> referrer;
    for (const auto& ind : g_.individuals()) {
      for (const auto& prop : ind.properties()) {
        for (const auto& v : prop.values) {
          if (!v.is_ref()) continue;
          ++incoming[v.text];
          referrer[v.text] = ind.id();
        }
      }
    }
    for (const auto& ind : g_.individuals()) {
      if (ind.cls() != BiopaxClass::physicalEntityParticipant || incoming[ind.id()] != 1) continue;
      const Individual* owner = g_.find(referrer[ind.id()]);
      if (owner && (owner->cls() == BiopaxClass::conversion || owner->cls() == BiopaxClass::control)) {
        inline_.insert(ind.id());
      }
    }
  }

  std::string write() {
    out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<rdf:RDF xmlns:rdf=\"" + std::string(kRdfNamespace) + "\"";
    out_ += " xmlns:owl=\"" + std::string(kOwlNamespace) + "\"";
    out_ += " xmlns:bp=\"" + std::string(kBiopaxNamespace) + "\"";
    if (!g_.base_uri().empty()) out_ += " xml:base=\"" + xml::escape_attribute(g_.base_uri()) + "\"";
    out_ += ">\n";
    out_ += "  <owl:Ontology rdf:about=\"\">\n";
    out_ += "    <owl:imports rdf:resource=\"" + std::string(kBiopaxOntology) + "\"/>\n";
    out_ += "  </owl:Ontology>\n";
    for (const auto& ind : g_.individuals()) {
      if (!inline_.contains(ind.id())) write_individual(ind, 1);
    }
    out_ += "</rdf:RDF>\n";
    return std::move(out_);
  }

 private:
  void indent(int level) { out_.append(static_cast<std::size_t>(level) * 2, ' '); }

  void write_individual(const Individual& ind, int level) {
    indent(level);
    out_ += "<bp:" + ind.class_name() + " rdf:ID=\"" + xml::escape_attribute(ind.id()) + "\"";
    if (ind.properties().empty()) {
      out_ += "/>\n";
      return;
    }
    out_ += ">\n";
    for (const auto& prop : ind.properties()) {
      for (const auto& v : prop.values) write_value(prop.name, v, level + 1);
    }
    indent(level);
    out_ += "</bp:" + ind.class_name() + ">\n";
  }

  void write_value(const std::string& name, const PropertyValue& v, int level) {
    indent(level);
    if (!v.is_ref()) {
      out_ += "<bp:" + name + ">" + xml::escape_text(v.text) + "</bp:" + name + ">\n";
    } else if (inline_.contains(v.text)) {
      out_ += "<bp:" + name + ">\n";
      write_individual(*g_.find(v.text), level + 1);
      indent(level);
      out_ += "</bp:" + name + ">\n";
    } else {
      out_ += "<bp:" + name + " rdf:resource=\"#" + xml::escape_attribute(v.text) + "\"/>\n";
    }
  }

  const BiopaxGraph& g_;
  std::set<std::string> inline_;
  std::string out_;
};

}  // namespace

BiopaxGraph read_biopax(std::string_view document, Diagnostics* warnings) {
  const Element root = xml::parse(document);
  return Reader(warnings).read(root);
}

BiopaxGraph parse_biopax(std::string_view document, Diagnostics* warnings) {
  BiopaxGraph graph = read_biopax(document, warnings);
  Diagnostics findings = validate_graph(graph);
  if (has_errors(findings)) throw ValidationError(std::move(findings));
  return graph;
}

std::string serialize_biopax(const BiopaxGraph& graph) { return Writer(graph).write(); }

}  // namespace pathweave::biopax
