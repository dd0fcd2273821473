#include "pathweave/graph_export.hpp"

#include "pathweave/errors.hpp"

namespace pathweave::dot {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string export_dot(const sbml::SbmlModel& model) {
  if (auto findings = sbml::validate(model); has_errors(findings)) {
    throw ValidationError(std::move(findings));
  }
  auto label = [](const std::string& name, const std::string& id) { return quote(name.empty() ? id : name); };

  std::string out = "digraph {\n";
  for (const auto& s : model.species) {
    out += "  " + quote(s.id) + " [shape=ellipse, label=" + label(s.name, s.id) + "];\n";
  }
  for (const auto& r : model.reactions) {
    out += "  " + quote(r.id) + " [shape=box, label=" + label(r.name, r.id) + "];\n";
  }
  for (const auto& r : model.reactions) {
    const std::string rid = quote(r.id);
    for (const auto& ref : r.reactants) out += "  " + quote(ref.species) + " -> " + rid + " [style=solid];\n";
    for (const auto& ref : r.products) out += "  " + rid + " -> " + quote(ref.species) + " [style=solid];\n";
    for (const auto& m : r.modifiers) out += "  " + quote(m) + " -> " + rid + " [style=dashed];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace pathweave::dot
