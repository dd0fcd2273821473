#include <doctest.h>

#include <algorithm>

#include "pathweave/errors.hpp"
#include "pathweave/sbml_io.hpp"
#include "pathweave/sbml_model.hpp"
#include "support.hpp"

using namespace pathweave;
using namespace pathweave::sbml;

namespace {

SbmlModel appendix() { return parse_sbml(testing::read_data(testing::kAppendixSbml)); }

std::string wrap(const std::string& model_body) {
  return "<sbml xmlns=\"http://www.sbml.org/sbml/level2\" level=\"2\" version=\"1\"><model id=\"m\">" + model_body +
         "</model></sbml>";
}

bool mentions(const Diagnostics& ds, const std::string& text) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.message.find(text) != std::string::npos; });
}

}  // namespace

TEST_CASE("appendix model structure") {
  const auto m = appendix();
  CHECK(m.id == "GMO");
  CHECK(m.name == "Goldbeter1991_MinMitOscil");
  CHECK(m.metaid == "_180340");
  CHECK(m.document_metaid == "_180324");
  REQUIRE(m.compartments.size() == 1);
  CHECK(m.compartments[0].id == "cell");
  CHECK(m.compartments[0].size == 1.0);
  CHECK(m.compartments[0].units == "volume");
  REQUIRE(m.species.size() == 3);
  CHECK(m.species[0].name == "Cyclin");
  CHECK(m.species[1].name == "CDC-2 Kinase");
  CHECK(m.species[2].name == "Cyclin Protease");
  for (const auto& s : m.species) {
    CHECK(s.initial_concentration == 0.01);
    CHECK(s.compartment == "cell");
    CHECK(s.spatial_size_units == "volume");
  }
  CHECK(m.species[0].annotation.has_value());
  CHECK_FALSE(m.species[2].annotation.has_value());
  CHECK(m.parameters.size() == 5);
  CHECK(m.rules.size() == 2);
  REQUIRE(m.reactions.size() == 7);
  for (const auto& r : m.reactions) {
    CHECK_FALSE(r.reversible);
    REQUIRE(r.kinetic_law.has_value());
  }
  const auto* r3 = m.find_reaction("reaction3");
  REQUIRE(r3);
  CHECK(r3->reactants == std::vector<SpeciesRef>{{"C", 1.0}});
  CHECK(r3->products.empty());
  CHECK(r3->modifiers == std::vector<std::string>{"X"});
  CHECK(m.notes.has_value());
  CHECK(m.annotation.has_value());
}

TEST_CASE("appendix validates clean") { CHECK(validate(appendix()).empty()); }

TEST_CASE("dangling species reference yields one error naming it") {
  auto m = appendix();
  m.reactions[0].products[0].species = "Q";
  const auto ds = validate(m);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].severity == Severity::error);
  CHECK(ds[0].subject == "reaction1");
  CHECK(ds[0].message.find("'Q'") != std::string::npos);
}

TEST_CASE("removing rule1 leaves V1 unresolvable") {
  auto m = appendix();
  m.rules.erase(m.rules.begin());
  const auto ds = validate(m);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].message == "unresolvable parameter V1");
}

TEST_CASE("validation covers the model invariants") {
  auto base = appendix();
  {
    auto m = base;
    m.species[1].id = "C";
    CHECK(mentions(validate(m), "duplicate"));
  }
  {
    auto m = base;
    m.reactions[0].id = "cell";
    CHECK(mentions(validate(m), "duplicate"));
  }
  {
    auto m = base;
    m.compartments[0].size = 0;
    CHECK(has_errors(validate(m)));
  }
  {
    auto m = base;
    m.species[0].compartment = "nucleus";
    CHECK(mentions(validate(m), "nucleus"));
  }
  {
    auto m = base;
    m.species[0].initial_concentration = -1;
    CHECK(has_errors(validate(m)));
  }
  {
    auto m = base;
    auto vm1 = std::find_if(m.parameters.begin(), m.parameters.end(), [](const Parameter& p) { return p.id == "VM1"; });
    vm1->value.reset();  // VM1 is constant
    CHECK(has_errors(validate(m)));
  }
  {
    auto m = base;
    m.rules[0].variable = "VM1";  // constant target
    CHECK(has_errors(validate(m)));
  }
  {
    auto m = base;
    m.rules.push_back(m.rules[0]);  // second rule for V1
    CHECK(has_errors(validate(m)));
  }
  {
    auto m = base;
    m.rules[0].math = mathml::MathExpr::variable("nowhere");
    CHECK(mentions(validate(m), "nowhere"));
  }
  {
    auto m = base;
    m.reactions[1].reactants[0].stoichiometry = 0;
    CHECK(has_errors(validate(m)));
  }
  {
    auto m = base;
    m.reactions[1].reactants.clear();
    CHECK(has_errors(validate(m)));
  }
  {
    auto m = base;
    m.reactions[2].modifiers[0] = "Z";
    CHECK(mentions(validate(m), "'Z'"));
  }
  {
    auto m = base;
    m.reactions[0].kinetic_law->local_parameters.push_back(m.reactions[0].kinetic_law->local_parameters[0]);
    CHECK(mentions(validate(m), "duplicate local"));
  }
  {
    auto m = base;
    m.reactions[0].kinetic_law->local_parameters.clear();  // vi now unresolved
    CHECK(mentions(validate(m), "vi"));
  }
  {
    auto m = base;
    m.reactions[0].kinetic_law.reset();
    const auto ds = validate(m);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].severity == Severity::warning);
  }
}

TEST_CASE("validate is idempotent") {
  auto m = appendix();
  m.reactions[0].products[0].species = "Q";
  m.compartments[0].size = -2;
  CHECK(validate(m) == validate(m));
}

TEST_CASE("symbol resolution") {
  const auto m = appendix();
  CHECK(resolve_symbol(m, "reaction5", "V2") == SymbolKind::local_parameter);
  CHECK(m.find_reaction("reaction5")->kinetic_law->find_local("V2")->value == 1.5);
  CHECK(resolve_symbol(m, "reaction1", "cell") == SymbolKind::compartment);
  CHECK(resolve_symbol(m, "reaction1", "V1") == SymbolKind::global_parameter);
  CHECK(resolve_symbol(m, "reaction1", "C") == SymbolKind::species);
  CHECK_THROWS_AS(resolve_symbol(m, "reaction1", "nope"), LookupError);
  CHECK_THROWS_AS(resolve_symbol(m, "reaction99", "C"), LookupError);
  // every free symbol of every law resolves
  for (const auto& r : m.reactions) {
    for (const auto& name : mathml::free_variables(r.kinetic_law->math)) {
      CHECK_NOTHROW(resolve_symbol(m, r.id, name));
    }
  }
}

TEST_CASE("local parameters shadow globals") {
  auto m = appendix();
  m.reactions[0].kinetic_law->local_parameters.push_back(Parameter{"VM1", "", 9.0, "", true});
  CHECK(validate(m).empty());
  CHECK(resolve_symbol(m, "reaction1", "VM1") == SymbolKind::local_parameter);
  CHECK(resolve_symbol(m, "reaction2", "VM1") == SymbolKind::global_parameter);
}

TEST_CASE("minimal document") {
  const auto m = parse_sbml(wrap(""));
  CHECK(m.id == "m");
  CHECK(m.species.empty());
  CHECK(m.reactions.empty());
}

TEST_CASE("format gate") {
  auto doc = testing::read_data(testing::kAppendixSbml);
  const auto pos = doc.find("sbml/level2");
  auto level1 = doc;
  level1.replace(pos, 11, "sbml/level1");
  CHECK_THROWS_AS(parse_sbml(level1), FormatError);
  CHECK_THROWS_AS(parse_sbml("<notsbml xmlns=\"http://www.sbml.org/sbml/level2\"/>"), FormatError);
  CHECK_THROWS_AS(parse_sbml("<sbml level=\"2\" version=\"1\"><model id=\"m\"/></sbml>"), FormatError);
  CHECK_THROWS_AS(
      parse_sbml("<sbml xmlns=\"http://www.sbml.org/sbml/level2\" level=\"2\" version=\"1\"><model id=\"m\">"
                 "<listOfCompartments><compartment id=\"c\" size=\"big\"/></listOfCompartments></model></sbml>"),
      FormatError);
}

TEST_CASE("syntax errors carry the line") {
  try {
    parse_sbml("<?xml version=\"1.0\"?>\n<sbml xmlns=\"http://www.sbml.org/sbml/level2\">\n<model id=\"m\">\n</sbml>");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("validation failures are aggregated") {
  try {
    parse_sbml(testing::read_data("dangling_species.sbml.xml"));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    REQUIRE(e.diagnostics().size() == 1);
    CHECK(e.diagnostics()[0].message.find("'Q'") != std::string::npos);
  }
}

TEST_CASE("defaults are applied at parse time") {
  const auto m = parse_sbml(wrap(
      "<listOfCompartments><compartment id=\"c\"/></listOfCompartments>"
      "<listOfSpecies><species id=\"A\" compartment=\"c\"/></listOfSpecies>"
      "<listOfParameters><parameter id=\"k\" value=\"2\"/></listOfParameters>"
      "<listOfReactions><reaction id=\"r\"><listOfReactants><speciesReference species=\"A\"/></listOfReactants>"
      "<kineticLaw><math xmlns=\"http://www.w3.org/1998/Math/MathML\"><ci>k</ci></math></kineticLaw>"
      "</reaction></listOfReactions>"));
  CHECK(m.compartments[0].size == 1.0);
  CHECK(m.species[0].initial_concentration == 0.0);
  CHECK_FALSE(m.species[0].boundary_condition);
  CHECK(m.parameters[0].constant);
  CHECK(m.reactions[0].reversible);
  CHECK_FALSE(m.reactions[0].fast);
  CHECK(m.reactions[0].reactants[0].stoichiometry == 1.0);
}

TEST_CASE("unknown elements are skipped with warnings") {
  Diagnostics warnings;
  const auto m = parse_sbml(wrap("<listOfEvents><event/></listOfEvents>"
                                 "<listOfCompartments><compartment id=\"c\" size=\"1\"/><vendorThing/></listOfCompartments>"),
                            &warnings);
  CHECK(m.compartments.size() == 1);
  CHECK(warnings.size() >= 2);
  CHECK_FALSE(has_errors(warnings));
}

TEST_CASE("math must be MathML-qualified inside SBML") {
  CHECK_THROWS_AS(parse_sbml(wrap("<listOfParameters><parameter id=\"v\" constant=\"false\"/></listOfParameters>"
                                  "<listOfRules><assignmentRule variable=\"v\"><math><cn>1</cn></math>"
                                  "</assignmentRule></listOfRules>")),
                  Error);
}

TEST_CASE("serialize: empty model") {
  const auto text = serialize_sbml(parse_sbml(wrap("")));
  CHECK(text.find("<model id=\"m\"/>") != std::string::npos);
  CHECK(text.find("listOf") == std::string::npos);
  CHECK(parse_sbml(text) == parse_sbml(wrap("")));
}

TEST_CASE("serialize: appendix round trip is a structural fixed point") {
  const auto m = appendix();
  const auto text = serialize_sbml(m);
  const auto again = parse_sbml(text);
  CHECK(again == m);
  CHECK(serialize_sbml(again) == text);
}

TEST_CASE("annotation bytes survive the round trip") {
  const auto m = appendix();
  const auto again = parse_sbml(serialize_sbml(m));
  REQUIRE(again.annotation);
  CHECK(again.annotation->bytes == m.annotation->bytes);
  CHECK(again.notes->bytes == m.notes->bytes);
  CHECK(again.species[0].annotation->bytes == m.species[0].annotation->bytes);
}

TEST_CASE("blob whose prefix is declared on an ancestor keeps its binding") {
  const std::string doc =
      "<sbml xmlns=\"http://www.sbml.org/sbml/level2\" xmlns:bq=\"urn:bq\" level=\"2\" version=\"1\">"
      "<model id=\"m\"><annotation><bq:is>x &amp; y</bq:is></annotation></model></sbml>";
  const auto m = parse_sbml(doc);
  REQUIRE(m.annotation);
  CHECK(m.annotation->bytes == "<bq:is>x &amp; y</bq:is>");
  CHECK(m.annotation->namespaces == xml::NamespaceMap{{"bq", "urn:bq"}});
  CHECK(parse_sbml(serialize_sbml(m)) == m);
}

TEST_CASE("serializer omits defaults and writes shortest numbers") {
  auto m = appendix();
  m.reactions[0].products[0].stoichiometry = 2.5;
  m.species[2].boundary_condition = true;
  const auto text = serialize_sbml(m);
  CHECK(text.find("stoichiometry=\"2.5\"") != std::string::npos);
  CHECK(text.find("stoichiometry=\"1\"") == std::string::npos);
  CHECK(text.find("boundaryCondition=\"true\"") != std::string::npos);
  CHECK(text.find("initialConcentration=\"0.01\"") != std::string::npos);
  CHECK(parse_sbml(text) == m);
}

TEST_CASE("repeated parses are equal") {
  const auto doc = testing::read_data(testing::kAppendixSbml);
  const auto copy = doc;
  CHECK(parse_sbml(doc) == parse_sbml(doc));
  CHECK(doc == copy);
}
