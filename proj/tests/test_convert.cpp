#include <doctest.h>

#include <algorithm>
#include <set>

#include "generators.hpp"
#include "pathweave/biopax_io.hpp"
#include "pathweave/convert.hpp"
#include "pathweave/errors.hpp"
#include "pathweave/sbml_io.hpp"
#include "support.hpp"

using namespace pathweave;
using namespace pathweave::biopax;
using convert::conversion_report;
using convert::sbml_to_biopax;

namespace {

sbml::SbmlModel appendix() { return sbml::parse_sbml(testing::read_data(testing::kAppendixSbml)); }

sbml::SbmlModel chain() {
  sbml::SbmlModel m;
  m.id = "chain";
  m.compartments.push_back({"c", "cytosol", 1.0, "", "", {}});
  for (const char* id : {"A", "B", "E"}) {
    sbml::Species s;
    s.id = id;
    s.name = std::string("species ") + id;
    s.compartment = "c";
    m.species.push_back(s);
  }
  sbml::Reaction r;
  r.id = "rx";
  r.name = "A to B";
  r.reversible = false;
  r.reactants.push_back({"A", 1.0});
  r.products.push_back({"B", 1.0});
  r.modifiers.push_back("E");
  r.kinetic_law = sbml::KineticLaw{mathml::MathExpr::variable("A"), {}, "", ""};
  m.reactions.push_back(r);
  return m;
}

std::size_t participant_count(const sbml::SbmlModel& m) {
  std::size_t n = 0;
  for (const auto& r : m.reactions) {
    auto distinct = [](const std::vector<sbml::SpeciesRef>& refs) {
      std::set<std::string> s;
      for (const auto& x : refs) s.insert(x.species);
      return s.size();
    };
    n += distinct(r.reactants) + distinct(r.products) +
         std::set<std::string>(r.modifiers.begin(), r.modifiers.end()).size();
  }
  return n;
}

}  // namespace

TEST_CASE("appendix SBML converts to the appendix BioPAX graph") {
  const auto converted = sbml_to_biopax(appendix(), "http://www.ebi.ac.uk/biomodels/biopax");
  const auto expected = parse_biopax(testing::read_data(testing::kAppendixBiopax));
  CHECK(converted == expected);
  CHECK(sbml_to_biopax(appendix()).same_individuals(expected));
  CHECK(validate_graph(converted).empty());
}

TEST_CASE("mapping rules on a hand-built reaction") {
  const auto g = sbml_to_biopax(chain());
  CHECK(g.size() == 1 + 3 + 1 + 2 + 1 + 1);
  CHECK(attributes(g, "conversion_rx") ==
        std::vector<Attribute>{{"type", {"conversion"}}, {"NAME", {"A to B"}}, {"LEFT", {"rx_LEFT_A"}}, {"RIGHT", {"rx_RIGHT_B"}}});
  CHECK(attributes(g, "control_rx") ==
        std::vector<Attribute>{{"type", {"control"}}, {"CONTROLLER", {"rx_CONTROLLER_E"}}, {"CONTROLLED", {"conversion_rx"}}});
  CHECK(attributes(g, "rx_CONTROLLER_E") == std::vector<Attribute>{{"type", {"physicalEntityParticipant"}},
                                                                    {"PHYSICAL-ENTITY", {"E"}},
                                                                    {"CELLULAR-LOCATION", {"c"}}});
  CHECK(attributes(g, "c") == std::vector<Attribute>{{"type", {"openControlledVocabulary"}}, {"TERM", {"cytosol"}}});
  CHECK(attributes(g, "A") == std::vector<Attribute>{{"type", {"physicalEntity"}}, {"NAME", {"species A"}}});
}

TEST_CASE("empty model converts to an empty graph") {
  sbml::SbmlModel m;
  m.id = "m";
  CHECK(sbml_to_biopax(m).size() == 0);
  CHECK(conversion_report(m).empty());
}

TEST_CASE("unnamed objects fall back to their ids") {
  auto m = chain();
  m.species[0].name.clear();
  m.compartments[0].name.clear();
  m.reactions[0].name.clear();
  const auto g = sbml_to_biopax(m);
  CHECK(g.find("A")->find(kName)->values[0].text == "A");
  CHECK(g.find("c")->find(kTerm)->values[0].text == "c");
  CHECK(g.find("conversion_rx")->find(kName)->values[0].text == "rx");
}

TEST_CASE("invalid models are refused") {
  auto m = chain();
  m.reactions[0].products[0].species = "nowhere";
  CHECK_THROWS_AS(sbml_to_biopax(m), ValidationError);
}

TEST_CASE("generated id collisions are format errors") {
  auto m = chain();
  m.species[1].id = "conversion_rx";
  m.reactions[0].products[0].species = "conversion_rx";
  CHECK_THROWS_AS(sbml_to_biopax(m), FormatError);
}

TEST_CASE("conversion report on the appendix") {
  const auto report = conversion_report(appendix());
  REQUIRE(report.size() == 3);
  for (const auto& d : report) CHECK(d.severity == Severity::warning);
  CHECK(report[0].message == "dropped 7 kinetic law(s)");
  CHECK(report[1].message == "dropped 15 parameter(s) (5 global, 10 local)");
  CHECK(report[2].message == "dropped 2 assignment rule(s)");
}

TEST_CASE("conversion report on a species-only model is empty") {
  auto m = chain();
  m.reactions.clear();
  CHECK(conversion_report(m).empty());
}

TEST_CASE("reversible reactions and stoichiometry are reported") {
  auto m = chain();
  m.reactions[0].reversible = true;
  m.reactions[0].products[0].stoichiometry = 2;
  const auto report = conversion_report(m);
  CHECK(std::count_if(report.begin(), report.end(), [](const Diagnostic& d) { return d.subject == "rx"; }) == 2);
  const auto g = sbml_to_biopax(m);
  CHECK(participants(g, "conversion_rx", Side::left) == std::vector<std::string>{"A"});
  CHECK(participants(g, "conversion_rx", Side::right) == std::vector<std::string>{"B"});
}

TEST_CASE("repeated species on one side yields one participant") {
  auto m = chain();
  m.reactions[0].reactants.push_back({"A", 1.0});
  const auto g = sbml_to_biopax(m);
  CHECK(participants(g, "conversion_rx", Side::left) == std::vector<std::string>{"A"});
  CHECK_FALSE(conversion_report(m).empty());
}

TEST_CASE("multiple modifiers share one control") {
  auto m = chain();
  m.reactions[0].modifiers.push_back("A");
  const auto g = sbml_to_biopax(m);
  CHECK(g.count(BiopaxClass::control) == 1);
  CHECK(participants(g, "control_rx", Side::controller) == std::vector<std::string>{"E", "A"});
  CHECK(validate_graph(g).empty());
}

TEST_CASE("properties on generated models") {
  testing::Rng rng(2024);
  for (int i = 0; i < 250; ++i) {
    const auto m = testing::random_model(rng);
    REQUIRE(sbml::validate(m).size() == static_cast<std::size_t>(std::count_if(
                                            m.reactions.begin(), m.reactions.end(),
                                            [](const sbml::Reaction& r) { return !r.kinetic_law; })));
    const auto g = sbml_to_biopax(m);
    CHECK(validate_graph(g).empty());
    CHECK(g.count(BiopaxClass::physicalEntity) == m.species.size());
    CHECK(g.count(BiopaxClass::conversion) == m.reactions.size());
    CHECK(g.count(BiopaxClass::control) ==
          static_cast<std::size_t>(std::count_if(m.reactions.begin(), m.reactions.end(),
                                                 [](const sbml::Reaction& r) { return !r.modifiers.empty(); })));
    CHECK(g.count(BiopaxClass::physicalEntityParticipant) == participant_count(m));
    for (const auto& r : m.reactions) {
      std::set<std::string> reactants;
      for (const auto& ref : r.reactants) reactants.insert(ref.species);
      const auto left = participants(g, "conversion_" + r.id, Side::left);
      CHECK(std::set<std::string>(left.begin(), left.end()) == reactants);
      CHECK(left.size() == reactants.size());
    }
    CHECK(sbml_to_biopax(m) == g);
  }
}
