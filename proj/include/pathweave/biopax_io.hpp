#pragma once

#include <string>
#include <string_view>

#include "pathweave/biopax_model.hpp"
#include "pathweave/diagnostic.hpp"

namespace pathweave::biopax {

inline constexpr std::string_view kRdfNamespace = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kOwlNamespace = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kBiopaxNamespace = "http://www.biopax.org/release/biopax-level2.owl#";
inline constexpr std::string_view kBiopaxOntology = "http://www.biopax.org/release/biopax-level2.owl";

/// Reads the RDF/XML idioms used by BioPAX exports: typed node elements
/// with rdf:ID or rdf:about, literal and rdf:resource property elements,
/// and typed nodes nested inside property elements. Does not run
/// validate_graph. Throws SyntaxError, FormatError (missing rdf:RDF root,
/// rdf:nodeID, containers, rdf:Description, ...), and ReferenceError for
/// an rdf:resource that names no individual.
BiopaxGraph read_biopax(std::string_view document, Diagnostics* warnings = nullptr);

/// read_biopax followed by validate_graph; throws ValidationError when the
/// graph violates the class constraints.
BiopaxGraph parse_biopax(std::string_view document, Diagnostics* warnings = nullptr);

/// Emits the owl:Ontology header importing the Level 2 ontology. A
/// participant referenced exactly once is written inline inside the
/// referring property; every other individual is written at top level.
std::string serialize_biopax(const BiopaxGraph& graph);

}  // namespace pathweave::biopax
