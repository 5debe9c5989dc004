#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "owlport/class_expression.hpp"
#include "owlport/iri.hpp"

namespace owlport {

struct SubClassOf {
    ClassExpression sub;
    ClassExpression sup;
    friend bool operator==(const SubClassOf&, const SubClassOf&) = default;
};

// Operands are canonically sorted and distinct; at least two.
struct EquivalentClasses {
    std::vector<ClassExpression> exprs;
    friend bool operator==(const EquivalentClasses&, const EquivalentClasses&) = default;
};

struct SubPropertyOf {
    Iri sub;
    Iri sup;
    friend bool operator==(const SubPropertyOf&, const SubPropertyOf&) = default;
};

// chain[0] o chain[1] is a sub-property of sup.
struct PropertyChain {
    std::array<Iri, 2> chain;
    Iri sup;
    friend bool operator==(const PropertyChain&, const PropertyChain&) = default;
};

struct TransitiveProperty {
    Iri property;
    friend bool operator==(const TransitiveProperty&, const TransitiveProperty&) = default;
};

using Axiom = std::variant<SubClassOf, EquivalentClasses, SubPropertyOf, PropertyChain, TransitiveProperty>;

std::string to_functional(const Axiom& axiom);

// Builds an EquivalentClasses axiom with canonical operand order; returns
// nullopt when fewer than two distinct operands remain.
std::optional<Axiom> make_equivalence(std::vector<ClassExpression> exprs);

// A skipped construct or other non-fatal observation made while parsing.
struct Diagnostic {
    Iri document;
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

struct Ontology {
    Iri document_uri;
    std::optional<Iri> ontology_iri;
    std::vector<Axiom> axioms;
    // rdfs:label of classes (and any non-property entity).
    std::map<Iri, std::string> labels;
    // IAO_0000115 text definitions.
    std::map<Iri, std::string> definitions;
    std::map<Iri, std::string> property_labels;
    // Direct imports as written in this document.
    std::vector<Iri> imports;
    // Documents merged by resolve_imports, in visit order (empty before resolution).
    std::vector<Iri> import_closure;
    std::set<Iri> classes;
    std::set<Iri> properties;
    std::vector<Diagnostic> diagnostics;

    // Label, or the IRI's local name when the class has no label.
    std::string display_label(const Iri& iri) const;
    std::string definition_of(const Iri& iri) const;
};

// Parses the functional-style EL subset. Constructs outside EL (union,
// complement, universal, cardinality, ...) are skipped with a diagnostic.
// Throws SyntaxError for malformed documents.
Ontology parse_ontology_document(std::string_view text, const Iri& document_uri);

// Renders an ontology in the same syntax, with full IRIs.
std::string serialize_ontology(const Ontology& ontology);

// Maps a document IRI to its text; throws (any exception) on failure.
using DocumentFetcher = std::function<std::string(const Iri&)>;

// Merges the transitive import closure into a copy of `ontology`. Each
// document is visited once, so import cycles terminate. Throws
// ImportFetchError if any import cannot be retrieved or parsed.
Ontology resolve_imports(const Ontology& ontology, const DocumentFetcher& fetcher);

}  // namespace owlport
