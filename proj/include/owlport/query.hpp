#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owlport/label_index.hpp"
#include "owlport/manchester.hpp"
#include "owlport/normalize.hpp"
#include "owlport/ontology.hpp"
#include "owlport/reasoner.hpp"

namespace owlport {

enum class QueryType { Subclass, Superclass, Equivalent };

std::string_view to_string(QueryType type);
// Accepts "subclass", "superclass", "equivalent" in any case.
std::optional<QueryType> parse_query_type(std::string_view text);

struct ClassRecord {
    Iri ontology_uri;
    Iri class_iri;
    std::string label;
    std::string definition;

    friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

// An ontology with its import closure resolved, saturated and classified.
class ClassifiedOntology {
public:
    explicit ClassifiedOntology(Ontology ontology);

    const Iri& uri() const noexcept { return ontology_.document_uri; }
    const Ontology& ontology() const noexcept { return ontology_; }
    const NormalizedAxiomSet& normalized() const noexcept { return normalized_; }
    const SaturationState& state() const noexcept { return state_; }
    const Taxonomy& taxonomy() const noexcept { return taxonomy_; }
    const ShortFormProvider& shortforms() const noexcept { return shortforms_; }

    ClassRecord record(const Iri& cls) const;

    // Parses `text` against this ontology's short forms and returns the
    // requested answer set, ordered by class IRI. Subclass and superclass
    // answers include the classes equivalent to the expression.
    std::vector<ClassRecord> query(std::string_view text, QueryType type, const QueryOptions& options = {}) const;

private:
    Ontology ontology_;
    NormalizedAxiomSet normalized_;
    SaturationState state_;
    Taxonomy taxonomy_;
    ShortFormProvider shortforms_;
};

// Immutable snapshot of the loaded ontologies, in load order, with the label
// index built over all of them.
class Repository {
public:
    Repository();

    // New snapshot with `ontology` added, or replacing an ontology with the
    // same document URI in place.
    Repository with(std::shared_ptr<const ClassifiedOntology> ontology) const;

    const std::vector<std::shared_ptr<const ClassifiedOntology>>& ontologies() const noexcept { return ontologies_; }
    std::shared_ptr<const ClassifiedOntology> find(const Iri& uri) const;
    const LabelTrie& labels() const noexcept { return *labels_; }

private:
    std::vector<std::shared_ptr<const ClassifiedOntology>> ontologies_;
    std::shared_ptr<const LabelTrie> labels_;
};

// Called for an ontology URI absent from the repository. Returns the
// classified ontology or throws.
using OntologyResolver = std::function<std::shared_ptr<const ClassifiedOntology>(const Iri&)>;

// Runs a Manchester query against one ontology, or against every ontology
// (load order, skipping those where the query does not parse or resolve)
// when `ontology` is empty. A missing ontology is passed to `resolve_missing`;
// without one, OntologyUnavailable is thrown.
std::vector<ClassRecord> execute_query(std::string_view text, QueryType type, const std::optional<Iri>& ontology,
                                       const Repository& repository, const OntologyResolver& resolve_missing = {},
                                       const QueryOptions& options = {});

}  // namespace owlport
