#include "owlport/query.hpp"

#include <algorithm>

#include "owlport/errors.hpp"
#include "owlport/text.hpp"

namespace owlport {

std::string_view to_string(QueryType type) {
    switch (type) {
    case QueryType::Subclass:
        return "subclass";
    case QueryType::Superclass:
        return "superclass";
    case QueryType::Equivalent:
        return "equivalent";
    }
    return "subclass";
}

std::optional<QueryType> parse_query_type(std::string_view text) {
    const std::string key = normalize_label(text);
    if (key == "subclass") return QueryType::Subclass;
    if (key == "superclass") return QueryType::Superclass;
    if (key == "equivalent") return QueryType::Equivalent;
    return std::nullopt;
}

ClassifiedOntology::ClassifiedOntology(Ontology ontology)
    : ontology_(std::move(ontology)),
      normalized_(normalize(ontology_)),
      state_(saturate(normalized_)),
      taxonomy_(build_taxonomy(state_, ontology_.classes)),
      shortforms_(ontology_) {}

ClassRecord ClassifiedOntology::record(const Iri& cls) const {
    return {ontology_.document_uri, cls, ontology_.display_label(cls), ontology_.definition_of(cls)};
}

std::vector<ClassRecord> ClassifiedOntology::query(std::string_view text, QueryType type,
                                                   const QueryOptions& options) const {
    const auto answer = query_classify(state_, parse_manchester(text, shortforms_), options);
    // Sub- and superclass answers include the classes equivalent to the query.
    std::vector<Iri> iris = answer.equivalents;
    if (type != QueryType::Equivalent) {
        const auto& strict = type == QueryType::Subclass ? answer.subclasses : answer.superclasses;
        iris.insert(iris.end(), strict.begin(), strict.end());
        std::sort(iris.begin(), iris.end());
    }
    std::vector<ClassRecord> out;
    out.reserve(iris.size());
    for (const auto& iri : iris) out.push_back(record(iri));
    return out;
}

Repository::Repository() : labels_(std::make_shared<LabelTrie>()) {}

Repository Repository::with(std::shared_ptr<const ClassifiedOntology> ontology) const {
    Repository next;
    next.ontologies_ = ontologies_;
    bool replaced = false;
    for (auto& existing : next.ontologies_) {
        if (existing->uri() == ontology->uri()) {
            existing = ontology;
            replaced = true;
        }
    }
    if (!replaced) next.ontologies_.push_back(std::move(ontology));

    auto trie = std::make_shared<LabelTrie>();
    for (const auto& o : next.ontologies_) {
        for (const auto& [iri, label] : o->ontology().labels) trie->insert(label, iri, o->uri(), EntityKind::Class);
        for (const auto& [iri, label] : o->ontology().property_labels)
            trie->insert(label, iri, o->uri(), EntityKind::Property);
    }
    next.labels_ = std::move(trie);
    return next;
}

std::shared_ptr<const ClassifiedOntology> Repository::find(const Iri& uri) const {
    for (const auto& o : ontologies_)
        if (o->uri() == uri) return o;
    return nullptr;
}

std::vector<ClassRecord> execute_query(std::string_view text, QueryType type, const std::optional<Iri>& ontology,
                                       const Repository& repository, const OntologyResolver& resolve_missing,
                                       const QueryOptions& options) {
    if (ontology) {
        auto target = repository.find(*ontology);
        if (!target) {
            if (!resolve_missing) throw OntologyUnavailable(ontology->str());
            target = resolve_missing(*ontology);
            if (!target) throw OntologyUnavailable(ontology->str());
        }
        return target->query(text, type, options);
    }
    std::vector<ClassRecord> out;
    for (const auto& o : repository.ontologies()) {
        try {
            auto part = o->query(text, type, options);
            out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        } catch (const Error&) {
            // Skip ontologies lacking the query's names.
        }
    }
    return out;
}

}  // namespace owlport
