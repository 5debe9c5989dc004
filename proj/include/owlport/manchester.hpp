#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "owlport/class_expression.hpp"
#include "owlport/ontology.hpp"

namespace owlport {

// Maps labels and IRI local names to entities and back. Label keys are
// normalized with normalize_label; local names match exactly.
class ShortFormProvider {
public:
    ShortFormProvider() = default;
    explicit ShortFormProvider(const Ontology& ontology);

    void add_class(const Iri& iri, const std::string* label = nullptr);
    void add_property(const Iri& iri, const std::string* label = nullptr);

    // Label match first, then local name. Empty when nothing matches; more
    // than one element means the name is ambiguous.
    std::set<Iri> resolve_class(std::string_view name) const;
    std::set<Iri> resolve_property(std::string_view name) const;

    // Shortest text that resolves back to exactly `iri`: the label, else the
    // local name, else the bracketed IRI.
    std::string render_class(const Iri& iri) const;
    std::string render_property(const Iri& iri) const;

    const std::map<std::string, std::set<Iri>>& by_label() const noexcept { return class_.by_label; }
    const std::map<std::string, std::set<Iri>>& property_by_label() const noexcept { return property_.by_label; }

private:
    struct Table {
        std::map<std::string, std::set<Iri>> by_label;
        std::map<std::string, std::set<Iri>> by_local;
        std::map<Iri, std::string> label_of;

        void add(const Iri& iri, const std::string* label);
        std::set<Iri> resolve(std::string_view name) const;
        std::string render(const Iri& iri) const;
    };

    Table class_;
    Table property_;
};

// EL fragment of Manchester syntax:
//   expression := conjunct ("and" conjunct)*
//   conjunct   := primary | property "some" conjunct
//   primary    := 'quoted label' | name | <iri> | owl:Thing | owl:Nothing | "(" expression ")"
// Throws ParseError, UnknownEntity, AmbiguousEntity or UnsupportedConstruct.
ClassExpression parse_manchester(std::string_view text, const ShortFormProvider& shortforms);

std::string render_manchester(const ClassExpression& expr, const ShortFormProvider& shortforms);

}  // namespace owlport
