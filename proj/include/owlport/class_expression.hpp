#pragma once

#include <string>
#include <vector>

#include "owlport/iri.hpp"

namespace owlport {

// EL class expression: named class, Top, Bottom, conjunction, or existential
// restriction. Values are always canonical: conjunctions are flattened,
// deduplicated, sorted by their functional-syntax rendering, and a
// conjunction that collapses to one operand becomes that operand.
class ClassExpression {
public:
    enum class Kind { Named, Top, Bottom, Conjunction, Existential };

    static ClassExpression named(Iri iri);
    static ClassExpression top();
    static ClassExpression bottom();
    static ClassExpression conjunction(std::vector<ClassExpression> operands);
    static ClassExpression some(Iri property, ClassExpression filler);

    Kind kind() const noexcept { return kind_; }
    bool is_named() const noexcept { return kind_ == Kind::Named; }
    // Named, Top or Bottom: anything that is an atomic concept to the reasoner.
    bool is_atomic() const noexcept { return kind_ == Kind::Named || kind_ == Kind::Top || kind_ == Kind::Bottom; }

    // Named classes report their IRI; Top/Bottom report owl:Thing/owl:Nothing.
    const Iri& iri() const;
    const Iri& property() const;
    const ClassExpression& filler() const;
    const std::vector<ClassExpression>& operands() const;

    // Functional-style rendering with full IRIs; the canonical sort key.
    std::string to_functional() const;

    // Every named class and property IRI mentioned, appended in traversal order.
    void collect_classes(std::vector<Iri>& out) const;
    void collect_properties(std::vector<Iri>& out) const;

    friend bool operator==(const ClassExpression&, const ClassExpression&) = default;

private:
    ClassExpression() = default;

    Kind kind_ = Kind::Top;
    Iri iri_;
    // Conjunction operands, or the single existential filler.
    std::vector<ClassExpression> children_;
};

}  // namespace owlport
