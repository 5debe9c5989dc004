#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>

#include "owlport/ontology.hpp"

namespace owlport {

// A ⊑ B between atomic classes (named, owl:Thing, owl:Nothing).
struct AtomicSubsumption {
    Iri sub;
    Iri sup;
    friend auto operator<=>(const AtomicSubsumption&, const AtomicSubsumption&) = default;
};

// left ⊓ right ⊑ sup, with left <= right.
struct BinaryConjunction {
    Iri left;
    Iri right;
    Iri sup;
    friend auto operator<=>(const BinaryConjunction&, const BinaryConjunction&) = default;
};

// sub ⊑ ∃property.filler
struct ExistentialSuper {
    Iri sub;
    Iri property;
    Iri filler;
    friend auto operator<=>(const ExistentialSuper&, const ExistentialSuper&) = default;
};

// ∃property.filler ⊑ sup
struct ExistentialSub {
    Iri property;
    Iri filler;
    Iri sup;
    friend auto operator<=>(const ExistentialSub&, const ExistentialSub&) = default;
};

struct RoleInclusion {
    Iri sub;
    Iri sup;
    friend auto operator<=>(const RoleInclusion&, const RoleInclusion&) = default;
};

// first ∘ second ⊑ sup
struct RoleComposition {
    Iri first;
    Iri second;
    Iri sup;
    friend auto operator<=>(const RoleComposition&, const RoleComposition&) = default;
};

// EL normal form. Every class mentioned is atomic: an original named class,
// a fresh class, owl:Thing or owl:Nothing.
struct NormalizedAxiomSet {
    std::set<AtomicSubsumption> subsumptions;
    std::set<BinaryConjunction> conjunctions;
    std::set<ExistentialSuper> existential_supers;
    std::set<ExistentialSub> existential_subs;
    std::set<RoleInclusion> role_hierarchy;
    std::set<RoleComposition> role_chains;
    std::set<Iri> fresh_classes;
    // Every class and property mentioned, original and fresh; includes
    // declared classes that occur in no axiom.
    std::set<Iri> classes;
    std::set<Iri> properties;

    std::size_t size() const noexcept {
        return subsumptions.size() + conjunctions.size() + existential_supers.size() + existential_subs.size() +
               role_hierarchy.size() + role_chains.size();
    }
};

// Rewrites axioms into normal form, introducing fresh classes named
// `urn:owlport:fresh#<tag><counter>`. The counter is deterministic, so the
// same input always yields the same output.
class Normalizer {
public:
    explicit Normalizer(NormalizedAxiomSet& out, std::string tag = {});

    void add(const Axiom& axiom);
    void add_subclass(const ClassExpression& sub, const ClassExpression& sup);
    void declare_class(const Iri& iri);
    void declare_property(const Iri& iri);
    Iri fresh_class();

private:
    void add_super(const Iri& sub, const ClassExpression& sup);
    void add_sub_into(const ClassExpression& sub, const Iri& sup);
    Iri name_for_sub(const ClassExpression& sub);
    void note(const ClassExpression& expr);

    NormalizedAxiomSet& out_;
    std::string tag_;
    std::size_t counter_ = 0;
    // Fresh names reused for identical complex sub-expressions.
    std::map<std::string, Iri> sub_names_;
    std::map<std::string, Iri> super_names_;
};

NormalizedAxiomSet normalize(const Ontology& ontology);

}  // namespace owlport
