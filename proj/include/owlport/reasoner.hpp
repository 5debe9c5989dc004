#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "owlport/class_expression.hpp"
#include "owlport/normalize.hpp"

namespace owlport {

namespace detail {
class Engine;
}

// Fixpoint of the EL completion rules over a normalized axiom set.
// Immutable; copies share the underlying engine.
class SaturationState {
public:
    // S(A): every atomic class entailed to subsume `cls`, always containing
    // `cls` and owl:Thing. Empty if `cls` is unknown.
    std::set<Iri> subsumers(const Iri& cls) const;
    bool entails(const Iri& sub, const Iri& sup) const;
    // R(r): class pairs linked by `property`.
    std::set<std::pair<Iri, Iri>> links(const Iri& property) const;
    bool is_unsatisfiable(const Iri& cls) const;

    // All classes known to the state (original, fresh, owl:Thing, owl:Nothing).
    std::vector<Iri> classes() const;
    // Non-fresh named classes.
    std::set<Iri> signature() const;
    bool has_class(const Iri& cls) const;
    bool has_property(const Iri& property) const;

    std::map<Iri, std::set<Iri>> subsumer_map() const;

    const detail::Engine& engine() const { return *engine_; }

private:
    friend SaturationState saturate(const NormalizedAxiomSet&);
    explicit SaturationState(std::shared_ptr<const detail::Engine> engine) : engine_(std::move(engine)) {}

    std::shared_ptr<const detail::Engine> engine_;
};

SaturationState saturate(const NormalizedAxiomSet& normalized);

// Non-fresh classes with owl:Nothing among their subsumers.
std::set<Iri> unsatisfiable_classes(const SaturationState& state);

// Classified hierarchy: equivalence-class nodes linked by direct
// (transitively reduced) subsumption, rooted at the owl:Thing node.
class Taxonomy {
public:
    struct Node {
        std::vector<Iri> members;  // sorted
    };

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t top_node() const noexcept { return top_node_; }
    const std::set<std::size_t>& direct_supers(std::size_t node) const { return direct_super_.at(node); }
    const std::set<std::size_t>& direct_subs(std::size_t node) const { return direct_sub_.at(node); }
    std::optional<std::size_t> node_of(const Iri& cls) const;
    const std::set<Iri>& unsatisfiable() const noexcept { return unsatisfiable_; }

    // Members of every node strictly above / below `cls` (transitive).
    std::set<Iri> all_supers(const Iri& cls) const;
    std::set<Iri> all_subs(const Iri& cls) const;
    std::vector<Iri> equivalents(const Iri& cls) const;

private:
    friend Taxonomy build_taxonomy(const SaturationState&, const std::set<Iri>&);

    std::vector<Node> nodes_;
    std::vector<std::set<std::size_t>> direct_super_;
    std::vector<std::set<std::size_t>> direct_sub_;
    std::map<Iri, std::size_t> node_index_;
    std::set<Iri> unsatisfiable_;
    std::size_t top_node_ = 0;
};

Taxonomy build_taxonomy(const SaturationState& state, const std::set<Iri>& signature);

struct QueryOptions {
    // Report owl:Thing among superclasses and owl:Nothing (with the
    // unsatisfiable classes) among subclasses.
    bool include_top_bottom = false;
};

// Answers for a class expression over non-fresh named classes. Subclass and
// superclass sets are transitive and exclude the equivalents.
struct QueryClassification {
    std::vector<Iri> equivalents;
    std::vector<Iri> subclasses;
    std::vector<Iri> superclasses;
};

// Classifies `expr` against a saturated ontology by adding a fresh class
// Q ≡ expr to a private copy of the state. Throws UnknownEntity when `expr`
// mentions a class or property outside the state's signature.
QueryClassification query_classify(const SaturationState& base, const ClassExpression& expr,
                                   const QueryOptions& options = {});
QueryClassification query_classify(const NormalizedAxiomSet& normalized, const ClassExpression& expr,
                                   const QueryOptions& options = {});

}  // namespace owlport
