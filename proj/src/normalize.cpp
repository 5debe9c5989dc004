#include "owlport/normalize.hpp"

#include <vector>

namespace owlport {

Normalizer::Normalizer(NormalizedAxiomSet& out, std::string tag) : out_(out), tag_(std::move(tag)) {}

Iri Normalizer::fresh_class() {
    Iri iri(std::string(vocab::fresh_namespace) + tag_ + std::to_string(counter_++));
    out_.fresh_classes.insert(iri);
    out_.classes.insert(iri);
    return iri;
}

void Normalizer::declare_class(const Iri& iri) { out_.classes.insert(iri); }

void Normalizer::declare_property(const Iri& iri) { out_.properties.insert(iri); }

void Normalizer::note(const ClassExpression& expr) {
    std::vector<Iri> found;
    expr.collect_classes(found);
    out_.classes.insert(found.begin(), found.end());
    found.clear();
    expr.collect_properties(found);
    out_.properties.insert(found.begin(), found.end());
}

void Normalizer::add(const Axiom& axiom) {
    std::visit(
        [this](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SubClassOf>) {
                add_subclass(a.sub, a.sup);
            } else if constexpr (std::is_same_v<T, EquivalentClasses>) {
                for (std::size_t i = 1; i < a.exprs.size(); ++i) {
                    add_subclass(a.exprs[0], a.exprs[i]);
                    add_subclass(a.exprs[i], a.exprs[0]);
                }
            } else if constexpr (std::is_same_v<T, SubPropertyOf>) {
                declare_property(a.sub);
                declare_property(a.sup);
                out_.role_hierarchy.insert({a.sub, a.sup});
            } else if constexpr (std::is_same_v<T, PropertyChain>) {
                declare_property(a.chain[0]);
                declare_property(a.chain[1]);
                declare_property(a.sup);
                out_.role_chains.insert({a.chain[0], a.chain[1], a.sup});
            } else {
                declare_property(a.property);
                out_.role_chains.insert({a.property, a.property, a.property});
            }
        },
        axiom);
}

void Normalizer::add_subclass(const ClassExpression& sub, const ClassExpression& sup) {
    note(sub);
    note(sup);
    using K = ClassExpression::Kind;
    if (sup.kind() == K::Conjunction) {
        for (const auto& op : sup.operands()) add_subclass(sub, op);
        return;
    }
    if (sup.kind() == K::Top || sub.kind() == K::Bottom) return;  // tautologies
    if (sub.is_atomic()) {
        add_super(sub.iri(), sup);
    } else if (sup.is_atomic()) {
        add_sub_into(sub, sup.iri());
    } else {
        add_super(name_for_sub(sub), sup);
    }
}

// sub ⊑ sup where sub is atomic.
void Normalizer::add_super(const Iri& sub, const ClassExpression& sup) {
    using K = ClassExpression::Kind;
    switch (sup.kind()) {
    case K::Named:
    case K::Top:
    case K::Bottom:
        out_.subsumptions.insert({sub, sup.iri()});
        return;
    case K::Conjunction:
        for (const auto& op : sup.operands()) add_super(sub, op);
        return;
    case K::Existential: {
        const auto& filler = sup.filler();
        if (filler.is_atomic()) {
            out_.existential_supers.insert({sub, sup.property(), filler.iri()});
            return;
        }
        auto key = filler.to_functional();
        auto it = super_names_.find(key);
        if (it == super_names_.end()) {
            Iri name = fresh_class();
            it = super_names_.emplace(key, name).first;
            add_super(name, filler);
        }
        out_.existential_supers.insert({sub, sup.property(), it->second});
        return;
    }
    }
}

// sub ⊑ sup where sup is atomic.
void Normalizer::add_sub_into(const ClassExpression& sub, const Iri& sup) {
    using K = ClassExpression::Kind;
    switch (sub.kind()) {
    case K::Named:
    case K::Top:
    case K::Bottom:
        out_.subsumptions.insert({sub.iri(), sup});
        return;
    case K::Existential:
        out_.existential_subs.insert({sub.property(), name_for_sub(sub.filler()), sup});
        return;
    case K::Conjunction: {
        std::vector<Iri> names;
        for (const auto& op : sub.operands()) names.push_back(name_for_sub(op));
        Iri acc = names[0];
        for (std::size_t i = 1; i < names.size(); ++i) {
            Iri target = i + 1 == names.size() ? sup : fresh_class();
            const auto& [l, r] = std::minmax(acc, names[i]);
            out_.conjunctions.insert({l, r, target});
            acc = target;
        }
        return;
    }
    }
}

// Returns an atomic class N with sub ⊑ N recorded (N is sub itself when atomic).
Iri Normalizer::name_for_sub(const ClassExpression& sub) {
    if (sub.is_atomic()) return sub.iri();
    auto key = sub.to_functional();
    if (auto it = sub_names_.find(key); it != sub_names_.end()) return it->second;
    Iri name = fresh_class();
    sub_names_.emplace(key, name);
    add_sub_into(sub, name);
    return name;
}

NormalizedAxiomSet normalize(const Ontology& ontology) {
    NormalizedAxiomSet out;
    Normalizer normalizer(out);
    for (const auto& c : ontology.classes) normalizer.declare_class(c);
    for (const auto& p : ontology.properties) normalizer.declare_property(p);
    for (const auto& ax : ontology.axioms) normalizer.add(ax);
    out.classes.erase(vocab::top());
    out.classes.erase(vocab::bottom());
    return out;
}

}  // namespace owlport
