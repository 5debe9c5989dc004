#pragma once

// Entailment between named classes computed directly on unnormalized
// axioms: completion over the set of all sub-expressions, with
// decomposition/composition rules for conjunctions and existentials.
// Shares nothing with the normalizer or the indexed engine.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "owlport/ontology.hpp"

namespace oracle {

using owlport::ClassExpression;
using owlport::Iri;

class StructuralEntailment {
public:
    explicit StructuralEntailment(const owlport::Ontology& ont) {
        add(ClassExpression::top());
        add(ClassExpression::bottom());
        for (const auto& c : ont.classes) add(ClassExpression::named(c));
        for (const auto& ax : ont.axioms) {
            if (auto* s = std::get_if<owlport::SubClassOf>(&ax)) {
                told_.emplace_back(add(s->sub), add(s->sup));
            } else if (auto* e = std::get_if<owlport::EquivalentClasses>(&ax)) {
                for (const auto& x : e->exprs)
                    for (const auto& y : e->exprs)
                        if (&x != &y) told_.emplace_back(add(x), add(y));
            } else if (auto* h = std::get_if<owlport::SubPropertyOf>(&ax)) {
                hierarchy_.emplace_back(h->sub.str(), h->sup.str());
            } else if (auto* ch = std::get_if<owlport::PropertyChain>(&ax)) {
                chains_.emplace_back(ch->chain[0].str(), ch->chain[1].str(), ch->sup.str());
            } else if (auto* t = std::get_if<owlport::TransitiveProperty>(&ax)) {
                chains_.emplace_back(t->property.str(), t->property.str(), t->property.str());
            }
        }
        run();
    }

    // sub ⊑ sup is entailed (including via unsatisfiability of sub).
    bool entails(const Iri& sub, const Iri& sup) const {
        const auto& s = closure_.at(key(ClassExpression::named(sub)));
        return s.contains(key(ClassExpression::named(sup))) || s.contains(key(ClassExpression::bottom()));
    }

private:
    static std::string key(const ClassExpression& e) { return e.to_functional(); }

    std::string add(const ClassExpression& e) {
        auto k = key(e);
        if (exprs_.contains(k)) return k;
        exprs_.emplace(k, e);
        if (e.kind() == ClassExpression::Kind::Conjunction)
            for (const auto& op : e.operands()) add(op);
        if (e.kind() == ClassExpression::Kind::Existential) add(e.filler());
        return k;
    }

    void run() {
        const std::string top = key(ClassExpression::top());
        const std::string bottom = key(ClassExpression::bottom());
        for (const auto& [k, e] : exprs_) closure_[k] = {k, top};

        bool changed = true;
        auto put = [&](const std::string& c, const std::string& d) {
            if (closure_[c].insert(d).second) changed = true;
        };
        auto link = [&](const std::string& r, const std::string& a, const std::string& b) {
            if (links_.emplace(r, a, b).second) changed = true;
        };
        while (changed) {
            changed = false;
            auto snapshot = closure_;
            for (const auto& [c, s] : snapshot) {
                for (const auto& d : s) {
                    const auto& expr = exprs_.at(d);
                    if (expr.kind() == ClassExpression::Kind::Conjunction)
                        for (const auto& op : expr.operands()) put(c, key(op));
                    if (expr.kind() == ClassExpression::Kind::Existential)
                        link(expr.property().str(), c, key(expr.filler()));
                }
                for (const auto& [lhs, rhs] : told_)
                    if (s.contains(lhs)) put(c, rhs);
                for (const auto& [k, e] : exprs_) {
                    if (e.kind() != ClassExpression::Kind::Conjunction) continue;
                    bool all = true;
                    for (const auto& op : e.operands()) all = all && s.contains(key(op));
                    if (all) put(c, k);
                }
            }
            auto links = links_;
            for (const auto& [r, a, b] : links) {
                const auto& sb = closure_[b];
                if (sb.contains(bottom)) put(a, bottom);
                for (const auto& [k, e] : exprs_)
                    if (e.kind() == ClassExpression::Kind::Existential && e.property().str() == r &&
                        sb.contains(key(e.filler())))
                        put(a, k);
                for (const auto& [sub, sup] : hierarchy_)
                    if (sub == r) link(sup, a, b);
                for (const auto& [r2, b2, c] : links)
                    if (b2 == b)
                        for (const auto& [f, s, t] : chains_)
                            if (f == r && s == r2) link(t, a, c);
            }
        }
    }

    std::map<std::string, ClassExpression> exprs_;
    std::vector<std::pair<std::string, std::string>> told_;
    std::vector<std::pair<std::string, std::string>> hierarchy_;
    std::vector<std::tuple<std::string, std::string, std::string>> chains_;
    std::map<std::string, std::set<std::string>> closure_;
    std::set<std::tuple<std::string, std::string, std::string>> links_;
};

}  // namespace oracle
