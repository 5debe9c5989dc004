#include "owlport/reasoner.hpp"

#include <algorithm>
#include <deque>

#include "engine.hpp"
#include "owlport/errors.hpp"

namespace owlport {

using detail::Engine;
using detail::Id;

namespace {

bool in_signature(const Engine& engine, Id id) {
    return id != Engine::top_id && id != Engine::bottom_id && !vocab::is_fresh(engine.class_iri(id));
}

std::vector<Iri> sorted(std::vector<Iri> v) {
    std::sort(v.begin(), v.end());
    return v;
}

QueryClassification answer(const Engine& engine, Id q, const QueryOptions& options) {
    QueryClassification out;
    const std::size_t n = engine.class_count();
    if (engine.contains(q, Engine::bottom_id)) {
        for (Id a = 0; a < n; ++a) {
            if (!in_signature(engine, a)) continue;
            (engine.contains(a, Engine::bottom_id) ? out.equivalents : out.superclasses).push_back(engine.class_iri(a));
        }
        if (options.include_top_bottom) {
            out.equivalents.push_back(vocab::bottom());
            out.superclasses.push_back(vocab::top());
        }
    } else {
        for (Id b : engine.subsumers(q)) {
            if (!in_signature(engine, b)) continue;
            (engine.contains(b, q) ? out.equivalents : out.superclasses).push_back(engine.class_iri(b));
        }
        for (Id a = 0; a < n; ++a) {
            if (!in_signature(engine, a) || engine.contains(a, Engine::bottom_id)) continue;
            if (engine.contains(a, q) && !engine.contains(q, a)) out.subclasses.push_back(engine.class_iri(a));
        }
        if (options.include_top_bottom) {
            (engine.contains(Engine::top_id, q) ? out.equivalents : out.superclasses).push_back(vocab::top());
            out.subclasses.push_back(vocab::bottom());
            for (Id a = 0; a < n; ++a)
                if (in_signature(engine, a) && engine.contains(a, Engine::bottom_id))
                    out.subclasses.push_back(engine.class_iri(a));
        }
    }
    out.equivalents = sorted(std::move(out.equivalents));
    out.subclasses = sorted(std::move(out.subclasses));
    out.superclasses = sorted(std::move(out.superclasses));
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SaturationState

SaturationState saturate(const NormalizedAxiomSet& normalized) {
    auto engine = std::make_shared<Engine>();
    engine->extend(normalized);
    return SaturationState(std::move(engine));
}

std::set<Iri> SaturationState::subsumers(const Iri& cls) const {
    std::set<Iri> out;
    if (const Id* id = engine_->find_class(cls))
        for (Id s : engine_->subsumers(*id)) out.insert(engine_->class_iri(s));
    return out;
}

bool SaturationState::entails(const Iri& sub, const Iri& sup) const {
    const Id* a = engine_->find_class(sub);
    const Id* b = engine_->find_class(sup);
    if (!a || !b) return false;
    return engine_->contains(*a, *b) || engine_->contains(*a, Engine::bottom_id);
}

std::set<std::pair<Iri, Iri>> SaturationState::links(const Iri& property) const {
    std::set<std::pair<Iri, Iri>> out;
    const Id* role = engine_->find_role(property);
    if (!role) return out;
    for (Id a = 0; a < engine_->class_count(); ++a)
        for (Id b : engine_->successors(a, *role)) out.emplace(engine_->class_iri(a), engine_->class_iri(b));
    return out;
}

bool SaturationState::is_unsatisfiable(const Iri& cls) const {
    const Id* id = engine_->find_class(cls);
    return id && engine_->contains(*id, Engine::bottom_id);
}

std::vector<Iri> SaturationState::classes() const {
    std::vector<Iri> out;
    out.reserve(engine_->class_count());
    for (Id a = 0; a < engine_->class_count(); ++a) out.push_back(engine_->class_iri(a));
    return out;
}

std::set<Iri> SaturationState::signature() const {
    std::set<Iri> out;
    for (Id a = 0; a < engine_->class_count(); ++a)
        if (in_signature(*engine_, a)) out.insert(engine_->class_iri(a));
    return out;
}

bool SaturationState::has_class(const Iri& cls) const { return engine_->find_class(cls) != nullptr; }

bool SaturationState::has_property(const Iri& property) const { return engine_->find_role(property) != nullptr; }

std::map<Iri, std::set<Iri>> SaturationState::subsumer_map() const {
    std::map<Iri, std::set<Iri>> out;
    for (Id a = 0; a < engine_->class_count(); ++a) {
        auto& set = out[engine_->class_iri(a)];
        for (Id s : engine_->subsumers(a)) set.insert(engine_->class_iri(s));
    }
    return out;
}

std::set<Iri> unsatisfiable_classes(const SaturationState& state) {
    std::set<Iri> out;
    const Engine& engine = state.engine();
    for (Id a = 0; a < engine.class_count(); ++a)
        if (in_signature(engine, a) && engine.contains(a, Engine::bottom_id)) out.insert(engine.class_iri(a));
    return out;
}

// ---------------------------------------------------------------------------
// Taxonomy

Taxonomy build_taxonomy(const SaturationState& state, const std::set<Iri>& signature) {
    const Engine& engine = state.engine();
    Taxonomy tax;

    std::vector<Id> satisfiable;
    std::vector<char> eligible(engine.class_count(), 0);
    for (const auto& iri : signature) {
        if (iri == vocab::top() || iri == vocab::bottom() || vocab::is_fresh(iri)) continue;
        const Id* id = engine.find_class(iri);
        if (!id) continue;
        if (engine.contains(*id, Engine::bottom_id)) {
            tax.unsatisfiable_.insert(iri);
        } else {
            satisfiable.push_back(*id);
            eligible[*id] = 1;
        }
    }
    eligible[Engine::top_id] = 1;

    constexpr std::size_t unassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> node_of(engine.class_count(), unassigned);
    std::vector<Id> representative;

    auto make_node = [&](Id rep) {
        const std::size_t index = tax.nodes_.size();
        Taxonomy::Node node;
        node.members.push_back(engine.class_iri(rep));
        node_of[rep] = index;
        for (Id b : engine.subsumers(rep)) {
            if (b == rep || !eligible[b] || node_of[b] != unassigned) continue;
            if (engine.contains(b, rep)) {
                node.members.push_back(engine.class_iri(b));
                node_of[b] = index;
            }
        }
        std::sort(node.members.begin(), node.members.end());
        tax.nodes_.push_back(std::move(node));
        representative.push_back(rep);
    };

    tax.top_node_ = 0;
    make_node(Engine::top_id);
    // Classes equivalent to owl:Thing have it among their subsumers and are
    // subsumers of it; make_node only scans the representative's row, so
    // collect them explicitly.
    for (Id a : satisfiable) {
        if (node_of[a] == unassigned && engine.contains(Engine::top_id, a)) {
            tax.nodes_[0].members.push_back(engine.class_iri(a));
            node_of[a] = 0;
        }
    }
    std::sort(tax.nodes_[0].members.begin(), tax.nodes_[0].members.end());

    std::sort(satisfiable.begin(), satisfiable.end(),
              [&](Id a, Id b) { return engine.class_iri(a) < engine.class_iri(b); });
    for (Id a : satisfiable)
        if (node_of[a] == unassigned) make_node(a);

    const std::size_t count = tax.nodes_.size();
    tax.direct_super_.assign(count, {});
    tax.direct_sub_.assign(count, {});
    std::vector<std::size_t> covered_stamp(count, 0);
    std::vector<std::size_t> candidate_stamp(count, 0);

    for (std::size_t n = 1; n < count; ++n) {
        const Id rep = representative[n];
        std::vector<std::size_t> candidates;
        for (Id b : engine.subsumers(rep)) {
            if (!eligible[b]) continue;
            const std::size_t m = node_of[b];
            if (m == unassigned || m == n || candidate_stamp[m] == n) continue;
            candidate_stamp[m] = n;
            candidates.push_back(m);
        }
        // A strict super has a strictly smaller subsumer set, so visiting by
        // decreasing size sees every node before the nodes it covers.
        std::sort(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
            const auto sx = engine.subsumers(representative[x]).size();
            const auto sy = engine.subsumers(representative[y]).size();
            return sx != sy ? sx > sy : x < y;
        });
        for (std::size_t m : candidates) {
            if (covered_stamp[m] == n) continue;
            tax.direct_super_[n].insert(m);
            tax.direct_sub_[m].insert(n);
            for (Id b : engine.subsumers(representative[m]))
                if (eligible[b] && node_of[b] != unassigned) covered_stamp[node_of[b]] = n;
        }
    }

    for (std::size_t n = 0; n < count; ++n)
        for (const auto& iri : tax.nodes_[n].members) tax.node_index_.emplace(iri, n);
    return tax;
}

std::optional<std::size_t> Taxonomy::node_of(const Iri& cls) const {
    auto it = node_index_.find(cls);
    if (it == node_index_.end()) return std::nullopt;
    return it->second;
}

std::vector<Iri> Taxonomy::equivalents(const Iri& cls) const {
    auto n = node_of(cls);
    return n ? nodes_[*n].members : std::vector<Iri>{};
}

namespace {

template <typename Edges>
std::set<Iri> reachable(const std::vector<Taxonomy::Node>& nodes, const Edges& edges, std::size_t start) {
    std::set<Iri> out;
    std::vector<char> seen(nodes.size(), 0);
    std::deque<std::size_t> pending(edges[start].begin(), edges[start].end());
    while (!pending.empty()) {
        std::size_t n = pending.front();
        pending.pop_front();
        if (seen[n]) continue;
        seen[n] = 1;
        out.insert(nodes[n].members.begin(), nodes[n].members.end());
        pending.insert(pending.end(), edges[n].begin(), edges[n].end());
    }
    return out;
}

}  // namespace

std::set<Iri> Taxonomy::all_supers(const Iri& cls) const {
    auto n = node_of(cls);
    return n ? reachable(nodes_, direct_super_, *n) : std::set<Iri>{};
}

std::set<Iri> Taxonomy::all_subs(const Iri& cls) const {
    auto n = node_of(cls);
    return n ? reachable(nodes_, direct_sub_, *n) : std::set<Iri>{};
}

// ---------------------------------------------------------------------------
// Query classification

QueryClassification query_classify(const SaturationState& base, const ClassExpression& expr,
                                   const QueryOptions& options) {
    std::vector<Iri> mentioned;
    expr.collect_classes(mentioned);
    for (const auto& c : mentioned)
        if (!base.has_class(c) || vocab::is_fresh(c)) throw UnknownEntity(c.str());
    mentioned.clear();
    expr.collect_properties(mentioned);
    for (const auto& p : mentioned)
        if (!base.has_property(p)) throw UnknownEntity(p.str());

    const Engine& engine = base.engine();
    if (expr.is_atomic()) return answer(engine, *engine.find_class(expr.iri()), options);

    Engine scratch = engine;
    NormalizedAxiomSet delta;
    Normalizer normalizer(delta, "q");
    Iri query_class = normalizer.fresh_class();
    auto named = ClassExpression::named(query_class);
    normalizer.add_subclass(named, expr);
    normalizer.add_subclass(expr, named);
    scratch.extend(delta);
    return answer(scratch, *scratch.find_class(query_class), options);
}

QueryClassification query_classify(const NormalizedAxiomSet& normalized, const ClassExpression& expr,
                                   const QueryOptions& options) {
    return query_classify(saturate(normalized), expr, options);
}

}  // namespace owlport
