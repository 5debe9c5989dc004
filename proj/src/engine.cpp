#include "engine.hpp"

#include <bit>

namespace owlport::detail {

Engine::Engine() {
    intern_class(vocab::top());
    intern_class(vocab::bottom());
}

const Id* Engine::find_class(const Iri& iri) const {
    auto it = class_ids_.find(iri);
    return it == class_ids_.end() ? nullptr : &it->second;
}

const Id* Engine::find_role(const Iri& iri) const {
    auto it = role_ids_.find(iri);
    return it == role_ids_.end() ? nullptr : &it->second;
}

Id Engine::intern_class(const Iri& iri) {
    auto [it, inserted] = class_ids_.try_emplace(iri, static_cast<Id>(class_iris_.size()));
    if (inserted) {
        class_iris_.push_back(iri);
        told_supers_.emplace_back();
        conjunctions_.emplace_back();
        existential_supers_.emplace_back();
        rows_.emplace_back();
        is_filler_.push_back(0);
        succ_.emplace_back();
        pred_.emplace_back();
    }
    return it->second;
}

Id Engine::intern_role(const Iri& iri) {
    auto [it, inserted] = role_ids_.try_emplace(iri, static_cast<Id>(role_iris_.size()));
    if (inserted) {
        role_iris_.push_back(iri);
        existential_subs_by_role_.emplace_back();
        role_supers_.emplace_back();
        chains_by_first_.emplace_back();
        chains_by_second_.emplace_back();
        link_sets_.emplace_back();
    }
    return it->second;
}

void Engine::extend(const NormalizedAxiomSet& axioms) {
    for (const auto& c : axioms.classes) intern_class(c);
    for (const auto& p : axioms.properties) intern_role(p);

    const std::size_t seeded = initialized_;
    auto for_each_seeded = [&](auto&& fn) {
        for (Id a = 0; a < seeded; ++a) fn(a);
    };

    for (const auto& ax : axioms.subsumptions) {
        Id x = intern_class(ax.sub), b = intern_class(ax.sup);
        told_supers_[x].push_back(b);
        for_each_seeded([&](Id a) {
            if (contains(a, x)) push_subsumer(a, b);
        });
    }
    for (const auto& ax : axioms.conjunctions) {
        Id l = intern_class(ax.left), r = intern_class(ax.right), b = intern_class(ax.sup);
        conjunctions_[l].emplace_back(r, b);
        if (l != r) conjunctions_[r].emplace_back(l, b);
        for_each_seeded([&](Id a) {
            if (contains(a, l) && contains(a, r)) push_subsumer(a, b);
        });
    }
    for (const auto& ax : axioms.existential_supers) {
        Id x = intern_class(ax.sub), role = intern_role(ax.property), b = intern_class(ax.filler);
        existential_supers_[x].emplace_back(role, b);
        for_each_seeded([&](Id a) {
            if (contains(a, x)) push_link(role, a, b);
        });
    }
    for (const auto& ax : axioms.existential_subs) {
        Id role = intern_role(ax.property), x = intern_class(ax.filler), b = intern_class(ax.sup);
        existential_subs_[pair_key(x, role)].push_back(b);
        existential_subs_by_role_[role].emplace_back(x, b);
        is_filler_[x] = 1;
        for_each_seeded([&](Id a) {
            for (Id c : succ_[a].get(role))
                if (contains(c, x)) push_subsumer(a, b);
        });
    }
    for (const auto& ax : axioms.role_hierarchy) {
        Id r = intern_role(ax.sub), s = intern_role(ax.sup);
        role_supers_[r].push_back(s);
        for_each_seeded([&](Id a) {
            for (Id c : succ_[a].get(r)) push_link(s, a, c);
        });
    }
    for (const auto& ax : axioms.role_chains) {
        Id r = intern_role(ax.first), s = intern_role(ax.second), t = intern_role(ax.sup);
        chains_by_first_[r].emplace_back(s, t);
        chains_by_second_[s].emplace_back(r, t);
        for_each_seeded([&](Id a) {
            for (Id b : succ_[a].get(r))
                for (Id c : succ_[b].get(s)) push_link(t, a, c);
        });
    }

    for (Id c = static_cast<Id>(initialized_); c < class_iris_.size(); ++c) {
        push_subsumer(c, c);
        push_subsumer(c, top_id);
    }
    initialized_ = class_iris_.size();
    run();
}

void Engine::run() {
    while (!queue_.empty()) {
        Task task = queue_.back();
        queue_.pop_back();
        if (task.kind == TaskKind::Subsumer) {
            process_subsumer(task.a, task.b);
        } else {
            process_link(task.role, task.a, task.b);
        }
    }
}

bool Engine::insert_subsumer(Id cls, Id sup) {
    auto& row = rows_[cls];
    const std::size_t word = sup >> 6;
    if (word >= row.bits.size()) row.bits.resize(word + 1, 0);
    const std::uint64_t mask = std::uint64_t{1} << (sup & 63);
    if (row.bits[word] & mask) return false;
    row.bits[word] |= mask;
    row.members.push_back(sup);
    return true;
}

bool Engine::KeySet::insert(std::uint64_t key) {
    if ((size_ + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = slot(key);; i = (i + 1) & mask) {
        if (slots_[i] == key) return false;
        if (slots_[i] == empty) {
            slots_[i] = key;
            ++size_;
            return true;
        }
    }
}

bool Engine::KeySet::contains(std::uint64_t key) const {
    if (slots_.empty()) return false;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = slot(key);; i = (i + 1) & mask) {
        if (slots_[i] == key) return true;
        if (slots_[i] == empty) return false;
    }
}

void Engine::KeySet::grow() {
    std::vector<std::uint64_t> old = std::move(slots_);
    const std::size_t capacity = old.empty() ? 16 : old.size() * 2;
    slots_.assign(capacity, empty);
    shift_ = 64 - static_cast<unsigned>(std::countr_zero(capacity));
    for (std::uint64_t key : old) {
        if (key == empty) continue;
        const std::size_t mask = capacity - 1;
        std::size_t i = slot(key);
        while (slots_[i] != empty) i = (i + 1) & mask;
        slots_[i] = key;
    }
}

bool Engine::has_link(Id role, Id from, Id to) const {
    return link_sets_[role].contains(pair_key(from, to));
}

void Engine::process_subsumer(Id a, Id x) {
    if (!insert_subsumer(a, x)) return;

    for (Id b : told_supers_[x]) push_subsumer(a, b);
    for (auto [other, b] : conjunctions_[x])
        if (contains(a, other)) push_subsumer(a, b);
    for (auto [role, b] : existential_supers_[x]) push_link(role, a, b);

    if (is_filler_[x]) {
        for (const auto& [role, preds] : pred_[a].by_role) {
            auto it = existential_subs_.find(pair_key(x, role));
            if (it == existential_subs_.end()) continue;
            for (Id p : preds)
                for (Id b : it->second) push_subsumer(p, b);
        }
    }
    if (x == bottom_id)
        for (const auto& [role, preds] : pred_[a].by_role)
            for (Id p : preds) push_subsumer(p, bottom_id);
}

void Engine::process_link(Id role, Id a, Id b) {
    if (!link_sets_[role].insert(pair_key(a, b))) return;
    succ_[a].slot(role).push_back(b);
    pred_[b].slot(role).push_back(a);

    for (Id s : role_supers_[role]) push_link(s, a, b);

    const auto& by_role = existential_subs_by_role_[role];
    if (!by_role.empty()) {
        const auto& members = rows_[b].members;
        if (by_role.size() <= members.size()) {
            for (auto [x, sup] : by_role)
                if (contains(b, x)) push_subsumer(a, sup);
        } else {
            for (Id x : members) {
                if (!is_filler_[x]) continue;
                auto it = existential_subs_.find(pair_key(x, role));
                if (it == existential_subs_.end()) continue;
                for (Id sup : it->second) push_subsumer(a, sup);
            }
        }
    }
    if (contains(b, bottom_id)) push_subsumer(a, bottom_id);

    for (auto [s, t] : chains_by_first_[role])
        for (Id c : succ_[b].get(s)) push_link(t, a, c);
    for (auto [r, t] : chains_by_second_[role])
        for (Id z : pred_[a].get(r)) push_link(t, z, b);
}

}  // namespace owlport::detail
