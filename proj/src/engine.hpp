#pragma once

// Indexed worklist saturation over interned class and property ids.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "owlport/normalize.hpp"

namespace owlport::detail {

using Id = std::uint32_t;

class Engine {
public:
    static constexpr Id top_id = 0;
    static constexpr Id bottom_id = 1;

    Engine();

    // Adds axioms (and their classes/properties) and re-establishes the
    // fixpoint. Earlier derivations are kept; only consequences of the new
    // axioms are computed.
    void extend(const NormalizedAxiomSet& axioms);

    std::size_t class_count() const noexcept { return class_iris_.size(); }
    const Iri& class_iri(Id id) const { return class_iris_[id]; }
    const Iri& role_iri(Id id) const { return role_iris_[id]; }
    std::size_t role_count() const noexcept { return role_iris_.size(); }
    const Id* find_class(const Iri& iri) const;
    const Id* find_role(const Iri& iri) const;

    bool contains(Id cls, Id sup) const noexcept {
        const auto& bits = rows_[cls].bits;
        const std::size_t word = sup >> 6;
        return word < bits.size() && (bits[word] >> (sup & 63)) & 1u;
    }
    const std::vector<Id>& subsumers(Id cls) const { return rows_[cls].members; }
    // Targets of `cls` linked by `role`.
    const std::vector<Id>& successors(Id cls, Id role) const { return succ_[cls].get(role); }

private:
    struct Row {
        std::vector<std::uint64_t> bits;
        std::vector<Id> members;
    };

    // Link endpoints grouped by role; ontologies use few roles.
    struct Edges {
        std::vector<std::pair<Id, std::vector<Id>>> by_role;

        const std::vector<Id>& get(Id role) const {
            static const std::vector<Id> none;
            for (const auto& [r, ids] : by_role)
                if (r == role) return ids;
            return none;
        }
        std::vector<Id>& slot(Id role) {
            for (auto& [r, ids] : by_role)
                if (r == role) return ids;
            return by_role.emplace_back(role, std::vector<Id>{}).second;
        }
    };

    // Open-addressing set of 64-bit keys; the all-ones key is reserved.
    class KeySet {
    public:
        bool insert(std::uint64_t key);
        bool contains(std::uint64_t key) const;

    private:
        void grow();
        std::size_t slot(std::uint64_t key) const noexcept {
            return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> shift_);
        }
        static constexpr std::uint64_t empty = ~std::uint64_t{0};
        std::vector<std::uint64_t> slots_;
        std::size_t size_ = 0;
        unsigned shift_ = 64;
    };

    enum class TaskKind : std::uint8_t { Subsumer, Link };
    struct Task {
        TaskKind kind;
        Id role;
        Id a;
        Id b;
    };

    Id intern_class(const Iri& iri);
    Id intern_role(const Iri& iri);
    bool insert_subsumer(Id cls, Id sup);
    bool has_link(Id role, Id from, Id to) const;
    void push_subsumer(Id cls, Id sup) {
        if (!contains(cls, sup)) queue_.push_back({TaskKind::Subsumer, 0, cls, sup});
    }
    void push_link(Id role, Id from, Id to) {
        if (!has_link(role, from, to)) queue_.push_back({TaskKind::Link, role, from, to});
    }
    void process_subsumer(Id cls, Id sup);
    void process_link(Id role, Id from, Id to);
    void run();

    static std::uint64_t pair_key(Id a, Id b) noexcept { return (std::uint64_t{a} << 32) | b; }

    std::vector<Iri> class_iris_;
    std::unordered_map<Iri, Id> class_ids_;
    std::vector<Iri> role_iris_;
    std::unordered_map<Iri, Id> role_ids_;
    // Classes [0, initialized_) have their S rows seeded.
    std::size_t initialized_ = 0;

    // Axiom indexes, keyed by the class/role on the rule premise.
    std::vector<std::vector<Id>> told_supers_;                          // A ⊑ B by A
    std::vector<std::vector<std::pair<Id, Id>>> conjunctions_;          // A ⊓ other ⊑ B by A: (other, B)
    std::vector<std::vector<std::pair<Id, Id>>> existential_supers_;    // A ⊑ ∃r.B by A: (r, B)
    std::unordered_map<std::uint64_t, std::vector<Id>> existential_subs_;  // ∃r.X ⊑ B by (X, r)
    std::vector<char> is_filler_;                                       // X occurs in some ∃r.X ⊑ B
    std::vector<std::vector<std::pair<Id, Id>>> existential_subs_by_role_; // by r: (X, B)
    std::vector<std::vector<Id>> role_supers_;                          // r ⊑ s by r
    std::vector<std::vector<std::pair<Id, Id>>> chains_by_first_;       // r∘s ⊑ t by r: (s, t)
    std::vector<std::vector<std::pair<Id, Id>>> chains_by_second_;      // r∘s ⊑ t by s: (r, t)

    // Derived state.
    std::vector<Row> rows_;
    std::vector<Edges> succ_;
    std::vector<Edges> pred_;
    std::vector<KeySet> link_sets_;  // per role
    std::vector<Task> queue_;
};

}  // namespace owlport::detail
