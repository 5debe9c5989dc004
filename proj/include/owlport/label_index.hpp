#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "owlport/iri.hpp"

namespace owlport {

enum class EntityKind { Class, Property };

std::string_view to_string(EntityKind kind);

struct Suggestion {
    std::string label;  // original case
    Iri iri;
    Iri ontology_uri;
    EntityKind kind;

    friend bool operator==(const Suggestion&, const Suggestion&) = default;
};

// Prefix tree over normalized labels, keyed by Unicode scalar value.
class LabelTrie {
public:
    LabelTrie();

    // Blank labels are ignored. Re-inserting an existing entry is a no-op.
    void insert(std::string_view label, const Iri& iri, const Iri& ontology_uri, EntityKind kind);

    // Entries whose normalized label starts with the normalized prefix,
    // ordered by label length, then label, then ontology. Throws EmptyPrefix.
    std::vector<Suggestion> complete(std::string_view prefix,
                                     std::size_t limit = std::numeric_limits<std::size_t>::max()) const;

    std::size_t size() const noexcept { return entries_; }

private:
    struct Node {
        std::map<char32_t, std::uint32_t> children;
        std::vector<Suggestion> payload;
    };

    std::vector<Node> nodes_;
    std::size_t entries_ = 0;
};

}  // namespace owlport
