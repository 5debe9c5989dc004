#include "owlport/label_index.hpp"

#include <algorithm>
#include <tuple>

#include "owlport/errors.hpp"
#include "owlport/text.hpp"

namespace owlport {

std::string_view to_string(EntityKind kind) { return kind == EntityKind::Class ? "class" : "property"; }

LabelTrie::LabelTrie() : nodes_(1) {}

void LabelTrie::insert(std::string_view label, const Iri& iri, const Iri& ontology_uri, EntityKind kind) {
    const std::u32string key = decode_utf8(normalize_label(label));
    if (key.empty()) return;
    std::uint32_t node = 0;
    for (char32_t c : key) {
        auto it = nodes_[node].children.find(c);
        if (it == nodes_[node].children.end()) {
            const auto child = static_cast<std::uint32_t>(nodes_.size());
            nodes_[node].children.emplace(c, child);
            nodes_.emplace_back();
            node = child;
        } else {
            node = it->second;
        }
    }
    Suggestion entry{std::string(label), iri, ontology_uri, kind};
    auto& payload = nodes_[node].payload;
    if (std::find(payload.begin(), payload.end(), entry) != payload.end()) return;
    payload.push_back(std::move(entry));
    ++entries_;
}

std::vector<Suggestion> LabelTrie::complete(std::string_view prefix, std::size_t limit) const {
    const std::u32string key = decode_utf8(normalize_label(prefix));
    if (key.empty()) throw EmptyPrefix();

    std::uint32_t start = 0;
    for (char32_t c : key) {
        auto it = nodes_[start].children.find(c);
        if (it == nodes_[start].children.end()) return {};
        start = it->second;
    }

    struct Ranked {
        std::size_t length;
        std::u32string normalized;
        const Suggestion* entry;
    };
    std::vector<Ranked> ranked;
    std::vector<std::pair<std::uint32_t, std::u32string>> stack{{start, key}};
    while (!stack.empty()) {
        auto [node, text] = std::move(stack.back());
        stack.pop_back();
        for (const auto& s : nodes_[node].payload) ranked.push_back({text.size(), text, &s});
        for (const auto& [c, child] : nodes_[node].children) stack.emplace_back(child, text + c);
    }
    auto rank = [](const Ranked& r) {
        return std::tie(r.length, r.normalized, r.entry->ontology_uri, r.entry->label, r.entry->iri);
    };
    std::sort(ranked.begin(), ranked.end(), [&](const Ranked& a, const Ranked& b) {
        if (rank(a) != rank(b)) return rank(a) < rank(b);
        return a.entry->kind < b.entry->kind;
    });

    std::vector<Suggestion> out;
    for (std::size_t i = 0; i < ranked.size() && i < limit; ++i) out.push_back(*ranked[i].entry);
    return out;
}

}  // namespace owlport
