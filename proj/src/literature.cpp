#include "owlport/literature.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "owlport/errors.hpp"

namespace owlport {

namespace {

constexpr std::array<Field, 3> all_fields = {Field::Title, Field::Abstract, Field::Fulltext};

bool is_token_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool is_stop_word(std::string_view term) {
    const auto& words = stop_words();
    return std::binary_search(words.begin(), words.end(), term);
}

std::optional<Field> field_from_string(std::string_view name) {
    for (Field f : all_fields)
        if (to_string(f) == name) return f;
    return std::nullopt;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trim(std::string_view s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(begin, end - begin + 1));
}

}  // namespace

std::string_view to_string(Field field) {
    switch (field) {
    case Field::Title:
        return "title";
    case Field::Abstract:
        return "abstract";
    case Field::Fulltext:
        return "fulltext";
    }
    return "title";
}

const std::string* Document::text(Field field) const {
    switch (field) {
    case Field::Title:
        return &title;
    case Field::Abstract:
        return &abstract;
    case Field::Fulltext:
        return fulltext ? &*fulltext : nullptr;
    }
    return nullptr;
}

const std::vector<std::string>& stop_words() {
    static const std::vector<std::string> words = {
        "a",    "an",   "and",   "are",  "as",    "at",   "be",    "but",  "by",   "for", "if",
        "in",   "into", "is",    "it",   "no",    "not",  "of",    "on",   "or",   "such", "that",
        "the",  "their", "then", "there", "these", "they", "this", "to",   "was",  "will", "with"};
    return words;
}

std::vector<AnalyzedToken> analyze_with_offsets(std::string_view text) {
    std::vector<AnalyzedToken> out;
    std::size_t i = 0, chars = 0;
    auto advance = [&] {
        if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) ++chars;
        ++i;
    };
    while (i < text.size()) {
        if (!is_token_byte(static_cast<unsigned char>(text[i]))) {
            advance();
            continue;
        }
        const std::size_t begin_chars = chars;
        std::string term;
        while (i < text.size() && is_token_byte(static_cast<unsigned char>(text[i]))) {
            char c = text[i];
            term.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
            advance();
        }
        if (is_stop_word(term)) continue;
        out.push_back({std::move(term), out.size(), begin_chars, chars});
    }
    return out;
}

std::vector<std::string> analyze(std::string_view text) {
    std::vector<std::string> out;
    for (auto& t : analyze_with_offsets(text)) out.push_back(std::move(t.term));
    return out;
}

// ---------------------------------------------------------------------------
// Index

InvertedIndex index_corpus(std::vector<Document> documents) {
    std::set<std::string> ids;
    for (const auto& d : documents)
        if (!ids.insert(d.doc_id).second) throw DuplicateDocId(d.doc_id);

    InvertedIndex index;
    index.documents_ = std::move(documents);
    for (std::uint32_t doc = 0; doc < index.documents_.size(); ++doc) {
        for (Field field : all_fields) {
            const std::string* text = index.documents_[doc].text(field);
            if (!text) continue;
            std::map<std::string, std::vector<std::uint32_t>> local;
            for (const auto& t : analyze_with_offsets(*text))
                local[t.term].push_back(static_cast<std::uint32_t>(t.position));
            for (auto& [term, positions] : local) {
                auto it = index.terms_.find(term);
                if (it == index.terms_.end()) it = index.terms_.emplace(term, std::vector<InvertedIndex::Posting>{}).first;
                it->second.push_back({doc, field, std::move(positions)});
            }
        }
    }
    index.compute_spans();
    return index;
}

void InvertedIndex::compute_spans() {
    spans_.assign(documents_.size(), {});
    for (std::size_t doc = 0; doc < documents_.size(); ++doc) {
        for (Field field : all_fields) {
            const std::string* text = documents_[doc].text(field);
            if (!text) continue;
            auto& spans = spans_[doc][static_cast<std::size_t>(field)];
            for (const auto& t : analyze_with_offsets(*text)) spans.emplace_back(t.begin, t.end);
        }
    }
}

const std::vector<InvertedIndex::Posting>* InvertedIndex::postings(std::string_view term) const {
    auto it = terms_.find(term);
    return it == terms_.end() ? nullptr : &it->second;
}

std::pair<std::size_t, std::size_t> InvertedIndex::span(std::uint32_t doc, Field field, std::size_t position) const {
    return spans_.at(doc)[static_cast<std::size_t>(field)].at(position);
}

std::string InvertedIndex::to_json() const {
    nlohmann::json docs = nlohmann::json::array();
    for (const auto& d : documents_) {
        nlohmann::json j = {{"doc_id", d.doc_id}, {"title", d.title}, {"abstract", d.abstract},
                            {"source_path", d.source_path}};
        if (d.fulltext) j["fulltext"] = *d.fulltext;
        docs.push_back(std::move(j));
    }
    nlohmann::json terms = nlohmann::json::object();
    for (const auto& [term, list] : terms_) {
        nlohmann::json postings = nlohmann::json::array();
        for (const auto& p : list) postings.push_back({p.doc, to_string(p.field), p.positions});
        terms[term] = std::move(postings);
    }
    return nlohmann::json{{"format", "owlport-literature-index"}, {"version", 1}, {"documents", docs}, {"terms", terms}}
        .dump();
}

InvertedIndex InvertedIndex::from_json(std::string_view text) {
    InvertedIndex index;
    try {
        auto j = nlohmann::json::parse(text);
        if (j.value("format", "") != "owlport-literature-index") throw Error("not a literature index");
        for (const auto& d : j.at("documents")) {
            Document doc{d.at("doc_id").get<std::string>(), d.at("title").get<std::string>(),
                         d.at("abstract").get<std::string>(), std::nullopt, d.value("source_path", "")};
            if (d.contains("fulltext")) doc.fulltext = d.at("fulltext").get<std::string>();
            index.documents_.push_back(std::move(doc));
        }
        for (const auto& [term, list] : j.at("terms").items()) {
            auto& postings = index.terms_[term];
            for (const auto& p : list) {
                auto field = field_from_string(p.at(1).get<std::string>());
                auto doc = p.at(0).get<std::uint32_t>();
                if (!field || doc >= index.documents_.size()) throw Error("bad posting for term '" + term + "'");
                postings.push_back({doc, *field, p.at(2).get<std::vector<std::uint32_t>>()});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed literature index: ") + e.what());
    }
    index.compute_spans();
    return index;
}

// ---------------------------------------------------------------------------
// Queries

LabelQuery build_label_query(const std::vector<std::string>& labels, std::vector<std::string>* dropped) {
    LabelQuery query;
    std::set<std::vector<std::string>> seen;
    for (const auto& label : labels) {
        auto phrase = analyze(label);
        if (phrase.empty()) {
            if (dropped) dropped->push_back(label);
            continue;
        }
        if (!seen.insert(phrase).second) continue;
        query.phrases.push_back(std::move(phrase));
        query.labels.push_back(label);
    }
    if (query.phrases.empty()) throw EmptyQuery();
    return query;
}

LabelQuery build_label_query(const std::vector<ClassRecord>& records, std::vector<std::string>* dropped) {
    std::vector<std::string> labels;
    labels.reserve(records.size());
    for (const auto& r : records) labels.push_back(r.label);
    return build_label_query(labels, dropped);
}

namespace {

// Start positions of `phrase` in each (doc, field), from the postings.
std::map<std::pair<std::uint32_t, Field>, std::vector<std::uint32_t>> occurrences(
    const InvertedIndex& index, const std::vector<std::string>& phrase) {
    std::map<std::pair<std::uint32_t, Field>, std::vector<std::uint32_t>> out;
    const auto* first = index.postings(phrase.front());
    if (!first) return out;
    std::vector<std::unordered_map<std::uint64_t, const std::vector<std::uint32_t>*>> rest;
    for (std::size_t k = 1; k < phrase.size(); ++k) {
        const auto* list = index.postings(phrase[k]);
        if (!list) return out;
        auto& lookup = rest.emplace_back();
        for (const auto& p : *list) lookup.emplace(std::uint64_t{p.doc} << 8 | static_cast<std::uint64_t>(p.field), &p.positions);
    }
    for (const auto& p : *first) {
        const std::uint64_t key = std::uint64_t{p.doc} << 8 | static_cast<std::uint64_t>(p.field);
        std::vector<const std::vector<std::uint32_t>*> lists;
        bool present = true;
        for (const auto& lookup : rest) {
            auto it = lookup.find(key);
            if (it == lookup.end()) {
                present = false;
                break;
            }
            lists.push_back(it->second);
        }
        if (!present) continue;
        for (std::uint32_t start : p.positions) {
            bool match = true;
            for (std::size_t k = 0; k < lists.size() && match; ++k)
                match = std::binary_search(lists[k]->begin(), lists[k]->end(), start + static_cast<std::uint32_t>(k + 1));
            if (match) out[{p.doc, p.field}].push_back(start);
        }
    }
    return out;
}

}  // namespace

std::vector<Hit> search(const InvertedIndex& index, const std::vector<LabelQuery>& queries, std::size_t limit) {
    if (queries.empty()) return {};
    std::map<std::uint32_t, std::vector<Highlight>> per_doc;
    std::map<std::uint32_t, std::size_t> matched_queries;
    for (std::size_t q = 0; q < queries.size(); ++q) {
        std::set<std::uint32_t> matched;
        for (std::size_t ph = 0; ph < queries[q].phrases.size(); ++ph) {
            const auto& phrase = queries[q].phrases[ph];
            if (phrase.empty()) continue;
            for (const auto& [where, starts] : occurrences(index, phrase)) {
                auto [doc, field] = where;
                matched.insert(doc);
                for (std::uint32_t start : starts) {
                    const std::size_t last = start + phrase.size() - 1;
                    per_doc[doc].push_back({q, ph, field, start, last, index.span(doc, field, start).first,
                                            index.span(doc, field, last).second});
                }
            }
        }
        for (auto doc : matched) ++matched_queries[doc];
    }

    std::vector<Hit> hits;
    for (auto& [doc, highlights] : per_doc) {
        if (matched_queries[doc] != queries.size()) continue;
        std::sort(highlights.begin(), highlights.end(), [](const Highlight& a, const Highlight& b) {
            return std::tie(a.query, a.phrase, a.field, a.start_token) <
                   std::tie(b.query, b.phrase, b.field, b.start_token);
        });
        Hit hit;
        hit.doc_id = index.documents()[doc].doc_id;
        hit.match_count = highlights.size();
        std::set<Field> fields;
        for (const auto& h : highlights) fields.insert(h.field);
        hit.fields.assign(fields.begin(), fields.end());
        hit.highlights = std::move(highlights);
        hits.push_back(std::move(hit));
    }
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
        return a.match_count != b.match_count ? a.match_count > b.match_count : a.doc_id < b.doc_id;
    });
    if (hits.size() > limit) hits.resize(limit);
    return hits;
}

// ---------------------------------------------------------------------------
// Corpus files

Document parse_document(std::string_view text, const std::string& source_path) {
    Document doc;
    doc.source_path = source_path;
    std::string* current = nullptr;
    std::string fulltext;
    bool has_fulltext = false;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto colon = line.find(':');
        std::string key = colon == std::string::npos ? "" : trim(std::string_view(line).substr(0, colon));
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
        std::string* target = key == "id"         ? &doc.doc_id
                              : key == "title"    ? &doc.title
                              : key == "abstract" ? &doc.abstract
                              : key == "fulltext" ? &fulltext
                                                  : nullptr;
        if (target) {
            current = target;
            if (target == &fulltext) has_fulltext = true;
            *current = trim(std::string_view(line).substr(colon + 1));
        } else if (current) {
            const std::string rest = trim(line);
            if (rest.empty()) continue;
            if (!current->empty()) current->push_back('\n');
            *current += rest;
        }
    }
    if (has_fulltext) doc.fulltext = std::move(fulltext);
    if (doc.doc_id.empty()) doc.doc_id = std::filesystem::path(source_path).stem().string();
    return doc;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        const fs::path manifest = path / "manifest.txt";
        if (fs::exists(manifest)) {
            std::istringstream in(read_file(manifest));
            std::string line;
            while (std::getline(in, line)) {
                line = trim(line);
                if (!line.empty() && line[0] != '#') files.push_back(path / line);
            }
        } else {
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
        }
    } else if (fs::is_regular_file(path)) {
        files.push_back(path);
    } else {
        throw Error("corpus not found: " + path.string());
    }
    std::vector<Document> docs;
    for (const auto& f : files) docs.push_back(parse_document(read_file(f), f.string()));
    return docs;
}

}  // namespace owlport
