#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owlport/query.hpp"

namespace owlport {

enum class Field : std::uint8_t { Title, Abstract, Fulltext };

std::string_view to_string(Field field);

struct Document {
    std::string doc_id;
    std::string title;
    std::string abstract;
    std::optional<std::string> fulltext;
    std::string source_path;

    const std::string* text(Field field) const;
    friend bool operator==(const Document&, const Document&) = default;
};

// Token with its position in the analyzed sequence and its character span
// (Unicode scalar offsets, end exclusive) in the source text.
struct AnalyzedToken {
    std::string term;
    std::size_t position;
    std::size_t begin;
    std::size_t end;
};

const std::vector<std::string>& stop_words();

// Splits on runs of characters that are not ASCII letters or digits (bytes
// of multi-byte UTF-8 sequences count as letters), lowercases ASCII and drops
// stop words. Positions count surviving tokens only.
std::vector<std::string> analyze(std::string_view text);
std::vector<AnalyzedToken> analyze_with_offsets(std::string_view text);

class InvertedIndex {
public:
    struct Posting {
        std::uint32_t doc;  // index into documents()
        Field field;
        std::vector<std::uint32_t> positions;

        friend bool operator==(const Posting&, const Posting&) = default;
    };

    InvertedIndex() = default;

    const std::vector<Document>& documents() const noexcept { return documents_; }
    const std::map<std::string, std::vector<Posting>, std::less<>>& terms() const noexcept { return terms_; }
    const std::vector<Posting>* postings(std::string_view term) const;
    // Character span of the token at `position` of a document field.
    std::pair<std::size_t, std::size_t> span(std::uint32_t doc, Field field, std::size_t position) const;

    std::string to_json() const;
    static InvertedIndex from_json(std::string_view text);

    friend bool operator==(const InvertedIndex& a, const InvertedIndex& b) {
        return a.documents_ == b.documents_ && a.terms_ == b.terms_;
    }

private:
    friend InvertedIndex index_corpus(std::vector<Document> documents);
    void compute_spans();

    std::vector<Document> documents_;
    std::map<std::string, std::vector<Posting>, std::less<>> terms_;
    std::vector<std::array<std::vector<std::pair<std::size_t, std::size_t>>, 3>> spans_;
};

// Throws DuplicateDocId.
InvertedIndex index_corpus(std::vector<Document> documents);

// Disjunction of phrases, one per distinct label.
struct LabelQuery {
    std::vector<std::vector<std::string>> phrases;
    std::vector<std::string> labels;  // source label of each phrase
};

// Throws EmptyQuery when no label leaves a non-empty phrase. Labels that
// analyze to nothing are reported through `dropped`.
LabelQuery build_label_query(const std::vector<std::string>& labels, std::vector<std::string>* dropped = nullptr);
LabelQuery build_label_query(const std::vector<ClassRecord>& records, std::vector<std::string>* dropped = nullptr);

struct Highlight {
    std::size_t query;   // index of the LabelQuery
    std::size_t phrase;  // index within that query
    Field field;
    std::size_t start_token;
    std::size_t end_token;  // inclusive
    std::size_t char_begin;
    std::size_t char_end;  // exclusive

    friend bool operator==(const Highlight&, const Highlight&) = default;
};

struct Hit {
    std::string doc_id;
    std::size_t match_count = 0;
    std::vector<Field> fields;  // fields with at least one match
    std::vector<Highlight> highlights;
};

// Documents matching every query (a phrase of each occurring contiguously in
// one field), ordered by number of phrase occurrences descending, then doc_id.
std::vector<Hit> search(const InvertedIndex& index, const std::vector<LabelQuery>& queries,
                        std::size_t limit = std::numeric_limits<std::size_t>::max());

// Keyed text format: "id:", "title:", "abstract:", "fulltext:" lines, each
// value continuing over following lines until the next key.
Document parse_document(std::string_view text, const std::string& source_path);

// A directory (files listed in manifest.txt, or every *.txt file by name) or
// a single document file.
std::vector<Document> load_corpus(const std::filesystem::path& path);

}  // namespace owlport
