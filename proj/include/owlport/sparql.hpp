#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owlport/iri.hpp"
#include "owlport/query.hpp"

namespace owlport {

enum class Embedding { Values, FilterIn };

// `OWL [querytype] <service> [<ontology>] { query }` inside a VALUES block or
// an IN list.
struct OwlDirective {
    QueryType query_type = QueryType::Subclass;
    Iri service_uri;
    std::optional<Iri> ontology_uri;  // empty: every ontology
    std::string query_text;
    std::size_t begin = 0;  // byte offset of "OWL"
    std::size_t end = 0;    // one past the closing '}'
    Embedding embedding = Embedding::Values;
    std::string variable;   // bound or tested variable, with its sigil
    // FilterIn only: the whole `?var [NOT] IN ( ... )` expression.
    std::size_t in_begin = 0;
    std::size_t in_end = 0;
    bool negated = false;

    std::string_view source(std::string_view text) const { return text.substr(begin, end - begin); }
};

// Throws MalformedDirective.
std::vector<OwlDirective> scan_owl_blocks(std::string_view sparql);

struct ExpansionOptions {
    bool prefix_form = false;
    // Namespace to declare for a prefix name instead of the computed one.
    std::map<std::string, std::string> prefix_overrides;
};

using DirectiveExecutor = std::function<std::vector<Iri>(const OwlDirective&)>;

// Replaces every directive with the executor's IRIs. Text outside directives
// is copied unchanged; with prefix_form, CURIEs are emitted and missing
// PREFIX declarations are prepended. Throws MalformedDirective or
// ExecutorError; nothing is returned on failure.
std::string expand(std::string_view sparql, const DirectiveExecutor& executor, const ExpansionOptions& options = {});

struct Curie {
    std::string prefix;
    std::string curie;
    std::string namespace_iri;
    std::string local;
};

// OBO-style split at the last '_' of the final path segment, else at the
// last '/' or '#'. Throws NoSeparator.
Curie to_curie(const Iri& iri);

// Answers directives from a repository, dropping repeated IRIs.
DirectiveExecutor repository_executor(const Repository& repository, OntologyResolver resolve_missing = {});

}  // namespace owlport
