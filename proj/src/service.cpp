#include "owlport/service.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "owlport/errors.hpp"

namespace owlport {

using nlohmann::json;

namespace {

std::optional<std::string> param(const Params& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

HttpResponse json_response(int status, const json& body) { return {status, "application/json", body.dump() + "\n"}; }

HttpResponse error_response(int status, const std::string& message) {
    return json_response(status, json{{"error", message}});
}

std::optional<std::size_t> parse_size(const std::string& text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

bool truthy(const std::optional<std::string>& value) {
    return value && (*value == "true" || *value == "1" || *value == "yes");
}

}  // namespace

void log_line(const std::string& message) {
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    std::clog << "[owlport] " << message << '\n';
}

std::shared_ptr<const ClassifiedOntology> load_ontology(const Iri& uri, const Fetcher& fetcher) {
    Ontology ontology = parse_ontology_document(fetcher.fetch(uri), uri);
    if (!ontology.imports.empty()) ontology = resolve_imports(ontology, fetcher.as_document_fetcher());
    for (const auto& d : ontology.diagnostics)
        log_line(d.document.str() + ":" + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message);
    return std::make_shared<ClassifiedOntology>(std::move(ontology));
}

LoadResult load_repository(const RepositoryConfig& config, const Fetcher& base_fetcher) {
    Fetcher fetcher = base_fetcher;
    for (const auto& source : config.ontologies)
        if (source.location) fetcher.add_location(source.uri.str(), *source.location);

    LoadResult result;
    for (const auto& source : config.ontologies) {
        try {
            result.repository = result.repository.with(load_ontology(source.uri, fetcher));
        } catch (const std::exception& e) {
            result.failures.push_back({source.uri, e.what()});
            log_line("failed to load " + source.uri.str() + ": " + e.what());
        }
    }
    if (result.repository.ontologies().empty()) throw ConfigError("no ontology could be loaded");

    if (config.literature_index) {
        std::ifstream in(*config.literature_index, std::ios::binary);
        if (!in) throw ConfigError("cannot read literature index " + config.literature_index->string());
        std::ostringstream ss;
        ss << in.rdbuf();
        result.literature = std::make_shared<InvertedIndex>(InvertedIndex::from_json(ss.str()));
    } else if (config.corpus_path) {
        result.literature = std::make_shared<InvertedIndex>(index_corpus(load_corpus(*config.corpus_path)));
    }
    return result;
}

// ---------------------------------------------------------------------------
// RepositoryHandle

RepositoryHandle::RepositoryHandle(Snapshot initial) : current_(std::make_shared<Snapshot>(std::move(initial))) {}

std::shared_ptr<const Snapshot> RepositoryHandle::snapshot() const {
    std::lock_guard lock(read_mutex_);
    return current_;
}

std::shared_ptr<const ClassifiedOntology> RepositoryHandle::add_ontology_from_url(const Iri& uri,
                                                                                  const Fetcher& fetcher) {
    auto loaded = load_ontology(uri, fetcher);
    std::lock_guard writer(write_mutex_);
    auto base = snapshot();
    auto next = std::make_shared<Snapshot>(Snapshot{base->repository.with(loaded), base->literature});
    std::lock_guard lock(read_mutex_);
    current_ = std::move(next);
    return loaded;
}

// ---------------------------------------------------------------------------
// JSON

std::string records_to_json(const std::vector<ClassRecord>& records) {
    json out = json::array();
    for (const auto& r : records)
        out.push_back({{"ontologyURI", r.ontology_uri.str()},
                       {"classIRI", r.class_iri.str()},
                       {"label", r.label},
                       {"definition", r.definition}});
    return out.dump() + "\n";
}

std::string suggestions_to_json(const std::vector<Suggestion>& suggestions) {
    json out = json::array();
    for (const auto& s : suggestions)
        out.push_back({{"label", s.label},
                       {"iri", s.iri.str()},
                       {"ontologyURI", s.ontology_uri.str()},
                       {"kind", std::string(to_string(s.kind))}});
    return out.dump() + "\n";
}

std::string hits_to_json(const std::vector<Hit>& hits, const InvertedIndex& index,
                         const std::vector<LabelQuery>& queries) {
    std::map<std::string, const Document*> by_id;
    for (const auto& d : index.documents()) by_id.emplace(d.doc_id, &d);
    json out = json::array();
    for (const auto& hit : hits) {
        const Document* doc = by_id.at(hit.doc_id);
        json fields = json::array();
        for (Field f : hit.fields) fields.push_back(std::string(to_string(f)));
        json highlights = json::array();
        for (const auto& h : hit.highlights)
            highlights.push_back({{"query", h.query},
                                  {"label", queries.at(h.query).labels.at(h.phrase)},
                                  {"field", std::string(to_string(h.field))},
                                  {"start_token", h.start_token},
                                  {"end_token", h.end_token},
                                  {"char_begin", h.char_begin},
                                  {"char_end", h.char_end}});
        out.push_back({{"doc_id", hit.doc_id},
                       {"title", doc->title},
                       {"source_path", doc->source_path},
                       {"match_count", hit.match_count},
                       {"fields", fields},
                       {"highlights", highlights}});
    }
    return out.dump() + "\n";
}

// ---------------------------------------------------------------------------
// Service

Service::Service(std::shared_ptr<RepositoryHandle> repository, Fetcher fetcher)
    : repository_(std::move(repository)), fetcher_(std::move(fetcher)) {}

OntologyResolver Service::resolver() {
    return [this](const Iri& uri) { return repository_->add_ontology_from_url(uri, fetcher_); };
}

HttpResponse Service::ontologies() const {
    auto snap = repository_->snapshot();
    json out = json::array();
    for (const auto& o : snap->repository.ontologies()) {
        const auto& ont = o->ontology();
        out.push_back({{"ontologyURI", o->uri().str()},
                       {"ontologyIRI", ont.ontology_iri ? ont.ontology_iri->str() : ""},
                       {"classes", ont.classes.size()},
                       {"properties", ont.properties.size()},
                       {"axioms", ont.axioms.size()},
                       {"unsatisfiable", o->taxonomy().unsatisfiable().size()}});
    }
    return json_response(200, out);
}

HttpResponse Service::runquery(const Params& params) {
    auto query = param(params, "query");
    if (!query) return error_response(400, "missing parameter 'query'");
    auto snap = repository_->snapshot();
    try {
        QueryType type = QueryType::Subclass;
        if (auto t = param(params, "type"); t && !t->empty()) {
            auto parsed = parse_query_type(*t);
            if (!parsed) throw Error("unknown query type '" + *t + "'");
            type = *parsed;
        }
        std::optional<Iri> ontology;
        if (auto o = param(params, "ontology"); o && !o->empty()) {
            if (!Iri::is_absolute(*o)) throw Error("ontology must be an absolute URI");
            ontology = Iri(*o);
        }
        return {200, "application/json", records_to_json(execute_query(*query, type, ontology, snap->repository, resolver()))};
    } catch (const std::exception& e) {
        log_line("runquery '" + *query + "': " + e.what());
        return {200, "application/json", records_to_json({})};
    }
}

HttpResponse Service::complete(const Params& params) const {
    auto prefix = param(params, "prefix");
    if (!prefix) return error_response(400, "missing parameter 'prefix'");
    std::size_t limit = 10;
    if (auto l = param(params, "limit")) {
        auto parsed = parse_size(*l);
        if (!parsed || *parsed == 0) return error_response(400, "'limit' must be a positive integer");
        limit = *parsed;
    }
    try {
        return {200, "application/json", suggestions_to_json(repository_->snapshot()->repository.labels().complete(*prefix, limit))};
    } catch (const EmptyPrefix& e) {
        return error_response(400, e.what());
    }
}

HttpResponse Service::expand(const Params& params, const std::string& body) {
    auto snap = repository_->snapshot();
    std::string expanded;
    try {
        ExpansionOptions options;
        options.prefix_form = truthy(param(params, "prefixForm"));
        expanded = owlport::expand(body, repository_executor(snap->repository, resolver()), options);
    } catch (const MalformedDirective& e) {
        return error_response(400, e.what());
    } catch (const ExecutorError& e) {
        return error_response(422, e.what());
    }
    auto endpoint = param(params, "endpoint");
    if (!endpoint || endpoint->empty()) return {200, "application/sparql-query", expanded};
    try {
        auto reply = fetcher_.post_sparql(*endpoint, expanded);
        return {reply.status, reply.content_type.empty() ? "application/octet-stream" : reply.content_type, reply.body};
    } catch (const std::exception& e) {
        log_line("forwarding to " + *endpoint + ": " + e.what());
        return error_response(502, "SPARQL endpoint unreachable");
    }
}

HttpResponse Service::literature(const Params& params) {
    auto snap = repository_->snapshot();
    std::vector<std::string> texts;
    for (auto [it, end] = params.equal_range("query"); it != end; ++it) texts.push_back(it->second);
    if (texts.empty()) return error_response(400, "missing parameter 'query'");
    if (!snap->literature) return error_response(503, "no literature index loaded");
    std::size_t limit = 100;
    if (auto l = param(params, "limit")) {
        auto parsed = parse_size(*l);
        if (!parsed || *parsed == 0) return error_response(400, "'limit' must be a positive integer");
        limit = *parsed;
    }
    std::optional<Iri> ontology;
    if (auto o = param(params, "ontology"); o && !o->empty() && Iri::is_absolute(*o)) ontology = Iri(*o);

    std::vector<LabelQuery> queries;
    try {
        for (const auto& text : texts) {
            auto records = execute_query(text, QueryType::Subclass, ontology, snap->repository, resolver());
            queries.push_back(build_label_query(records));
        }
    } catch (const std::exception& e) {
        log_line("literature query: " + std::string(e.what()));
        return {200, "application/json", "[]\n"};
    }
    auto hits = search(*snap->literature, queries, limit);
    return {200, "application/json", hits_to_json(hits, *snap->literature, queries)};
}

HttpResponse Service::add_ontology(const Params& params) {
    auto url = param(params, "url");
    if (!url || url->empty()) return error_response(400, "missing parameter 'url'");
    if (!Iri::is_absolute(*url)) return error_response(400, "'url' must be an absolute URI");
    try {
        auto loaded = repository_->add_ontology_from_url(Iri(*url), fetcher_);
        return json_response(200, json{{"ontologyURI", loaded->uri().str()},
                                       {"classes", loaded->ontology().classes.size()},
                                       {"unsatisfiable", loaded->taxonomy().unsatisfiable().size()}});
    } catch (const std::exception& e) {
        log_line("adding " + *url + ": " + e.what());
        return error_response(422, std::string("could not load ontology: ") + e.what());
    }
}

}  // namespace owlport
