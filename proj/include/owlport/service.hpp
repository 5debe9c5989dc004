#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "owlport/config.hpp"
#include "owlport/fetch.hpp"
#include "owlport/literature.hpp"
#include "owlport/query.hpp"
#include "owlport/sparql.hpp"

namespace owlport {

// Fetches, parses, resolves imports and classifies one ontology.
std::shared_ptr<const ClassifiedOntology> load_ontology(const Iri& uri, const Fetcher& fetcher);

struct LoadFailure {
    Iri uri;
    std::string reason;
};

struct LoadResult {
    Repository repository;
    std::shared_ptr<const InvertedIndex> literature;
    std::vector<LoadFailure> failures;
};

// Loads every configured ontology, skipping (and reporting) those that fail.
// Throws ConfigError when none loads.
LoadResult load_repository(const RepositoryConfig& config, const Fetcher& fetcher);

// What a request sees: one repository and literature index, never modified.
struct Snapshot {
    Repository repository;
    std::shared_ptr<const InvertedIndex> literature;
};

// Publishes snapshots atomically; readers keep whichever snapshot they took.
class RepositoryHandle {
public:
    explicit RepositoryHandle(Snapshot initial);

    std::shared_ptr<const Snapshot> snapshot() const;

    // Loads `uri` and publishes a snapshot containing it (replacing an
    // ontology with the same URI). On failure throws and leaves the
    // published snapshot untouched.
    std::shared_ptr<const ClassifiedOntology> add_ontology_from_url(const Iri& uri, const Fetcher& fetcher);

private:
    mutable std::mutex read_mutex_;
    std::mutex write_mutex_;
    std::shared_ptr<const Snapshot> current_;
};

std::string records_to_json(const std::vector<ClassRecord>& records);
std::string suggestions_to_json(const std::vector<Suggestion>& suggestions);
std::string hits_to_json(const std::vector<Hit>& hits, const InvertedIndex& index, const std::vector<LabelQuery>& queries);

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

using Params = std::multimap<std::string, std::string>;

// Request handlers, independent of the HTTP server. Each reads one snapshot.
class Service {
public:
    Service(std::shared_ptr<RepositoryHandle> repository, Fetcher fetcher);

    HttpResponse ontologies() const;
    HttpResponse runquery(const Params& params);
    HttpResponse complete(const Params& params) const;
    HttpResponse expand(const Params& params, const std::string& body);
    HttpResponse literature(const Params& params);
    HttpResponse add_ontology(const Params& params);

    RepositoryHandle& repository() noexcept { return *repository_; }
    const Fetcher& fetcher() const noexcept { return fetcher_; }

private:
    OntologyResolver resolver();

    std::shared_ptr<RepositoryHandle> repository_;
    Fetcher fetcher_;
};

// Serves the handlers under /service/ with permissive CORS headers. Blocks
// until stop_server() is called from another thread.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    // Binds `port` (0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    void listen_after_bind();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

void log_line(const std::string& message);

}  // namespace owlport
