#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <string>

#include "owlport/iri.hpp"
#include "owlport/ontology.hpp"

namespace owlport {

struct FetchOptions {
    std::chrono::seconds timeout{30};
    std::size_t max_bytes = std::size_t{64} << 20;
};

struct HttpReply {
    int status = 0;
    std::string content_type;
    std::string body;
};

// Retrieves documents from http(s) URLs, file: URIs and local paths.
// `locations` redirects a document IRI to another path or URL.
class Fetcher {
public:
    explicit Fetcher(FetchOptions options = {}, std::map<std::string, std::string> locations = {});

    // Throws Error on any failure, including non-2xx responses and bodies
    // over the size cap.
    std::string fetch(const std::string& target) const;
    std::string fetch(const Iri& iri) const { return fetch(iri.str()); }

    // POSTs a form-encoded `query` parameter, as SPARQL endpoints expect.
    HttpReply post_sparql(const std::string& endpoint, const std::string& query) const;

    DocumentFetcher as_document_fetcher() const;
    void add_location(const std::string& iri, const std::string& location) { locations_[iri] = location; }

private:
    std::string fetch_http(const std::string& url) const;

    FetchOptions options_;
    std::map<std::string, std::string> locations_;
};

}  // namespace owlport
