#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "owlport/iri.hpp"

namespace owlport {

struct OntologySource {
    Iri uri;
    // Where to read the document instead of dereferencing `uri`: a path
    // (relative to the config file) or a URL.
    std::optional<std::string> location;
};

struct ListenAddress {
    std::string host;
    int port;
};

// Line-oriented: "URI [location]" per ontology, "key = value" settings,
// '#' comments. Keys: listen, corpus, literature_index, fetch_timeout,
// max_fetch_bytes.
struct RepositoryConfig {
    std::vector<OntologySource> ontologies;
    std::optional<std::filesystem::path> corpus_path;
    std::optional<std::filesystem::path> literature_index;
    std::string listen_address = "127.0.0.1:8080";
    std::chrono::seconds fetch_timeout{30};
    std::size_t max_fetch_bytes = std::size_t{64} << 20;
};

// Throws ConfigError.
RepositoryConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RepositoryConfig load_config(const std::filesystem::path& path);
ListenAddress parse_listen_address(std::string_view text);

}  // namespace owlport
