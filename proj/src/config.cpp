#include "owlport/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "owlport/errors.hpp"

namespace owlport {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, std::string_view key) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError("line " + std::to_string(line) + ": '" + std::string(key) + "' expects a number");
    return value;
}

bool is_setting(std::string_view line) {
    auto eq = line.find('=');
    if (eq == std::string_view::npos) return false;
    auto key = trim(line.substr(0, eq));
    return !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view value) {
    std::filesystem::path p{std::string(value)};
    return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

ListenAddress parse_listen_address(std::string_view text) {
    auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0) throw ConfigError("listen address must be host:port");
    int port = 0;
    auto digits = text.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || port < 0 || port > 65535)
        throw ConfigError("invalid port in listen address '" + std::string(text) + "'");
    return {std::string(text.substr(0, colon)), port};
}

RepositoryConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    RepositoryConfig config;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find(" #"); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        if (is_setting(line)) {
            auto eq = line.find('=');
            auto key = trim(line.substr(0, eq));
            auto value = trim(line.substr(eq + 1));
            if (key == "listen") {
                parse_listen_address(value);
                config.listen_address = std::string(value);
            } else if (key == "corpus") {
                config.corpus_path = resolve(base_dir, value);
            } else if (key == "literature_index") {
                config.literature_index = resolve(base_dir, value);
            } else if (key == "fetch_timeout") {
                config.fetch_timeout = std::chrono::seconds(parse_number<long>(value, line_no, key));
            } else if (key == "max_fetch_bytes") {
                config.max_fetch_bytes = parse_number<std::size_t>(value, line_no, key);
            } else {
                throw ConfigError("line " + std::to_string(line_no) + ": unknown setting '" + std::string(key) + "'");
            }
            continue;
        }

        auto space = line.find_first_of(" \t");
        auto uri = line.substr(0, space);
        if (!Iri::is_absolute(uri))
            throw ConfigError("line " + std::to_string(line_no) + ": not an absolute URI: '" + std::string(uri) + "'");
        OntologySource source{Iri(std::string(uri)), std::nullopt};
        if (space != std::string_view::npos) {
            auto location = trim(line.substr(space));
            source.location = Iri::is_absolute(location) && location.find("://") != std::string_view::npos
                                  ? std::string(location)
                                  : resolve(base_dir, location).string();
        }
        config.ontologies.push_back(std::move(source));
    }
    return config;
}

RepositoryConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

}  // namespace owlport
