#include "owlport/fetch.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include <httplib.h>

#include "owlport/errors.hpp"

namespace owlport {

namespace {

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string path;    // with query string
};

Url split_url(const std::string& url) {
    static const std::regex pattern(R"(^(https?://[^/?#]+)([^#]*))", std::regex::icase);
    std::smatch m;
    if (!std::regex_search(url, m, pattern)) throw Error("unsupported URL: " + url);
    std::string path = m[2].str();
    return {m[1].str(), path.empty() ? "/" : path};
}

std::string read_local(const std::string& path, std::size_t max_bytes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string body = ss.str();
    if (body.size() > max_bytes) throw Error("document exceeds size limit: " + path);
    return body;
}

std::string percent_decode(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
            std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
            out.push_back(static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16)));
            i += 2;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

httplib::Client make_client(const std::string& origin, const FetchOptions& options) {
    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_write_timeout(options.timeout);
    return client;
}

}  // namespace

Fetcher::Fetcher(FetchOptions options, std::map<std::string, std::string> locations)
    : options_(options), locations_(std::move(locations)) {}

std::string Fetcher::fetch(const std::string& target) const {
    if (auto it = locations_.find(target); it != locations_.end() && it->second != target) return fetch(it->second);
    if (target.starts_with("http://") || target.starts_with("https://")) return fetch_http(target);
    if (target.starts_with("file://")) return read_local(percent_decode(target.substr(7)), options_.max_bytes);
    if (target.starts_with("file:")) return read_local(percent_decode(target.substr(5)), options_.max_bytes);
    if (Iri::is_absolute(target)) throw Error("no retrieval method for <" + target + ">");
    return read_local(target, options_.max_bytes);
}

std::string Fetcher::fetch_http(const std::string& url) const {
    const Url parts = split_url(url);
    auto client = make_client(parts.origin, options_);
    std::string body;
    bool too_large = false;
    auto result = client.Get(parts.path, [&](const char* data, std::size_t length) {
        if (body.size() + length > options_.max_bytes) {
            too_large = true;
            return false;
        }
        body.append(data, length);
        return true;
    });
    if (too_large) throw Error("document exceeds size limit: " + url);
    if (!result) throw Error("cannot fetch " + url + ": " + httplib::to_string(result.error()));
    if (result->status < 200 || result->status >= 300)
        throw Error("cannot fetch " + url + ": HTTP " + std::to_string(result->status));
    return body;
}

HttpReply Fetcher::post_sparql(const std::string& endpoint, const std::string& query) const {
    const Url parts = split_url(endpoint);
    auto client = make_client(parts.origin, options_);
    httplib::Headers headers = {{"Accept", "application/sparql-results+json, */*;q=0.5"}};
    auto result = client.Post(parts.path, headers, httplib::Params{{"query", query}});
    if (!result) throw Error("cannot reach " + endpoint + ": " + httplib::to_string(result.error()));
    return {result->status, result->get_header_value("Content-Type"), result->body};
}

DocumentFetcher Fetcher::as_document_fetcher() const {
    return [this](const Iri& iri) { return fetch(iri); };
}

}  // namespace owlport
