#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace owlport {

// An absolute IRI. Construction validates that the text starts with a URI
// scheme ("http:", "file:", "urn:" ...).
class Iri {
public:
    Iri() = default;
    explicit Iri(std::string value);

    const std::string& str() const noexcept { return value_; }
    bool empty() const noexcept { return value_.empty(); }

    // Text after the last '#', else after the last '/', else after the scheme.
    std::string_view local_name() const noexcept;

    static bool is_absolute(std::string_view text) noexcept;

    friend bool operator==(const Iri&, const Iri&) = default;
    friend auto operator<=>(const Iri&, const Iri&) = default;

private:
    std::string value_;
};

namespace vocab {
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view thing = "http://www.w3.org/2002/07/owl#Thing";
inline constexpr std::string_view nothing = "http://www.w3.org/2002/07/owl#Nothing";
inline constexpr std::string_view label = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view definition = "http://purl.obolibrary.org/obo/IAO_0000115";
// Classes and properties invented by normalization live here.
inline constexpr std::string_view fresh_namespace = "urn:owlport:fresh#";

const Iri& top();
const Iri& bottom();
bool is_fresh(const Iri& iri) noexcept;
}  // namespace vocab

}  // namespace owlport

template <>
struct std::hash<owlport::Iri> {
    std::size_t operator()(const owlport::Iri& iri) const noexcept {
        return std::hash<std::string>{}(iri.str());
    }
};
