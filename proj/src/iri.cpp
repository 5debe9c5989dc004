#include "owlport/iri.hpp"

#include <cctype>

#include "owlport/errors.hpp"

namespace owlport {

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!is_absolute(value_)) throw InvalidIri(value_);
}

bool Iri::is_absolute(std::string_view text) noexcept {
    if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front()))) return false;
    for (std::size_t i = 1; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c == ':') return i + 1 < text.size();
        if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
    }
    return false;
}

std::string_view Iri::local_name() const noexcept {
    std::string_view v = value_;
    if (auto hash = v.rfind('#'); hash != std::string_view::npos) return v.substr(hash + 1);
    auto slash = v.rfind('/');
    if (slash != std::string_view::npos) return v.substr(slash + 1);
    if (auto colon = v.find(':'); colon != std::string_view::npos) return v.substr(colon + 1);
    return v;
}

namespace vocab {

const Iri& top() {
    static const Iri iri{std::string(thing)};
    return iri;
}

const Iri& bottom() {
    static const Iri iri{std::string(nothing)};
    return iri;
}

bool is_fresh(const Iri& iri) noexcept {
    return iri.str().starts_with(fresh_namespace);
}

}  // namespace vocab
}  // namespace owlport
