#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace owlport {

// Base for every error raised by the library. Callers at the service boundary
// catch this and degrade to empty results.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidIri : public Error {
public:
    explicit InvalidIri(const std::string& text)
        : Error("invalid IRI: '" + text + "'") {}
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& message)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), detail_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

class ImportFetchError : public Error {
public:
    ImportFetchError(const std::string& iri, const std::string& cause)
        : Error("cannot fetch '" + iri + "': " + cause), iri_(iri) {}

    const std::string& iri() const noexcept { return iri_; }

private:
    std::string iri_;
};

// Manchester query errors.
class ParseError : public Error {
public:
    using Error::Error;
};

class UnknownEntity : public Error {
public:
    explicit UnknownEntity(const std::string& name)
        : Error("unknown entity: " + name), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class AmbiguousEntity : public Error {
public:
    AmbiguousEntity(const std::string& name, std::vector<std::string> candidates)
        : Error(describe(name, candidates)), name_(name), candidates_(std::move(candidates)) {}

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& candidates() const noexcept { return candidates_; }

private:
    static std::string describe(const std::string& name, const std::vector<std::string>& candidates) {
        std::string msg = "ambiguous entity '" + name + "':";
        for (const auto& c : candidates) msg += " <" + c + ">";
        return msg;
    }

    std::string name_;
    std::vector<std::string> candidates_;
};

class UnsupportedConstruct : public Error {
public:
    explicit UnsupportedConstruct(const std::string& keyword)
        : Error("construct outside the EL profile: " + keyword), keyword_(keyword) {}

    const std::string& keyword() const noexcept { return keyword_; }

private:
    std::string keyword_;
};

class OntologyUnavailable : public Error {
public:
    explicit OntologyUnavailable(const std::string& uri)
        : Error("ontology not in repository: " + uri), uri_(uri) {}

    const std::string& uri() const noexcept { return uri_; }

private:
    std::string uri_;
};

// Label index / literature.
class EmptyPrefix : public Error {
public:
    EmptyPrefix() : Error("completion prefix is empty after normalization") {}
};

class DuplicateDocId : public Error {
public:
    explicit DuplicateDocId(const std::string& id)
        : Error("duplicate document id: " + id), id_(id) {}

    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class EmptyQuery : public Error {
public:
    EmptyQuery() : Error("label query has no searchable phrase") {}
};

// SPARQL expansion.
class MalformedDirective : public Error {
public:
    MalformedDirective(std::size_t begin, std::size_t end, const std::string& reason)
        : Error("malformed OWL directive at bytes " + std::to_string(begin) + "-" + std::to_string(end) + ": " + reason),
          begin_(begin), end_(end), reason_(reason) {}

    std::size_t begin() const noexcept { return begin_; }
    std::size_t end() const noexcept { return end_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t begin_;
    std::size_t end_;
    std::string reason_;
};

class ExecutorError : public Error {
public:
    ExecutorError(const std::string& directive, const std::string& cause)
        : Error("OWL directive '" + directive + "' failed: " + cause), directive_(directive) {}

    const std::string& directive() const noexcept { return directive_; }

private:
    std::string directive_;
};

class NoSeparator : public Error {
public:
    explicit NoSeparator(const std::string& iri)
        : Error("no namespace separator in <" + iri + ">"), iri_(iri) {}

    const std::string& iri() const noexcept { return iri_; }

private:
    std::string iri_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace owlport
