#include "owlport/manchester.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "owlport/errors.hpp"
#include "owlport/text.hpp"

namespace owlport {

namespace {

constexpr std::array<std::string_view, 10> unsupported_keywords = {
    "or", "not", "only", "min", "max", "exactly", "value", "self", "inverse", "that"};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_delimiter(char c) { return is_space(c) || c == '(' || c == ')' || c == '\'' || c == '<' || c == '>'; }

bool is_reserved(std::string_view word) {
    const std::string lower = normalize_label(word);
    if (lower == "and" || lower == "some") return true;
    return std::find(unsupported_keywords.begin(), unsupported_keywords.end(), lower) != unsupported_keywords.end();
}

std::string quote_if_needed(const std::string& name) {
    bool bare = !name.empty() && name != "owl:Thing" && name != "owl:Nothing" && !is_reserved(name) &&
                std::none_of(name.begin(), name.end(), [](char c) { return is_delimiter(c) || c == '\\'; });
    if (bare) return name;
    std::string out = "'";
    for (char c : name) {
        if (c == '\'' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

struct Token {
    enum class Kind { Word, Quoted, IriRef, Open, Close, End };
    Kind kind;
    std::string text;
    std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
        while (i < text.size() && is_space(text[i])) ++i;
        if (i == text.size()) break;
        const std::size_t start = i;
        const char c = text[i];
        if (c == '(' || c == ')') {
            out.push_back({c == '(' ? Token::Kind::Open : Token::Kind::Close, std::string(1, c), start});
            ++i;
        } else if (c == '\'') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\\' && i + 1 < text.size()) {
                    value.push_back(text[i + 1]);
                    i += 2;
                } else if (text[i] == '\'') {
                    closed = true;
                    ++i;
                    break;
                } else {
                    value.push_back(text[i++]);
                }
            }
            if (!closed) throw ParseError("unterminated quoted name at offset " + std::to_string(start));
            out.push_back({Token::Kind::Quoted, std::move(value), start});
        } else if (c == '<') {
            auto close = text.find('>', i);
            if (close == std::string_view::npos) throw ParseError("unterminated IRI at offset " + std::to_string(start));
            out.push_back({Token::Kind::IriRef, std::string(text.substr(i + 1, close - i - 1)), start});
            i = close + 1;
        } else if (c == '>') {
            throw ParseError("unexpected '>' at offset " + std::to_string(start));
        } else {
            while (i < text.size() && !is_delimiter(text[i])) ++i;
            out.push_back({Token::Kind::Word, std::string(text.substr(start, i - start)), start});
        }
    }
    out.push_back({Token::Kind::End, "", text.size()});
    return out;
}

class Parser {
public:
    // With `resolving` false only the syntax is checked, so malformed input
    // reports ParseError before any name lookup fails.
    Parser(const std::vector<Token>& tokens, const ShortFormProvider& shortforms, bool resolving)
        : tokens_(tokens), shortforms_(shortforms), resolving_(resolving) {}

    ClassExpression parse() {
        if (peek().kind == Token::Kind::End) throw ParseError("empty class expression");
        auto expr = expression();
        if (peek().kind != Token::Kind::End) unexpected(peek());
        return expr;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
    const Token& next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

    static bool is_keyword(const Token& t, std::string_view keyword) {
        return t.kind == Token::Kind::Word && normalize_label(t.text) == keyword;
    }

    [[noreturn]] static void unexpected(const Token& t) {
        if (t.kind == Token::Kind::Word) {
            const std::string lower = normalize_label(t.text);
            if (std::find(unsupported_keywords.begin(), unsupported_keywords.end(), lower) !=
                unsupported_keywords.end())
                throw UnsupportedConstruct(lower);
        }
        if (t.kind == Token::Kind::End) throw ParseError("unexpected end of expression");
        throw ParseError("unexpected '" + t.text + "' at offset " + std::to_string(t.offset));
    }

    static bool is_name(const Token& t) {
        return t.kind == Token::Kind::Quoted || t.kind == Token::Kind::IriRef ||
               (t.kind == Token::Kind::Word && !is_reserved(t.text));
    }

    ClassExpression expression() {
        std::vector<ClassExpression> parts{conjunct()};
        while (is_keyword(peek(), "and")) {
            next();
            parts.push_back(conjunct());
        }
        return parts.size() == 1 ? std::move(parts.front()) : ClassExpression::conjunction(std::move(parts));
    }

    ClassExpression conjunct() {
        if (is_name(peek()) && is_keyword(peek(1), "some")) {
            Iri property = resolve_property(next());
            next();
            return ClassExpression::some(std::move(property), conjunct());
        }
        return primary();
    }

    ClassExpression primary() {
        const Token& t = peek();
        if (t.kind == Token::Kind::Open) {
            next();
            auto inner = expression();
            if (peek().kind != Token::Kind::Close) unexpected(peek());
            next();
            return inner;
        }
        if (!is_name(t)) unexpected(t);
        next();
        if (t.kind == Token::Kind::Word && t.text == "owl:Thing") return ClassExpression::top();
        if (t.kind == Token::Kind::Word && t.text == "owl:Nothing") return ClassExpression::bottom();
        if (t.kind == Token::Kind::IriRef) return ClassExpression::named(iri_of(t));
        if (!resolving_) return ClassExpression::top();
        return ClassExpression::named(unique(t.text, shortforms_.resolve_class(t.text)));
    }

    Iri resolve_property(const Token& t) {
        if (t.kind == Token::Kind::IriRef) return iri_of(t);
        if (!resolving_) return vocab::top();
        return unique(t.text, shortforms_.resolve_property(t.text));
    }

    static Iri iri_of(const Token& t) {
        try {
            return Iri(t.text);
        } catch (const InvalidIri&) {
            throw ParseError("invalid IRI <" + t.text + "> at offset " + std::to_string(t.offset));
        }
    }

    static Iri unique(const std::string& name, const std::set<Iri>& found) {
        if (found.empty()) throw UnknownEntity(name);
        if (found.size() > 1) {
            std::vector<std::string> candidates;
            for (const auto& iri : found) candidates.push_back(iri.str());
            throw AmbiguousEntity(name, std::move(candidates));
        }
        return *found.begin();
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;
    const ShortFormProvider& shortforms_;
    bool resolving_;
};

void render(const ClassExpression& expr, const ShortFormProvider& shortforms, std::string& out) {
    switch (expr.kind()) {
    case ClassExpression::Kind::Top:
        out += "owl:Thing";
        return;
    case ClassExpression::Kind::Bottom:
        out += "owl:Nothing";
        return;
    case ClassExpression::Kind::Named:
        out += shortforms.render_class(expr.iri());
        return;
    case ClassExpression::Kind::Conjunction: {
        bool first = true;
        for (const auto& op : expr.operands()) {
            if (!first) out += " and ";
            first = false;
            render(op, shortforms, out);
        }
        return;
    }
    case ClassExpression::Kind::Existential:
        out += shortforms.render_property(expr.property());
        out += " some ";
        if (expr.filler().is_atomic()) {
            render(expr.filler(), shortforms, out);
        } else {
            out += '(';
            render(expr.filler(), shortforms, out);
            out += ')';
        }
        return;
    }
}

}  // namespace

void ShortFormProvider::Table::add(const Iri& iri, const std::string* label) {
    by_local[std::string(iri.local_name())].insert(iri);
    if (label && !normalize_label(*label).empty()) {
        by_label[normalize_label(*label)].insert(iri);
        label_of.try_emplace(iri, *label);
    }
}

std::set<Iri> ShortFormProvider::Table::resolve(std::string_view name) const {
    if (auto it = by_label.find(normalize_label(name)); it != by_label.end()) return it->second;
    if (auto it = by_local.find(std::string(name)); it != by_local.end()) return it->second;
    return {};
}

std::string ShortFormProvider::Table::render(const Iri& iri) const {
    auto single = [&](const std::set<Iri>& s) { return s.size() == 1 && *s.begin() == iri; };
    if (auto it = label_of.find(iri); it != label_of.end() && single(resolve(it->second)))
        return quote_if_needed(it->second);
    const std::string local(iri.local_name());
    if (!local.empty() && single(resolve(local))) return quote_if_needed(local);
    return "<" + iri.str() + ">";
}

ShortFormProvider::ShortFormProvider(const Ontology& ontology) {
    auto label = [](const std::map<Iri, std::string>& labels, const Iri& iri) {
        auto it = labels.find(iri);
        return it == labels.end() ? nullptr : &it->second;
    };
    for (const auto& c : ontology.classes) add_class(c, label(ontology.labels, c));
    for (const auto& p : ontology.properties) add_property(p, label(ontology.property_labels, p));
}

void ShortFormProvider::add_class(const Iri& iri, const std::string* label) { class_.add(iri, label); }
void ShortFormProvider::add_property(const Iri& iri, const std::string* label) { property_.add(iri, label); }
std::set<Iri> ShortFormProvider::resolve_class(std::string_view name) const { return class_.resolve(name); }
std::set<Iri> ShortFormProvider::resolve_property(std::string_view name) const { return property_.resolve(name); }
std::string ShortFormProvider::render_class(const Iri& iri) const { return class_.render(iri); }
std::string ShortFormProvider::render_property(const Iri& iri) const { return property_.render(iri); }

ClassExpression parse_manchester(std::string_view text, const ShortFormProvider& shortforms) {
    const auto tokens = tokenize(text);
    Parser(tokens, shortforms, false).parse();
    return Parser(tokens, shortforms, true).parse();
}

std::string render_manchester(const ClassExpression& expr, const ShortFormProvider& shortforms) {
    std::string out;
    render(expr, shortforms, out);
    return out;
}

}  // namespace owlport
