#include "owlport/sparql.hpp"

#include <algorithm>
#include <set>

#include "owlport/errors.hpp"

namespace owlport {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80; }
bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }
bool is_word_char(unsigned char c) { return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == ':'; }
bool is_iriref_char(unsigned char c) {
    return c > 0x20 && c != '<' && c != '>' && c != '"' && c != '{' && c != '}' && c != '|' && c != '^' && c != '`' &&
           c != '\\';
}

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

struct Token {
    enum class Kind { Word, Var, IriRef, Open, Close, Other };
    Kind kind;
    std::size_t begin;
    std::size_t end;
};

struct Bracket {
    char open;
    std::size_t position;
    std::size_t token;  // index of the opening token
    std::vector<std::size_t> directives;
};

struct ScanResult {
    std::vector<OwlDirective> directives;
    std::map<std::string, std::string> prefixes;
};

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    ScanResult run() {
        while (skip_space_and_comments(), i_ < text_.size()) {
            const std::size_t start = i_;
            const auto c = static_cast<unsigned char>(text_[i_]);
            if (c == '"' || c == '\'') {
                skip_string();
            } else if (c == '<') {
                std::size_t j = i_ + 1;
                while (j < text_.size() && is_iriref_char(static_cast<unsigned char>(text_[j]))) ++j;
                if (j < text_.size() && text_[j] == '>') {
                    i_ = j + 1;
                    push(Token::Kind::IriRef, start);
                    record_prefix_if_complete();
                } else {
                    ++i_;
                    push(Token::Kind::Other, start);
                }
            } else if (c == '{' || c == '(' || c == '[') {
                ++i_;
                push(Token::Kind::Open, start);
                stack_.push_back({static_cast<char>(c), start, tokens_.size() - 1, {}});
            } else if (c == '}' || c == ')' || c == ']') {
                ++i_;
                push(Token::Kind::Close, start);
                close_bracket(start);
            } else if ((c == '?' || c == '$') && i_ + 1 < text_.size() &&
                       is_word_char(static_cast<unsigned char>(text_[i_ + 1]))) {
                ++i_;
                while (i_ < text_.size() && is_word_char(static_cast<unsigned char>(text_[i_]))) ++i_;
                push(Token::Kind::Var, start);
            } else if (is_word_char(c)) {
                while (i_ < text_.size() && is_word_char(static_cast<unsigned char>(text_[i_]))) ++i_;
                if (iequals(text_.substr(start, i_ - start), "OWL")) {
                    directive(start);
                } else {
                    push(Token::Kind::Word, start);
                }
            } else {
                ++i_;
                push(Token::Kind::Other, start);
            }
        }
        for (const auto& b : stack_)
            for (std::size_t d : b.directives)
                if (result_.directives[d].embedding == Embedding::FilterIn)
                    throw MalformedDirective(result_.directives[d].begin, result_.directives[d].end, "unclosed IN list");
        return std::move(result_);
    }

private:
    std::string_view text_of(const Token& t) const { return text_.substr(t.begin, t.end - t.begin); }

    void push(Token::Kind kind, std::size_t start) { tokens_.push_back({kind, start, i_}); }

    void skip_space_and_comments() {
        while (i_ < text_.size()) {
            if (is_space(text_[i_])) {
                ++i_;
            } else if (text_[i_] == '#') {
                while (i_ < text_.size() && text_[i_] != '\n') ++i_;
            } else {
                break;
            }
        }
    }

    void skip_string() {
        const char q = text_[i_];
        const bool long_form = text_.substr(i_, 3) == std::string(3, q);
        i_ += long_form ? 3 : 1;
        while (i_ < text_.size()) {
            if (text_[i_] == '\\') {
                i_ += 2;
            } else if (long_form ? text_.substr(i_, 3) == std::string(3, q) : text_[i_] == q) {
                i_ += long_form ? 3 : 1;
                return;
            } else if (!long_form && text_[i_] == '\n') {
                return;
            } else {
                ++i_;
            }
        }
        i_ = std::min(i_, text_.size());
    }

    // PREFIX name: <iri>
    void record_prefix_if_complete() {
        const std::size_t n = tokens_.size();
        if (n < 3) return;
        const Token& kw = tokens_[n - 3];
        const Token& name = tokens_[n - 2];
        const Token& iri = tokens_[n - 1];
        if (kw.kind != Token::Kind::Word || !iequals(text_of(kw), "PREFIX")) return;
        if (name.kind != Token::Kind::Word || text_of(name).back() != ':') return;
        if (iri.kind != Token::Kind::IriRef) return;
        auto prefix = std::string(text_of(name).substr(0, name.end - name.begin - 1));
        result_.prefixes.try_emplace(prefix, std::string(text_.substr(iri.begin + 1, iri.end - iri.begin - 2)));
    }

    void close_bracket(std::size_t position) {
        if (stack_.empty()) return;
        Bracket b = std::move(stack_.back());
        stack_.pop_back();
        for (std::size_t d : b.directives) {
            auto& dir = result_.directives[d];
            if (dir.embedding != Embedding::FilterIn) continue;
            auto blank = [&](std::size_t from, std::size_t to) {
                return std::all_of(text_.begin() + from, text_.begin() + to, is_space);
            };
            if (b.directives.size() != 1 || !blank(b.position + 1, dir.begin) || !blank(dir.end, position))
                throw MalformedDirective(dir.begin, dir.end, "OWL directive must be the only member of its IN list");
            dir.in_end = position + 1;
        }
    }

    void skip_space() {
        while (i_ < text_.size() && is_space(text_[i_])) ++i_;
    }

    void directive(std::size_t start) {
        OwlDirective d;
        d.begin = start;
        auto fail = [&](const std::string& reason) { throw MalformedDirective(start, i_, reason); };

        skip_space();
        if (i_ < text_.size() && is_alpha(static_cast<unsigned char>(text_[i_]))) {
            const std::size_t w = i_;
            while (i_ < text_.size() && is_word_char(static_cast<unsigned char>(text_[i_]))) ++i_;
            auto type = parse_query_type(text_.substr(w, i_ - w));
            if (!type) fail("unknown query type '" + std::string(text_.substr(w, i_ - w)) + "'");
            d.query_type = *type;
            skip_space();
        }
        auto read_iri = [&]() -> std::string {
            const std::size_t open = i_++;
            while (i_ < text_.size() && text_[i_] != '>' && is_iriref_char(static_cast<unsigned char>(text_[i_]))) ++i_;
            if (i_ >= text_.size() || text_[i_] != '>') fail("unterminated IRI");
            ++i_;
            return std::string(text_.substr(open + 1, i_ - open - 2));
        };
        if (i_ >= text_.size() || text_[i_] != '<') fail("missing service URI");
        auto service = read_iri();
        if (!Iri::is_absolute(service)) fail("invalid service URI <" + service + ">");
        d.service_uri = Iri(service);
        skip_space();
        if (i_ < text_.size() && text_[i_] == '<') {
            auto ontology = read_iri();
            if (!ontology.empty()) {
                if (!Iri::is_absolute(ontology)) fail("invalid ontology URI <" + ontology + ">");
                d.ontology_uri = Iri(ontology);
            }
            skip_space();
        }
        if (i_ >= text_.size() || text_[i_] != '{') fail("missing '{'");
        const std::size_t body = ++i_;
        int depth = 1;
        while (i_ < text_.size() && depth > 0) {
            const char c = text_[i_];
            if (c == '\'') {
                ++i_;
                while (i_ < text_.size() && text_[i_] != '\'') i_ += text_[i_] == '\\' ? 2 : 1;
                ++i_;
                continue;
            }
            if (c == '{') ++depth;
            if (c == '}') --depth;
            ++i_;
        }
        if (depth > 0) {
            i_ = text_.size();
            fail("missing '}'");
        }
        d.end = i_;
        std::string_view q = text_.substr(body, d.end - 1 - body);
        while (!q.empty() && is_space(q.front())) q.remove_prefix(1);
        while (!q.empty() && is_space(q.back())) q.remove_suffix(1);
        d.query_text = std::string(q);

        classify_embedding(d);
        if (!stack_.empty()) stack_.back().directives.push_back(result_.directives.size());
        result_.directives.push_back(std::move(d));
    }

    void classify_embedding(OwlDirective& d) {
        auto fail = [&] {
            throw MalformedDirective(d.begin, d.end, "OWL directive must appear in 'VALUES ?var { }' or '?var IN ( )'");
        };
        if (stack_.empty()) fail();
        const Bracket& b = stack_.back();
        auto tok = [&](std::size_t back) -> const Token* {
            return b.token >= back ? &tokens_[b.token - back] : nullptr;
        };
        const Token* t1 = tok(1);
        const Token* t2 = tok(2);
        if (b.open == '{' && t1 && t2 && t1->kind == Token::Kind::Var && t2->kind == Token::Kind::Word &&
            iequals(text_of(*t2), "VALUES")) {
            d.embedding = Embedding::Values;
            d.variable = std::string(text_of(*t1));
            return;
        }
        if (b.open == '(' && t1 && t2 && t1->kind == Token::Kind::Word && iequals(text_of(*t1), "IN")) {
            const Token* var = t2;
            if (t2->kind == Token::Kind::Word && iequals(text_of(*t2), "NOT")) {
                var = tok(3);
                d.negated = true;
            }
            if (var && var->kind == Token::Kind::Var) {
                d.embedding = Embedding::FilterIn;
                d.variable = std::string(text_of(*var));
                d.in_begin = var->begin;
                return;
            }
        }
        fail();
    }

    std::string_view text_;
    std::size_t i_ = 0;
    std::vector<Token> tokens_;
    std::vector<Bracket> stack_;
    ScanResult result_;

};

bool valid_prefix_name(std::string_view p) {
    if (p.empty()) return true;
    if (!is_alpha(static_cast<unsigned char>(p.front())) || p.back() == '.') return false;
    return std::all_of(p.begin(), p.end(), [](unsigned char c) {
        return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.';
    });
}

bool valid_local_name(std::string_view l) {
    if (l.empty()) return true;
    if (l.front() == '-' || l.front() == '.' || l.back() == '.') return false;
    return std::all_of(l.begin(), l.end(), [](unsigned char c) {
        return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' || c == ':';
    });
}

}  // namespace

std::vector<OwlDirective> scan_owl_blocks(std::string_view sparql) { return Scanner(sparql).run().directives; }

Curie to_curie(const Iri& iri) {
    const std::string& s = iri.str();
    const std::size_t slash = s.rfind('/');
    const std::size_t hash = s.rfind('#');
    std::size_t split = std::string::npos;
    if (slash != std::string::npos) split = slash;
    if (hash != std::string::npos && (split == std::string::npos || hash > split)) split = hash;
    const std::size_t authority = s.find("://");
    if (split == std::string::npos || (authority != std::string::npos && split <= authority + 2 && s[split] == '/'))
        throw NoSeparator(s);

    const std::string segment = s.substr(split + 1);
    const std::size_t underscore = segment.rfind('_');
    if (underscore != std::string::npos && underscore + 1 < segment.size()) {
        Curie c;
        c.prefix = segment.substr(0, underscore);
        c.local = segment.substr(underscore + 1);
        c.namespace_iri = s.substr(0, split + 1 + underscore + 1);
        c.curie = c.prefix + ":" + c.local;
        return c;
    }
    if (segment.empty()) throw NoSeparator(s);

    Curie c;
    c.namespace_iri = s.substr(0, split + 1);
    c.local = segment;
    std::string_view base(s.data(), split);
    const std::size_t cut = base.find_last_of("/#:");
    std::string name(cut == std::string_view::npos ? base : base.substr(cut + 1));
    name.erase(std::remove_if(name.begin(), name.end(),
                              [](unsigned char ch) { return !(is_alpha(ch) || is_digit(ch) || ch == '_' || ch == '-'); }),
               name.end());
    if (name.empty() || !is_alpha(static_cast<unsigned char>(name.front()))) name = "ns";
    c.prefix = name;
    c.curie = c.prefix + ":" + c.local;
    return c;
}

std::string expand(std::string_view sparql, const DirectiveExecutor& executor, const ExpansionOptions& options) {
    ScanResult scanned = Scanner(sparql).run();
    if (scanned.directives.empty()) return std::string(sparql);

    std::vector<std::vector<Iri>> results;
    results.reserve(scanned.directives.size());
    for (const auto& d : scanned.directives) {
        try {
            results.push_back(executor(d));
        } catch (const ExecutorError&) {
            throw;
        } catch (const std::exception& e) {
            throw ExecutorError(std::string(d.source(sparql)), e.what());
        }
    }

    std::vector<std::pair<std::string, std::string>> header;  // prefixes to declare, first use order
    std::map<std::string, std::string> chosen;
    auto term = [&](const Iri& iri) -> std::string {
        const std::string full = "<" + iri.str() + ">";
        if (!options.prefix_form) return full;
        Curie c;
        try {
            c = to_curie(iri);
        } catch (const NoSeparator&) {
            return full;
        }
        if (!valid_prefix_name(c.prefix) || !valid_local_name(c.local)) return full;
        if (scanned.prefixes.contains(c.prefix)) return c.curie;
        auto override_it = options.prefix_overrides.find(c.prefix);
        const bool overridden = override_it != options.prefix_overrides.end();
        auto it = chosen.find(c.prefix);
        if (it == chosen.end()) {
            const std::string ns = overridden ? override_it->second : c.namespace_iri;
            chosen.emplace(c.prefix, ns);
            header.emplace_back(c.prefix, ns);
        } else if (!overridden && it->second != c.namespace_iri) {
            return full;
        }
        return c.curie;
    };

    struct Replacement {
        std::size_t begin, end;
        std::string text;
    };
    std::vector<Replacement> replacements;
    for (std::size_t k = 0; k < scanned.directives.size(); ++k) {
        const auto& d = scanned.directives[k];
        const auto& iris = results[k];
        if (d.embedding == Embedding::FilterIn && iris.empty()) {
            replacements.push_back({d.in_begin, d.in_end, d.negated ? "true" : "false"});
            continue;
        }
        std::string text;
        for (const auto& iri : iris) {
            if (!text.empty()) text += d.embedding == Embedding::Values ? " " : ", ";
            text += term(iri);
        }
        replacements.push_back({d.begin, d.end, std::move(text)});
    }
    std::sort(replacements.begin(), replacements.end(),
              [](const Replacement& a, const Replacement& b) { return a.begin < b.begin; });

    std::string out;
    for (const auto& [prefix, ns] : header) out += "PREFIX " + prefix + ": <" + ns + ">\n";
    std::size_t cursor = 0;
    for (const auto& r : replacements) {
        out.append(sparql.substr(cursor, r.begin - cursor));
        out += r.text;
        cursor = r.end;
    }
    out.append(sparql.substr(cursor));
    return out;
}

DirectiveExecutor repository_executor(const Repository& repository, OntologyResolver resolve_missing) {
    return [&repository, resolve_missing = std::move(resolve_missing)](const OwlDirective& d) {
        auto records = execute_query(d.query_text, d.query_type, d.ontology_uri, repository, resolve_missing);
        std::vector<Iri> out;
        std::set<Iri> seen;
        for (auto& r : records)
            if (seen.insert(r.class_iri).second) out.push_back(std::move(r.class_iri));
        return out;
    };
}

}  // namespace owlport
