#pragma once

// Minimal well-formedness check for expanded SPARQL: balanced brackets
// outside strings, IRIs and comments; no leftover OWL keyword; IN lists and
// VALUES blocks hold only terms (comma-separated in IN lists); every CURIE
// prefix used in a data block is declared.

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

struct SparqlCheck {
    bool ok = true;
    std::string problem;
};

inline SparqlCheck check_sparql(std::string_view q) {
    auto fail = [](std::string why) { return SparqlCheck{false, std::move(why)}; };
    std::vector<std::string> tokens;
    std::set<std::string> declared;
    std::size_t i = 0;
    while (i < q.size()) {
        char c = q[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < q.size() && q[i] != '\n') ++i;
        } else if (c == '"' || c == '\'') {
            std::size_t j = i + 1;
            while (j < q.size() && q[j] != c) j += q[j] == '\\' ? 2 : 1;
            if (j >= q.size()) return fail("unterminated string");
            tokens.push_back("\"str\"");
            i = j + 1;
        } else if (c == '<' && i + 1 < q.size() && q[i + 1] != '=' && q[i + 1] != ' ') {
            auto j = q.find('>', i);
            if (j == std::string_view::npos) return fail("unterminated IRI");
            tokens.emplace_back(q.substr(i, j - i + 1));
            i = j + 1;
        } else if (std::string_view("{}()[],.;").find(c) != std::string_view::npos) {
            tokens.emplace_back(1, c);
            ++i;
        } else {
            std::size_t j = i;
            while (j < q.size() && !std::isspace(static_cast<unsigned char>(q[j])) &&
                   std::string_view("{}()[],;<\"'").find(q[j]) == std::string_view::npos)
                ++j;
            if (j == i) ++j;
            std::string w(q.substr(i, j - i));
            while (w.size() > 1 && w.back() == '.') {
                w.pop_back();
                --j;
            }
            tokens.push_back(w);
            i = j;
        }
    }
    std::vector<char> stack;
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        const auto& t = tokens[k];
        if (t == "OWL" || t == "owl") return fail("directive left in output");
        if (t == "PREFIX" && k + 1 < tokens.size()) {
            auto name = tokens[k + 1];
            declared.insert(name.substr(0, name.find(':')));
        }
        if (t == "{" || t == "(" || t == "[") stack.push_back(t[0]);
        if (t == "}" || t == ")" || t == "]") {
            char open = t == "}" ? '{' : t == ")" ? '(' : '[';
            if (stack.empty() || stack.back() != open) return fail("unbalanced '" + t + "'");
            stack.pop_back();
        }
        auto is_term = [&](const std::string& x) {
            if (x.size() > 1 && x.front() == '<' && x.back() == '>') return true;
            auto colon = x.find(':');
            if (colon == std::string::npos) return false;
            if (!declared.contains(x.substr(0, colon))) return false;
            return true;
        };
        if (t == "IN" && k + 1 < tokens.size() && tokens[k + 1] == "(") {
            std::size_t m = k + 2;
            bool expect_term = true;
            for (; m < tokens.size() && tokens[m] != ")"; ++m) {
                if (expect_term ? !is_term(tokens[m]) : tokens[m] != ",") return fail("bad IN list at '" + tokens[m] + "'");
                expect_term = !expect_term;
            }
            if (expect_term) return fail("empty IN list or trailing comma");
        }
        if (t == "VALUES" && k + 2 < tokens.size() && tokens[k + 2] == "{") {
            for (std::size_t m = k + 3; m < tokens.size() && tokens[m] != "}"; ++m)
                if (!is_term(tokens[m]) && tokens[m] != "UNDEF") return fail("bad VALUES term '" + tokens[m] + "'");
        }
    }
    if (!stack.empty()) return fail("unclosed bracket");
    return {};
}

}  // namespace oracle
