#include "owlport/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <unordered_set>

#include "owlport/errors.hpp"

namespace owlport {

namespace {

// ---------------------------------------------------------------------------
// Lexing into a generic parenthesized tree.

struct Node {
    enum class Kind { Call, Iri, Name, Literal, Equals };
    Kind kind;
    std::string text;  // call head, IRI, name, or literal lexical form
    std::string lang;
    std::string datatype;
    std::vector<Node> args;
    std::size_t line = 0;
    std::size_t column = 0;
};

class TreeReader {
public:
    explicit TreeReader(std::string_view text) : text_(text) {}

    std::vector<Node> read_all() {
        std::vector<Node> nodes;
        skip_space();
        while (pos_ < text_.size()) {
            nodes.push_back(read_node());
            skip_space();
        }
        return nodes;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(line_, column_, message); }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    static bool is_name_char(char c) {
        auto u = static_cast<unsigned char>(c);
        return !std::isspace(u) && c != '(' && c != ')' && c != '<' && c != '>' && c != '"' && c != '=' && c != '^' &&
               c != '@';
    }

    Node read_node() {
        Node node;
        node.line = line_;
        node.column = column_;
        char c = peek();
        if (c == '<') {
            advance();
            std::string iri;
            while (pos_ < text_.size() && peek() != '>') {
                if (std::isspace(static_cast<unsigned char>(peek()))) fail("whitespace inside IRI");
                iri += peek();
                advance();
            }
            if (pos_ >= text_.size()) fail("unterminated IRI");
            advance();
            node.kind = Node::Kind::Iri;
            node.text = std::move(iri);
            return node;
        }
        if (c == '"') {
            node.kind = Node::Kind::Literal;
            node.text = read_string();
            if (peek() == '@') {
                advance();
                while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
                    node.lang += peek();
                    advance();
                }
            } else if (peek() == '^') {
                advance();
                if (peek() != '^') fail("expected '^^' datatype marker");
                advance();
                Node dt = read_node();
                if (dt.kind != Node::Kind::Iri && dt.kind != Node::Kind::Name) fail("expected datatype after '^^'");
                node.datatype = dt.text;
            }
            return node;
        }
        if (c == '=') {
            advance();
            node.kind = Node::Kind::Equals;
            return node;
        }
        if (c == '(' || c == ')') fail(std::string("unexpected '") + c + "'");
        if (!is_name_char(c)) fail(std::string("unexpected character '") + c + "'");

        std::string name;
        while (pos_ < text_.size() && is_name_char(peek())) {
            name += peek();
            advance();
        }
        skip_space();
        if (peek() == '(') {
            advance();
            node.kind = Node::Kind::Call;
            node.text = std::move(name);
            skip_space();
            while (peek() != ')') {
                if (pos_ >= text_.size()) fail("unbalanced parentheses: missing ')' for " + node.text);
                node.args.push_back(read_node());
                skip_space();
            }
            advance();
            return node;
        }
        node.kind = Node::Kind::Name;
        node.text = std::move(name);
        return node;
    }

    std::string read_string() {
        advance();  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) fail("unterminated string literal");
            char c = peek();
            if (c == '"') {
                advance();
                return out;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= text_.size()) fail("unterminated escape");
                out += peek();
                advance();
                continue;
            }
            out += c;
            advance();
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

// ---------------------------------------------------------------------------
// Interpretation of the tree.

struct Skip {
    std::string what;
};

const std::set<std::string, std::less<>>& unsupported_class_constructors() {
    static const std::set<std::string, std::less<>> names = {
        "ObjectUnionOf",         "ObjectComplementOf",    "ObjectAllValuesFrom",  "ObjectMinCardinality",
        "ObjectMaxCardinality",  "ObjectExactCardinality", "ObjectHasValue",      "ObjectOneOf",
        "ObjectHasSelf",         "DataSomeValuesFrom",    "DataAllValuesFrom",    "DataHasValue",
        "DataMinCardinality",    "DataMaxCardinality",    "DataExactCardinality",
    };
    return names;
}

class DocumentBuilder {
public:
    explicit DocumentBuilder(const Iri& document_uri) {
        ontology_.document_uri = document_uri;
        prefixes_["owl:"] = std::string(vocab::owl);
        prefixes_["rdf:"] = std::string(vocab::rdf);
        prefixes_["rdfs:"] = std::string(vocab::rdfs);
        prefixes_["xsd:"] = std::string(vocab::xsd);
    }

    Ontology build(const std::vector<Node>& top) {
        bool seen_ontology = false;
        for (const auto& node : top) {
            if (node.kind == Node::Kind::Call && node.text == "Prefix") {
                read_prefix(node);
            } else if (node.kind == Node::Kind::Call && node.text == "Ontology") {
                if (seen_ontology) fail(node, "more than one Ontology(...) block");
                seen_ontology = true;
                read_ontology(node);
            } else {
                fail(node, "expected Prefix(...) or Ontology(...)");
            }
        }
        if (!seen_ontology) throw SyntaxError(1, 1, "document has no Ontology(...) block");
        finalize();
        return std::move(ontology_);
    }

private:
    [[noreturn]] static void fail(const Node& node, const std::string& message) {
        throw SyntaxError(node.line, node.column, message);
    }

    void read_prefix(const Node& node) {
        if (node.args.size() != 3 || node.args[0].kind != Node::Kind::Name || node.args[1].kind != Node::Kind::Equals ||
            node.args[2].kind != Node::Kind::Iri)
            fail(node, "expected Prefix(name:=<iri>)");
        const auto& name = node.args[0].text;
        if (name.empty() || name.back() != ':') fail(node, "prefix name must end with ':'");
        prefixes_[name] = node.args[2].text;
    }

    Iri resolve(const Node& node) const {
        std::string full;
        if (node.kind == Node::Kind::Iri) {
            full = node.text;
        } else if (node.kind == Node::Kind::Name) {
            auto colon = node.text.find(':');
            if (colon == std::string::npos) fail(node, "expected an IRI, got '" + node.text + "'");
            auto it = prefixes_.find(node.text.substr(0, colon + 1));
            if (it == prefixes_.end()) fail(node, "undeclared prefix in '" + node.text + "'");
            full = it->second + node.text.substr(colon + 1);
        } else {
            fail(node, "expected an IRI");
        }
        if (!Iri::is_absolute(full)) fail(node, "IRI is not absolute: " + full);
        return Iri(full);
    }

    void read_ontology(const Node& node) {
        std::size_t i = 0;
        if (i < node.args.size() && node.args[i].kind != Node::Kind::Call) {
            ontology_.ontology_iri = resolve(node.args[i++]);
            if (i < node.args.size() && node.args[i].kind != Node::Kind::Call) ++i;  // version IRI
        }
        for (; i < node.args.size(); ++i) {
            const Node& item = node.args[i];
            if (item.kind != Node::Kind::Call) fail(item, "expected an axiom");
            if (item.text == "Import") {
                if (item.args.size() != 1) fail(item, "expected Import(<iri>)");
                ontology_.imports.push_back(resolve(item.args[0]));
            } else if (item.text == "Annotation") {
                // ontology annotation
            } else {
                try {
                    read_axiom(item);
                } catch (const Skip& skip) {
                    ontology_.diagnostics.push_back(
                        {ontology_.document_uri, item.line, item.column, "skipped " + item.text + ": " + skip.what});
                }
            }
        }
    }

    // Strips leading axiom annotations.
    static std::vector<const Node*> operands(const Node& axiom) {
        std::vector<const Node*> out;
        for (const auto& a : axiom.args)
            if (!(a.kind == Node::Kind::Call && a.text == "Annotation")) out.push_back(&a);
        return out;
    }

    void read_axiom(const Node& node) {
        const auto& head = node.text;
        auto args = operands(node);
        if (head == "Declaration") {
            if (args.size() != 1 || args[0]->kind != Node::Kind::Call || args[0]->args.size() != 1)
                fail(node, "expected Declaration(Kind(iri))");
            const Node& decl = *args[0];
            Iri iri = resolve(decl.args[0]);
            if (decl.text == "Class") {
                if (iri != vocab::top() && iri != vocab::bottom()) ontology_.classes.insert(iri);
            } else if (decl.text == "ObjectProperty") {
                ontology_.properties.insert(iri);
            }
            return;
        }
        if (head == "SubClassOf") {
            if (args.size() != 2) fail(node, "SubClassOf needs two class expressions");
            auto sub = class_expression(*args[0]);
            auto sup = class_expression(*args[1]);
            add(SubClassOf{std::move(sub), std::move(sup)});
            return;
        }
        if (head == "EquivalentClasses") {
            if (args.size() < 2) fail(node, "EquivalentClasses needs at least two class expressions");
            std::vector<ClassExpression> exprs;
            for (const Node* a : args) exprs.push_back(class_expression(*a));
            if (auto ax = make_equivalence(std::move(exprs))) add(std::move(*ax));
            return;
        }
        if (head == "DisjointClasses") {
            if (args.size() < 2) fail(node, "DisjointClasses needs at least two class expressions");
            std::vector<ClassExpression> exprs;
            for (const Node* a : args) exprs.push_back(class_expression(*a));
            for (std::size_t i = 0; i < exprs.size(); ++i)
                for (std::size_t j = i + 1; j < exprs.size(); ++j)
                    add(SubClassOf{ClassExpression::conjunction({exprs[i], exprs[j]}), ClassExpression::bottom()});
            return;
        }
        if (head == "SubObjectPropertyOf") {
            if (args.size() != 2) fail(node, "SubObjectPropertyOf needs two arguments");
            Iri sup = property(*args[1]);
            if (args[0]->kind == Node::Kind::Call && args[0]->text == "ObjectPropertyChain") {
                const auto& chain = args[0]->args;
                if (chain.size() == 1) {
                    add(SubPropertyOf{property(chain[0]), sup});
                } else if (chain.size() == 2) {
                    add(PropertyChain{{property(chain[0]), property(chain[1])}, sup});
                } else {
                    throw Skip{"property chains longer than two"};
                }
                return;
            }
            add(SubPropertyOf{property(*args[0]), std::move(sup)});
            return;
        }
        if (head == "EquivalentObjectProperties") {
            if (args.size() < 2) fail(node, "EquivalentObjectProperties needs two properties");
            std::vector<Iri> props;
            for (const Node* a : args) props.push_back(property(*a));
            for (std::size_t i = 0; i + 1 < props.size(); ++i) {
                add(SubPropertyOf{props[i], props[i + 1]});
                add(SubPropertyOf{props[i + 1], props[i]});
            }
            return;
        }
        if (head == "TransitiveObjectProperty") {
            if (args.size() != 1) fail(node, "TransitiveObjectProperty needs one property");
            add(TransitiveProperty{property(*args[0])});
            return;
        }
        if (head == "AnnotationAssertion") {
            if (args.size() != 3) fail(node, "AnnotationAssertion needs property, subject and value");
            Iri prop = resolve(*args[0]);
            if (args[1]->kind == Node::Kind::Name && args[1]->text.starts_with("_:")) return;  // anonymous subject
            Iri subject = resolve(*args[1]);
            const Node& value = *args[2];
            if (value.kind != Node::Kind::Literal) return;
            if (prop.str() == vocab::label) {
                ontology_.labels.emplace(subject, value.text);
            } else if (prop.str() == vocab::definition) {
                ontology_.definitions.emplace(subject, value.text);
            }
            return;
        }
        throw Skip{"axiom type outside the supported EL subset"};
    }

    Iri property(const Node& node) const {
        if (node.kind == Node::Kind::Call) {
            if (node.text == "ObjectInverseOf") throw Skip{"inverse properties"};
            fail(node, "expected an object property, got " + node.text + "(...)");
        }
        return resolve(node);
    }

    ClassExpression class_expression(const Node& node) const {
        if (node.kind == Node::Kind::Iri || node.kind == Node::Kind::Name) return ClassExpression::named(resolve(node));
        if (node.kind != Node::Kind::Call) fail(node, "expected a class expression");
        if (node.text == "ObjectIntersectionOf") {
            if (node.args.size() < 2) fail(node, "ObjectIntersectionOf needs at least two operands");
            std::vector<ClassExpression> ops;
            for (const auto& a : node.args) ops.push_back(class_expression(a));
            return ClassExpression::conjunction(std::move(ops));
        }
        if (node.text == "ObjectSomeValuesFrom") {
            if (node.args.size() != 2) fail(node, "ObjectSomeValuesFrom needs a property and a filler");
            Iri p = property(node.args[0]);
            return ClassExpression::some(std::move(p), class_expression(node.args[1]));
        }
        if (unsupported_class_constructors().contains(node.text)) throw Skip{node.text};
        fail(node, "unknown class constructor " + node.text);
    }

    void add(Axiom axiom) { ontology_.axioms.push_back(std::move(axiom)); }

    void finalize() {
        std::vector<Iri> classes;
        std::vector<Iri> props;
        for (const auto& ax : ontology_.axioms) {
            std::visit(
                [&](const auto& a) {
                    using T = std::decay_t<decltype(a)>;
                    if constexpr (std::is_same_v<T, SubClassOf>) {
                        a.sub.collect_classes(classes);
                        a.sup.collect_classes(classes);
                        a.sub.collect_properties(props);
                        a.sup.collect_properties(props);
                    } else if constexpr (std::is_same_v<T, EquivalentClasses>) {
                        for (const auto& e : a.exprs) {
                            e.collect_classes(classes);
                            e.collect_properties(props);
                        }
                    } else if constexpr (std::is_same_v<T, SubPropertyOf>) {
                        props.push_back(a.sub);
                        props.push_back(a.sup);
                    } else if constexpr (std::is_same_v<T, PropertyChain>) {
                        props.push_back(a.chain[0]);
                        props.push_back(a.chain[1]);
                        props.push_back(a.sup);
                    } else {
                        props.push_back(a.property);
                    }
                },
                ax);
        }
        ontology_.classes.insert(classes.begin(), classes.end());
        ontology_.properties.insert(props.begin(), props.end());
    }

    Ontology ontology_;
    std::map<std::string, std::string> prefixes_;
};

// Moves labels of known properties into property_labels.
void split_property_labels(Ontology& ont) {
    for (auto it = ont.labels.begin(); it != ont.labels.end();) {
        if (ont.properties.contains(it->first)) {
            ont.property_labels.emplace(it->first, it->second);
            it = ont.labels.erase(it);
        } else {
            ++it;
        }
    }
}

std::string escape_literal(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_functional(const Axiom& axiom) {
    return std::visit(
        [](const auto& a) -> std::string {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SubClassOf>) {
                return "SubClassOf(" + a.sub.to_functional() + " " + a.sup.to_functional() + ")";
            } else if constexpr (std::is_same_v<T, EquivalentClasses>) {
                std::string out = "EquivalentClasses(";
                for (std::size_t i = 0; i < a.exprs.size(); ++i) {
                    if (i) out += ' ';
                    out += a.exprs[i].to_functional();
                }
                return out + ")";
            } else if constexpr (std::is_same_v<T, SubPropertyOf>) {
                return "SubObjectPropertyOf(<" + a.sub.str() + "> <" + a.sup.str() + ">)";
            } else if constexpr (std::is_same_v<T, PropertyChain>) {
                return "SubObjectPropertyOf(ObjectPropertyChain(<" + a.chain[0].str() + "> <" + a.chain[1].str() +
                       ">) <" + a.sup.str() + ">)";
            } else {
                return "TransitiveObjectProperty(<" + a.property.str() + ">)";
            }
        },
        axiom);
}

std::optional<Axiom> make_equivalence(std::vector<ClassExpression> exprs) {
    std::vector<std::pair<std::string, ClassExpression>> keyed;
    for (auto& e : exprs) keyed.emplace_back(e.to_functional(), std::move(e));
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    if (keyed.size() < 2) return std::nullopt;
    EquivalentClasses eq;
    for (auto& [k, e] : keyed) eq.exprs.push_back(std::move(e));
    return Axiom{std::move(eq)};
}

std::string Ontology::display_label(const Iri& iri) const {
    if (auto it = labels.find(iri); it != labels.end()) return it->second;
    if (auto it = property_labels.find(iri); it != property_labels.end()) return it->second;
    return std::string(iri.local_name());
}

std::string Ontology::definition_of(const Iri& iri) const {
    auto it = definitions.find(iri);
    return it == definitions.end() ? std::string() : it->second;
}

Ontology parse_ontology_document(std::string_view text, const Iri& document_uri) {
    TreeReader reader(text);
    auto tree = reader.read_all();
    DocumentBuilder builder(document_uri);
    Ontology ont = builder.build(tree);
    split_property_labels(ont);
    return ont;
}

std::string serialize_ontology(const Ontology& ontology) {
    std::string out = "Ontology(";
    if (ontology.ontology_iri) out += "<" + ontology.ontology_iri->str() + ">";
    out += "\n";
    for (const auto& imp : ontology.imports) out += "Import(<" + imp.str() + ">)\n";
    for (const auto& c : ontology.classes) out += "Declaration(Class(<" + c.str() + ">))\n";
    for (const auto& p : ontology.properties) out += "Declaration(ObjectProperty(<" + p.str() + ">))\n";
    for (const auto& ax : ontology.axioms) out += to_functional(ax) + "\n";
    auto annotate = [&](std::string_view prop, const std::map<Iri, std::string>& values) {
        for (const auto& [iri, value] : values)
            out += "AnnotationAssertion(<" + std::string(prop) + "> <" + iri.str() + "> \"" + escape_literal(value) +
                   "\")\n";
    };
    annotate(vocab::label, ontology.labels);
    annotate(vocab::label, ontology.property_labels);
    annotate(vocab::definition, ontology.definitions);
    out += ")\n";
    return out;
}

Ontology resolve_imports(const Ontology& ontology, const DocumentFetcher& fetcher) {
    Ontology result = ontology;
    result.import_closure.clear();

    std::set<Iri> visited{ontology.document_uri};
    if (ontology.ontology_iri) visited.insert(*ontology.ontology_iri);
    std::unordered_set<std::string> seen_axioms;
    std::vector<Axiom> merged;
    auto merge_axioms = [&](const std::vector<Axiom>& axioms) {
        for (const auto& ax : axioms)
            if (seen_axioms.insert(to_functional(ax)).second) merged.push_back(ax);
    };
    merge_axioms(ontology.axioms);

    std::deque<Iri> pending(ontology.imports.begin(), ontology.imports.end());
    while (!pending.empty()) {
        Iri next = pending.front();
        pending.pop_front();
        if (!visited.insert(next).second) continue;

        Ontology imported;
        try {
            imported = parse_ontology_document(fetcher(next), next);
        } catch (const std::exception& e) {
            throw ImportFetchError(next.str(), e.what());
        }
        if (imported.ontology_iri) visited.insert(*imported.ontology_iri);
        result.import_closure.push_back(next);

        merge_axioms(imported.axioms);
        result.labels.insert(imported.labels.begin(), imported.labels.end());
        result.property_labels.insert(imported.property_labels.begin(), imported.property_labels.end());
        result.definitions.insert(imported.definitions.begin(), imported.definitions.end());
        result.classes.insert(imported.classes.begin(), imported.classes.end());
        result.properties.insert(imported.properties.begin(), imported.properties.end());
        result.diagnostics.insert(result.diagnostics.end(), imported.diagnostics.begin(), imported.diagnostics.end());
        for (const auto& imp : imported.imports) pending.push_back(imp);
    }
    result.axioms = std::move(merged);
    split_property_labels(result);
    return result;
}

}  // namespace owlport
