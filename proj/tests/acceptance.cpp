// Acceptance checks: one PASS/FAIL line per criterion. Exits non-zero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cli.hpp"
#include "generators/chain_heavy.hpp"
#include "oracles/label_scan.hpp"
#include "oracles/naive_saturation.hpp"
#include "oracles/phrase_scan.hpp"
#include "oracles/random_ontology.hpp"
#include "oracles/sparql_check.hpp"
#include "owlport/errors.hpp"
#include "owlport/service.hpp"
#include "test_support.hpp"

using namespace owlport;
using testing_support::fixture_path;
using testing_support::load_fixture;
using testing_support::obo;
using testing_support::read_file;

namespace {

// Pinned limits.
constexpr double tof_seconds = 1.0;
constexpr double oracle_suite_seconds = 60.0;
constexpr double performance_seconds = 10.0;
constexpr int oracle_ontologies = 500;
constexpr int oracle_max_classes = 30;
constexpr int oracle_max_axioms = 60;
constexpr int random_corpora = 200;
constexpr int trie_cases = 1000;
constexpr int performance_classes = 10000;
constexpr int performance_axioms = 20000;

const Iri hp_uri("http://purl.obolibrary.org/obo/hp.owl");
const Iri go_uri("http://purl.obolibrary.org/obo/go.owl");
const Iri nbo_uri("http://purl.obolibrary.org/obo/nbo.owl");

struct Outcome {
    bool pass;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double value, int digits = 3) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(digits);
    out << value;
    return out.str();
}

std::set<Iri> iri_set(const std::vector<ClassRecord>& records) {
    std::set<Iri> out;
    for (const auto& r : records) out.insert(r.class_iri);
    return out;
}

std::set<std::string> hit_ids(const std::vector<Hit>& hits) {
    std::set<std::string> out;
    for (const auto& h : hits) out.insert(h.doc_id);
    return out;
}

std::shared_ptr<const ClassifiedOntology> classified(const std::string& file, const Iri& uri) {
    return std::make_shared<const ClassifiedOntology>(load_fixture(file, uri.str()));
}

const Repository& fixture_repository() {
    static const Repository repo = Repository()
                                       .with(classified("hp.ofn", hp_uri))
                                       .with(classified("go.ofn", go_uri))
                                       .with(classified("nbo.ofn", nbo_uri));
    return repo;
}

std::string sparql_fixture(const std::string& name) { return read_file(fixture_path("sparql/" + name)); }

// ---------------------------------------------------------------------------

Outcome tof_inference() {
    Stopwatch clock;
    const Iri tof = obo("HP_0001636");
    const std::set<Iri> phenotypes = {obo("HP_0001629"), obo("HP_0002623"), obo("HP_0001642"), obo("HP_0001667")};
    auto hp = classified("hp.ofn", hp_uri);

    // Fixture shape: ToF is defined, never asserted below any phenotype.
    bool defined = false;
    std::multimap<Iri, Iri> told;  // named sub -> named sup
    for (const auto& ax : hp->ontology().axioms) {
        if (auto* s = std::get_if<SubClassOf>(&ax); s && s->sub.is_atomic() && s->sup.is_atomic()) {
            told.emplace(s->sub.iri(), s->sup.iri());
            if (s->sub.iri() == tof && phenotypes.contains(s->sup.iri()))
                return {false, "fixture asserts ToF below " + s->sup.iri().str()};
        }
        if (auto* e = std::get_if<EquivalentClasses>(&ax))
            for (const auto& x : e->exprs) defined = defined || (x.is_atomic() && x.iri() == tof);
    }
    if (!defined) return {false, "fixture lacks the ToF definition"};

    // Told subclasses of ToF, by closure over asserted named edges.
    std::set<Iri> expected = {tof};
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& [sub, sup] : told)
            if (expected.contains(sup) && expected.insert(sub).second) grew = true;
    }

    const Repository repo = Repository().with(hp);
    auto vsd = iri_set(execute_query("'ventricular septal defect'", QueryType::Subclass, hp_uri, repo));
    if (!vsd.contains(tof)) return {false, "VSD subclass query misses ToF"};
    auto conj = iri_set(execute_query(
        "'ventricular septal defect' and 'overriding aorta' and 'pulmonic stenosis' and 'right ventricular hypertrophy'",
        QueryType::Subclass, hp_uri, repo));
    const std::set<Iri> pinned = {tof, obo("HP_0031662"), obo("HP_0031663")};
    if (conj != expected || conj != pinned) return {false, "conjunction answered " + std::to_string(conj.size()) + " classes"};
    const double t = clock.seconds();
    if (t >= tof_seconds) return {false, "took " + fixed(t) + " s"};
    return {true, "VSD subclasses include ToF; conjunction = {ToF + " + std::to_string(conj.size() - 1) +
                      " told subtypes}; " + fixed(t) + " s < " + fixed(tof_seconds, 0) + " s"};
}

Outcome reasoner_oracle() {
    Stopwatch clock;
    int compared = 0;
    std::size_t largest_axioms = 0;
    for (std::uint32_t seed = 1; seed <= oracle_ontologies; ++seed) {
        // The generator adds two role inclusions and one chain on top.
        oracle::RandomOntologyParams params{.classes = 5 + static_cast<int>(seed % (oracle_max_classes - 4)),
                                            .properties = 2 + static_cast<int>(seed % 4),
                                            .axioms = 10 + static_cast<int>((seed * 7) % (oracle_max_axioms - 12)),
                                            .max_depth = 2,
                                            .role_hierarchy = true,
                                            .chain = true};
        oracle::RandomOntology gen(seed, params);
        auto ont = gen.ontology();
        if (static_cast<int>(ont.classes.size()) > oracle_max_classes || static_cast<int>(ont.axioms.size()) > oracle_max_axioms)
            return {false, "seed " + std::to_string(seed) + " exceeds the size bounds"};
        largest_axioms = std::max(largest_axioms, ont.axioms.size());
        auto nf = normalize(ont);
        if (saturate(nf).subsumer_map() != oracle::naive_saturate(nf).subsumers)
            return {false, "subsumers differ from the naive fixpoint for seed " + std::to_string(seed)};
        ++compared;
    }
    const double t = clock.seconds();
    if (t >= oracle_suite_seconds) return {false, "took " + fixed(t, 1) + " s"};
    return {true, std::to_string(compared) + " ontologies (up to " + std::to_string(largest_axioms) +
                      " axioms) match exactly; " + fixed(t, 1) + " s < " + fixed(oracle_suite_seconds, 0) + " s"};
}

Outcome unsatisfiability() {
    auto nbo = load_fixture("nbo.ofn", nbo_uri.str());
    auto nf = normalize(nbo);
    auto found = unsatisfiable_classes(saturate(nf));
    std::set<Iri> expected;
    auto naive = oracle::naive_saturate(nf);
    for (const auto& c : nbo.classes)
        if (naive.subsumers[c].contains(vocab::bottom())) expected.insert(c);
    if (found != expected) return {false, "fixture set differs from the naive fixpoint"};
    const std::set<Iri> pinned = {obo("NBO_0000900"), obo("NBO_0000901"), obo("NBO_0000902")};
    if (found != pinned) return {false, "fixture yields " + std::to_string(found.size()) + " unsatisfiable classes"};

    int with_bottom = 0;
    for (std::uint32_t seed = 1; seed <= 100; ++seed) {
        oracle::RandomOntology gen(seed, {.classes = 15, .properties = 3, .axioms = 25, .bottom_rate = 0.2});
        auto ont = gen.ontology();
        auto rnf = normalize(ont);
        auto got = unsatisfiable_classes(saturate(rnf));
        auto rnaive = oracle::naive_saturate(rnf);
        std::set<Iri> want;
        for (const auto& c : ont.classes)
            if (rnaive.subsumers[c].contains(vocab::bottom())) want.insert(c);
        if (got != want) return {false, "random ontology " + std::to_string(seed) + " differs"};
        with_bottom += !want.empty();
    }
    return {true, "fixture: 3 unsatisfiable classes as the oracle; 100 random ontologies agree (" +
                      std::to_string(with_bottom) + " with unsatisfiable classes)"};
}

Outcome values_golden() {
    const std::string input = sparql_fixture("uniprot_values.rq");
    const std::string out = expand(input, repository_executor(fixture_repository()), {.prefix_form = true});
    if (out != sparql_fixture("uniprot_values.expanded.rq")) return {false, "output differs from golden"};
    const std::string declaration = "PREFIX GO: <http://purl.uniprot.org/go/>\n";
    if (!out.starts_with(declaration) || out.find("PREFIX GO:", 1) != std::string::npos)
        return {false, "user GO prefix not preserved as the only GO declaration"};
    if (!std::regex_search(out, std::regex(R"(VALUES \?ontid \{\s*(GO:\d{7}\s+)+\})")))
        return {false, "data block is not a list of CURIEs"};
    auto check = oracle::check_sparql(out);
    if (!check.ok) return {false, "output not well formed: " + check.problem};
    return {true, "byte-exact golden; VALUES block of CURIEs; user GO prefix kept"};
}

Outcome filter_in_golden() {
    const std::string out = expand(sparql_fixture("gwas_filter_in.rq"), repository_executor(fixture_repository()));
    if (out != sparql_fixture("gwas_filter_in.expanded.rq")) return {false, "output differs from golden"};
    if (!std::regex_search(out, std::regex(R"(\?ontid IN \(\s*<[^>]+>(, <[^>]+>)+\s*\))")))
        return {false, "IN list is not comma-separated IRIs"};
    const std::string plain = sparql_fixture("plain.rq");
    if (expand(plain, repository_executor(fixture_repository())) != plain) return {false, "directive-free query changed"};
    if (expand(plain, repository_executor(fixture_repository()), {.prefix_form = true}) != plain)
        return {false, "directive-free query changed with prefix form"};
    return {true, "byte-exact golden; comma-separated IRI list; directive-free identity"};
}

Outcome curie_rewriting() {
    auto go = to_curie(obo("GO_0008150"));
    if (go.curie != "GO:0008150" || go.namespace_iri != "http://purl.obolibrary.org/obo/GO_" || go.prefix != "GO")
        return {false, "GO_0008150 -> " + go.curie + " / " + go.namespace_iri};

    std::set<Iri> iris;
    for (const auto& [file, uri] : {std::pair{"hp.ofn", hp_uri}, {"go.ofn", go_uri}, {"nbo.ofn", nbo_uri}}) {
        auto ont = load_fixture(file, uri.str());
        iris.insert(ont.classes.begin(), ont.classes.end());
        iris.insert(ont.properties.begin(), ont.properties.end());
        for (const auto* m : {&ont.labels, &ont.definitions, &ont.property_labels})
            for (const auto& [iri, text] : *m) iris.insert(iri);
        if (ont.ontology_iri) iris.insert(*ont.ontology_iri);
    }
    for (const char* name : {"uniprot_values.rq", "uniprot_values.expanded.rq", "gwas_filter_in.rq",
                             "gwas_filter_in.expanded.rq", "plain.rq"}) {
        const std::string text = sparql_fixture(name);
        const std::regex iriref(R"(<([a-z]+:[^<>\s]+)>)");
        // Namespace IRIs (prefix declarations, endpoints) have no local name.
        for (std::sregex_iterator it(text.begin(), text.end(), iriref), end; it != end; ++it)
            if (auto iri = (*it)[1].str(); !iri.ends_with('/') && !iri.ends_with('#')) iris.insert(Iri(iri));
    }
    for (const auto& iri : iris) {
        auto c = to_curie(iri);
        if (c.namespace_iri + c.local != iri.str() || c.curie != c.prefix + ":" + c.local)
            return {false, "round trip fails for " + iri.str()};
    }
    return {true, "GO_0008150 -> GO:0008150 in http://purl.obolibrary.org/obo/GO_; " + std::to_string(iris.size()) +
                      " fixture IRIs round-trip"};
}

Outcome literature() {
    const auto repo = Repository().with(classified("hp.ofn", hp_uri));
    const std::vector<std::string> tof_mentions = {
        "Tetralogy of Fallot",
        "tetralogy-of-Fallot",
        "TETRALOGY OF FALLOT",
        "tetralogy of fallot.",
        "(Tetralogy of Fallot)",
        "tetralogy of Fallot with pulmonary atresia",
        "Tetralogy  of\nFallot",
    };
    const std::vector<std::string> distractors = {
        "Fallot described the tetralogy",
        "ventricular septal wall defect",
        "septal defect of the ventricle",
        "ventricular septum defect",
        "tetralogy studies by Fallot",
        "overriding concerns about the aorta",
        "pulmonic stenosis",
        "right ventricular hypertrophy",
    };
    const std::set<int> tof_docs = {3, 8, 14, 21, 29, 36, 47};
    const std::set<int> aorta_docs = {3, 8, 10, 14, 30};
    std::vector<Document> docs;
    std::set<std::string> expected_tof, expected_aorta;
    int mention = 0;
    for (int i = 0; i < 50; ++i) {
        const std::string id = "pmid" + std::to_string(1000 + i);
        std::string title = "Case report " + std::to_string(i) + ": " + distractors[i % distractors.size()];
        std::string abstract = "We studied " + distractors[(i + 3) % distractors.size()] + " in patients.";
        std::optional<std::string> fulltext;
        if (i % 4 == 0) fulltext = "Methods. " + distractors[(i + 5) % distractors.size()] + ".";
        if (tof_docs.contains(i)) {
            const std::string& m = tof_mentions[mention++];
            if (mention % 3 == 0) title += " in " + m;
            else if (mention % 3 == 1) abstract += " Diagnosis: " + m + ".";
            else fulltext = fulltext.value_or("") + " Outcome after repair of " + m + ".";
            expected_tof.insert(id);
        }
        if (aorta_docs.contains(i)) abstract += " Echocardiography showed an overriding aorta.";
        if (aorta_docs.contains(i)) expected_aorta.insert(id);
        docs.push_back({id, title, abstract, fulltext, ""});
    }
    // Check the corpus against the brute-force oracle before trusting it.
    auto phrase = [](const std::string& text) { return analyze(text); };
    int tof_count = 0, vsd_count = 0;
    for (const auto& d : docs) {
        tof_count += oracle::mentions_phrase(d, phrase("tetralogy of fallot"));
        vsd_count += oracle::mentions_phrase(d, phrase("ventricular septal defect"));
    }
    if (tof_count != 7 || vsd_count != 0)
        return {false, "corpus has " + std::to_string(tof_count) + " ToF and " + std::to_string(vsd_count) + " VSD documents"};

    const auto index = index_corpus(docs);
    auto vsd_query = build_label_query(execute_query("'ventricular septal defect'", QueryType::Subclass, hp_uri, repo));
    auto aorta_query = build_label_query(execute_query("'overriding aorta'", QueryType::Subclass, hp_uri, repo));
    auto vsd_hits = hit_ids(search(index, {vsd_query}));
    if (vsd_hits != expected_tof) return {false, "VSD query found " + std::to_string(vsd_hits.size()) + " documents"};
    auto aorta_hits = hit_ids(search(index, {aorta_query}));
    auto both = hit_ids(search(index, {vsd_query, aorta_query}));
    std::set<std::string> intersection;
    std::set_intersection(vsd_hits.begin(), vsd_hits.end(), aorta_hits.begin(), aorta_hits.end(),
                          std::inserter(intersection, intersection.end()));
    if (both != intersection || both != oracle::scan_hits(docs, {vsd_query, aorta_query}))
        return {false, "conjunction is not the intersection"};
    if (!std::includes(aorta_hits.begin(), aorta_hits.end(), expected_aorta.begin(), expected_aorta.end()))
        return {false, "aorta query misses documents"};

    // Random corpora against the brute-force scan.
    const std::vector<std::string> vocabulary = {"heart", "aorta", "septal", "defect", "of", "the",
                                                 "valve", "right", "Fallot", "tetralogy", "stenosis"};
    std::mt19937 rng(2014);
    std::uniform_int_distribution<std::size_t> word(0, vocabulary.size() - 1);
    auto sentence = [&](int max_words) {
        std::uniform_int_distribution<int> n(0, max_words);
        std::string s;
        for (int i = n(rng); i > 0; --i) s += vocabulary[word(rng)] + (i % 4 ? " " : "; ");
        return s;
    };
    for (int round = 0; round < random_corpora; ++round) {
        std::vector<Document> corpus;
        std::uniform_int_distribution<int> size(0, 120);
        for (int i = size(rng); i > 0; --i)
            corpus.push_back({"d" + std::to_string(i), sentence(6), sentence(14),
                              i % 3 ? std::optional<std::string>(sentence(10)) : std::nullopt, ""});
        const auto random_index = index_corpus(corpus);
        std::vector<LabelQuery> queries;
        for (int k = 0; k < 2; ++k) {
            std::vector<std::string> labels;
            for (int p = 0; p < 3; ++p) labels.push_back(sentence(2) + " " + vocabulary[word(rng)]);
            queries.push_back(build_label_query(labels));
        }
        if (hit_ids(search(random_index, {queries[0]})) != oracle::scan_hits(corpus, {queries[0]}) ||
            hit_ids(search(random_index, queries)) != oracle::scan_hits(corpus, queries))
            return {false, "random corpus " + std::to_string(round) + " differs from the scan"};
    }
    return {true, "VSD query returns exactly the 7 ToF documents; conjunction = intersection (" +
                      std::to_string(both.size()) + "); " + std::to_string(random_corpora) + " random corpora match"};
}

Outcome trie() {
    std::mt19937 rng(7);
    const std::vector<std::string> alphabet = {"a", "b", "c", "A", "B", " ", "-", "é", "Ω"};
    auto random_text = [&](int max_len) {
        std::uniform_int_distribution<int> len(1, max_len), ch(0, static_cast<int>(alphabet.size()) - 1);
        std::string s;
        for (int i = len(rng); i > 0; --i) s += alphabet[ch(rng)];
        return s;
    };
    const Iri ontologies[] = {hp_uri, go_uri};
    std::uniform_int_distribution<int> entries(0, 60);
    for (int round = 0; round < trie_cases; ++round) {
        LabelTrie index;
        std::vector<Suggestion> all;
        for (int i = entries(rng); i > 0; --i) {
            Suggestion s{random_text(7), obo("T_" + std::to_string(i % 17)), ontologies[i % 2],
                         i % 5 ? EntityKind::Class : EntityKind::Property};
            index.insert(s.label, s.iri, s.ontology_uri, s.kind);
            all.push_back(s);
        }
        std::string prefix = random_text(3);
        if (normalize_label(prefix).empty()) prefix = "a";
        if (index.complete(prefix) != oracle::scan_complete(all, prefix))
            return {false, "case " + std::to_string(round) + " differs from the linear scan"};
    }

    const auto& labels = fixture_repository().labels();
    auto lower = labels.complete("vent");
    if (lower.empty() || lower != labels.complete("VENT") || lower != labels.complete("Vent") ||
        lower != labels.complete("  vEnT"))
        return {false, "completion depends on case"};
    if (std::none_of(lower.begin(), lower.end(), [](const Suggestion& s) { return s.label == "Ventricular septal defect"; }))
        return {false, "'vent' does not suggest 'Ventricular septal defect'"};
    return {true, std::to_string(trie_cases) + " random cases equal the linear scan; 'vent' = 'VENT' = 'Vent'"};
}

Outcome service_contract() {
    auto config = load_config(fixture_path("repository.conf"));
    auto loaded = load_repository(config, Fetcher());
    Service service(std::make_shared<RepositoryHandle>(Snapshot{loaded.repository, loaded.literature}), Fetcher());
    HttpServer server(service);
    const int port = server.bind("127.0.0.1", 0);
    std::thread thread([&] { server.listen_after_bind(); });
    struct Joiner {
        HttpServer& server;
        std::thread& thread;
        ~Joiner() {
            server.stop();
            thread.join();
        }
    } joiner{server, thread};

    httplib::Client client("127.0.0.1", port);
    client.set_connection_timeout(5);
    auto get = [&](const httplib::Params& params) {
        httplib::Result res;
        for (int attempt = 0; attempt < 100 && !res; ++attempt) {
            res = client.Get("/service/runquery", params, {});
            if (!res) std::this_thread::sleep_for(std::chrono::milliseconds(20));
        }
        return res;
    };

    for (const char* bad : {"'ventricular septal defect' and", "heart some", "'no such label'", "'a' or 'b'", "((("}) {
        auto res = get({{"query", bad}, {"ontology", hp_uri.str()}});
        if (!res || res->status != 200 || res->body != "[]\n") return {false, std::string("malformed query '") + bad + "'"};
    }
    const std::string vsd = "'ventricular septal defect'";
    auto untyped = get({{"query", vsd}, {"ontology", hp_uri.str()}});
    auto typed = get({{"query", vsd}, {"ontology", hp_uri.str()}, {"type", "subclass"}});
    if (!untyped || !typed || untyped->body != typed->body) return {false, "missing type differs from subclass"};

    auto records = nlohmann::json::parse(typed->body);
    if (records.empty()) return {false, "VSD subclass query is empty"};
    const std::set<std::string> keys = {"ontologyURI", "classIRI", "label", "definition"};
    for (const auto& r : records) {
        std::set<std::string> got;
        for (const auto& [k, v] : r.items()) got.insert(k);
        if (got != keys) return {false, "record keys differ"};
    }

    std::vector<std::string> args = {"owlport", "query", "--config", fixture_path("repository.conf"), hp_uri.str(),
                                     "--type", "subclass", vsd};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    std::istringstream in;
    const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err, in);
    if (status != 0 || out.str() != typed->body) return {false, "CLI output differs from the endpoint body"};
    return {true, "malformed -> 200 []; no type = subclass; keys exact; CLI output byte-equal to endpoint (" +
                      std::to_string(records.size()) + " records)"};
}

Outcome performance() {
    auto ont = generators::chain_heavy_ontology({.classes = performance_classes, .axioms = performance_axioms});
    if (static_cast<int>(ont.classes.size()) != performance_classes || static_cast<int>(ont.axioms.size()) != performance_axioms)
        return {false, "generator produced the wrong size"};
    Stopwatch clock;
    ClassifiedOntology classified_ontology(std::move(ont));
    const double t = clock.seconds();
    const auto& tax = classified_ontology.taxonomy();
    // The deepest chain member must sit below every class of its chain.
    const Iri last = generators::chain_heavy_class(performance_classes - 1);
    if (!classified_ontology.state().entails(last, generators::chain_heavy_class(performance_classes - 2)))
        return {false, "chain subsumption missing"};
    if (t >= performance_seconds) return {false, "classification took " + fixed(t, 2) + " s"};
    return {true, std::to_string(performance_classes) + " classes / " + std::to_string(performance_axioms) +
                      " axioms classified in " + fixed(t, 2) + " s < " + fixed(performance_seconds, 0) + " s (" +
                      std::to_string(tax.nodes().size()) + " taxonomy nodes)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"tof-inference", tof_inference},
        {"reasoner-oracle", reasoner_oracle},
        {"unsatisfiability", unsatisfiability},
        {"values-golden", values_golden},
        {"filter-in-golden", filter_in_golden},
        {"curie-rewriting", curie_rewriting},
        {"literature-retrieval", literature},
        {"trie-completion", trie},
        {"service-contract", service_contract},
        {"performance", performance},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome outcome;
        try {
            outcome = check();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += !outcome.pass;
        std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
