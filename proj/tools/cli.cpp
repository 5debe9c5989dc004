#include "cli.hpp"

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "owlport/errors.hpp"
#include "owlport/service.hpp"

namespace owlport {

namespace {

namespace fs = std::filesystem;

struct RepositoryOptions {
    std::string config;
    std::vector<std::string> locations;
};

void add_repository_options(CLI::App& cmd, RepositoryOptions& opts) {
    cmd.add_option("--config", opts.config, "Repository configuration file");
    cmd.add_option("--ontology", opts.locations, "Ontology document (path or URL); repeatable");
}

// Absolute IRIs name themselves; local paths become file: URIs.
Iri document_uri(const std::string& location) {
    if (Iri::is_absolute(location) && location.find(':') > 1) return Iri(location);
    return Iri("file://" + fs::absolute(location).lexically_normal().string());
}

std::string read_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text)) throw Error("cannot write " + path);
}

struct Loaded {
    RepositoryConfig config;
    LoadResult result;
};

Loaded load(const RepositoryOptions& opts, std::ostream& err) {
    Loaded loaded;
    if (!opts.config.empty()) loaded.config = load_config(opts.config);
    for (const auto& location : opts.locations) {
        const Iri uri = document_uri(location);
        loaded.config.ontologies.push_back(
            {uri, Iri::is_absolute(location) ? std::nullopt : std::optional<std::string>(location)});
    }
    if (loaded.config.ontologies.empty()) throw CLI::ValidationError("--config/--ontology", "no ontologies given");
    Fetcher fetcher({loaded.config.fetch_timeout, loaded.config.max_fetch_bytes});
    loaded.result = load_repository(loaded.config, fetcher);
    for (const auto& f : loaded.result.failures) err << "warning: " << f.uri.str() << ": " << f.reason << '\n';
    return loaded;
}

std::string taxonomy_json(const ClassifiedOntology& o) {
    const auto& tax = o.taxonomy();
    nlohmann::json nodes = nlohmann::json::array();
    for (std::size_t n = 0; n < tax.nodes().size(); ++n) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& m : tax.nodes()[n].members) members.push_back(m.str());
        nodes.push_back({{"id", n}, {"members", members}, {"supers", tax.direct_supers(n)}});
    }
    nlohmann::json unsat = nlohmann::json::array();
    for (const auto& c : tax.unsatisfiable()) unsat.push_back(c.str());
    return nlohmann::json{{"ontologyURI", o.uri().str()}, {"nodes", nodes}, {"unsatisfiable", unsat}}.dump(2) + "\n";
}

int serve(const RepositoryOptions& opts, const std::string& listen_flag, std::ostream& err) {
    // Handle termination signals on a dedicated thread.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    auto loaded = load(opts, err);
    std::string listen = loaded.config.listen_address;
    if (const char* env = std::getenv("OWLPORT_LISTEN"); env && *env) listen = env;
    if (!listen_flag.empty()) listen = listen_flag;
    const ListenAddress address = parse_listen_address(listen);

    auto handle = std::make_shared<RepositoryHandle>(Snapshot{loaded.result.repository, loaded.result.literature});
    Service service(handle, Fetcher({loaded.config.fetch_timeout, loaded.config.max_fetch_bytes}));
    HttpServer server(service);
    const int port = server.bind(address.host, address.port);
    err << "serving " << handle->snapshot()->repository.ontologies().size() << " ontologies on " << address.host << ':'
        << port << std::endl;

    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    server.listen_after_bind();
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app("Ontology repository, EL reasoner and semantic query tools", "owlport");
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    RepositoryOptions repo;
    std::string listen;
    auto* serve_cmd = app.add_subcommand("serve", "Classify the configured ontologies and serve the HTTP API");
    serve_cmd->add_option("--config", repo.config, "Repository configuration file")->required();
    serve_cmd->add_option("--listen", listen, "host:port (overrides config and OWLPORT_LISTEN)");

    std::string location, taxonomy_out, uri_override;
    bool report_unsat = false;
    auto* classify_cmd = app.add_subcommand("classify", "Classify one ontology and print a summary");
    classify_cmd->add_option("ontology", location, "Ontology document (path or URL)")->required();
    classify_cmd->add_option("--taxonomy-out", taxonomy_out, "Write the taxonomy as JSON");
    classify_cmd->add_flag("--report-unsat", report_unsat, "List unsatisfiable classes");
    classify_cmd->add_option("--uri", uri_override, "Document URI to use instead of the location");

    std::string query_type = "subclass", query_text;
    auto* query_cmd = app.add_subcommand("query", "Run a Manchester class query; prints JSON records");
    query_cmd->add_option("ontology", location,
                          "Ontology URI from --config, a document path/URL, or 'all'")
        ->required();
    query_cmd->add_option("query", query_text, "Manchester class expression")->required();
    query_cmd->add_option("--type", query_type, "subclass, superclass or equivalent");
    query_cmd->add_option("--config", repo.config, "Repository configuration file");
    query_cmd->add_option("--uri", uri_override, "Document URI to use instead of the location");

    std::string prefix;
    std::size_t limit = 10;
    auto* complete_cmd = app.add_subcommand("complete", "Suggest labels starting with a prefix");
    complete_cmd->add_option("prefix", prefix, "Label prefix")->required();
    complete_cmd->add_option("--limit", limit, "Maximum suggestions")->check(CLI::PositiveNumber);
    add_repository_options(*complete_cmd, repo);

    bool prefix_form = false;
    std::string endpoint, sparql_file;
    std::vector<std::string> prefix_overrides;
    auto* expand_cmd = app.add_subcommand("expand", "Expand OWL directives in a SPARQL query");
    expand_cmd->add_option("sparql", sparql_file, "SPARQL file, or - for stdin")->required();
    expand_cmd->add_flag("--prefix-form", prefix_form, "Emit CURIEs and add missing PREFIX declarations");
    expand_cmd->add_option("--prefix", prefix_overrides, "NAME=NAMESPACE to declare for a prefix; repeatable");
    expand_cmd->add_option("--endpoint", endpoint, "Send the expanded query to this SPARQL endpoint");
    add_repository_options(*expand_cmd, repo);

    std::string corpus, index_out;
    auto* index_cmd = app.add_subcommand("index", "Build a literature index from a corpus");
    index_cmd->add_option("--corpus", corpus, "Corpus directory or document file")->required();
    index_cmd->add_option("--out", index_out, "Index file to write")->required();

    std::string index_file;
    std::vector<std::string> search_queries;
    std::size_t search_limit = 100;
    auto* search_cmd = app.add_subcommand("search", "Find documents mentioning every query's classes");
    search_cmd->add_option("--index", index_file, "Literature index file")->required();
    search_cmd->add_option("queries", search_queries, "Manchester class expressions (conjunction)")->required();
    search_cmd->add_option("--limit", search_limit, "Maximum hits")->check(CLI::PositiveNumber);
    add_repository_options(*search_cmd, repo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return 2;
    }

    try {
        if (*serve_cmd) return serve(repo, listen, err);

        if (*classify_cmd) {
            const Iri uri = uri_override.empty() ? document_uri(location) : Iri(uri_override);
            Fetcher fetcher;
            if (!Iri::is_absolute(location) || !uri_override.empty()) fetcher.add_location(uri.str(), location);
            const auto start = std::chrono::steady_clock::now();
            auto classified = load_ontology(uri, fetcher);
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
            const auto& ont = classified->ontology();
            err << uri.str() << ": " << ont.classes.size() << " classes, " << ont.properties.size() << " properties, "
                << ont.axioms.size() << " axioms, " << classified->taxonomy().unsatisfiable().size()
                << " unsatisfiable, classified in " << ms.count() << " ms\n";
            if (report_unsat)
                for (const auto& c : classified->taxonomy().unsatisfiable())
                    out << c.str() << '\t' << ont.display_label(c) << '\n';
            if (!taxonomy_out.empty()) write_text(taxonomy_out, taxonomy_json(*classified));
            return 0;
        }

        if (*query_cmd) {
            auto type = parse_query_type(query_type);
            if (!type) {
                err << "error: --type must be subclass, superclass or equivalent\n";
                return 2;
            }
            try {
                Repository repository;
                std::optional<Iri> target;
                if (!repo.config.empty()) {
                    auto loaded = load(repo, err);
                    repository = loaded.result.repository;
                    if (location != "all") target = Iri(location);
                } else {
                    const Iri uri = uri_override.empty() ? document_uri(location) : Iri(uri_override);
                    Fetcher fetcher;
                    if (!Iri::is_absolute(location) || !uri_override.empty()) fetcher.add_location(uri.str(), location);
                    repository = repository.with(load_ontology(uri, fetcher));
                    target = uri;
                }
                out << records_to_json(execute_query(query_text, *type, target, repository));
                return 0;
            } catch (const std::exception& e) {
                out << records_to_json({});
                err << "error: " << e.what() << '\n';
                return 1;
            }
        }

        if (*complete_cmd) {
            auto loaded = load(repo, err);
            out << suggestions_to_json(loaded.result.repository.labels().complete(prefix, limit));
            return 0;
        }

        if (*expand_cmd) {
            ExpansionOptions options;
            options.prefix_form = prefix_form;
            for (const auto& p : prefix_overrides) {
                auto eq = p.find('=');
                if (eq == std::string::npos || eq == 0) {
                    err << "error: --prefix expects NAME=NAMESPACE\n";
                    return 2;
                }
                options.prefix_overrides[p.substr(0, eq)] = p.substr(eq + 1);
            }
            const std::string text = read_text(sparql_file, in);
            Repository repository;
            Fetcher fetcher;
            if (!repo.config.empty() || !repo.locations.empty()) {
                auto loaded = load(repo, err);
                repository = loaded.result.repository;
                fetcher = Fetcher({loaded.config.fetch_timeout, loaded.config.max_fetch_bytes});
            }
            OntologyResolver resolver = [&fetcher](const Iri& uri) { return load_ontology(uri, fetcher); };
            const std::string expanded = expand(text, repository_executor(repository, resolver), options);
            if (endpoint.empty()) {
                out << expanded;
                return 0;
            }
            auto reply = fetcher.post_sparql(endpoint, expanded);
            out << reply.body;
            if (reply.status < 200 || reply.status >= 300) {
                err << "error: endpoint answered HTTP " << reply.status << '\n';
                return 1;
            }
            return 0;
        }

        if (*index_cmd) {
            auto index = index_corpus(load_corpus(corpus));
            write_text(index_out, index.to_json());
            err << "indexed " << index.documents().size() << " documents, " << index.terms().size() << " terms\n";
            return 0;
        }

        if (*search_cmd) {
            auto index = InvertedIndex::from_json(read_text(index_file, in));
            auto loaded = load(repo, err);
            std::vector<LabelQuery> queries;
            for (const auto& text : search_queries) {
                auto records = execute_query(text, QueryType::Subclass, std::nullopt, loaded.result.repository);
                if (records.empty()) throw UnknownEntity(text);
                queries.push_back(build_label_query(records));
            }
            out << hits_to_json(search(index, queries, search_limit), index, queries);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace owlport
