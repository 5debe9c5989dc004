#include <httplib.h>

#include "owlport/errors.hpp"
#include "owlport/service.hpp"

namespace owlport {

struct HttpServer::Impl {
    httplib::Server server;
};

namespace {

Params params_of(const httplib::Request& req) { return Params(req.params.begin(), req.params.end()); }

void send(httplib::Response& res, const HttpResponse& out) {
    res.status = out.status;
    res.set_content(out.body, out.content_type);
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
        try {
            send(res, handler(req));
        } catch (const std::exception& e) {
            log_line(req.method + " " + req.path + ": " + e.what());
            send(res, {500, "application/json", "{\"error\":\"internal error\"}\n"});
        }
    };
}

}  // namespace

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>()) {
    auto& s = impl_->server;
    s.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
    s.Options(R"(/service/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    s.Get("/service/ontologies", guarded([&service](const httplib::Request&) { return service.ontologies(); }));
    s.Get("/service/runquery",
          guarded([&service](const httplib::Request& req) { return service.runquery(params_of(req)); }));
    s.Get("/service/complete",
          guarded([&service](const httplib::Request& req) { return service.complete(params_of(req)); }));
    s.Post("/service/expand",
           guarded([&service](const httplib::Request& req) { return service.expand(params_of(req), req.body); }));
    s.Get("/service/literature",
          guarded([&service](const httplib::Request& req) { return service.literature(params_of(req)); }));
    s.Post("/service/ontology",
           guarded([&service](const httplib::Request& req) { return service.add_ontology(params_of(req)); }));
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot listen on " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen_after_bind() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace owlport
