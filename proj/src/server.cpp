// Copyright 2026 The cloudpick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cloudpick/server.hpp"

#include <charconv>

#include "httplib.h"

namespace cloudpick {

using nlohmann::json;
using nlohmann::ordered_json;

SessionStore::SessionStore(std::map<std::string, Catalog> catalogs)
    : catalogs_(std::move(catalogs)) {}

void SessionStore::add_catalog(const std::string& id, Catalog catalog) {
  std::lock_guard lock(mutex_);
  catalogs_.insert_or_assign(id, std::move(catalog));
}

std::vector<std::string> SessionStore::catalog_ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> ids;
  for (const auto& [id, c] : catalogs_) ids.push_back(id);
  return ids;
}

Catalog SessionStore::catalog(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = catalogs_.find(id);
  if (it == catalogs_.end()) {
    throw Error(ErrorKind::kNotFound, "/catalog", "unknown catalog '" + id + "'");
  }
  return it->second;
}

std::string SessionStore::create_session(const std::string& catalog_id) {
  auto e = std::make_shared<Entry>(catalog(catalog_id));
  e->catalog_id = catalog_id;
  e->document.catalog = catalog_id;
  std::lock_guard lock(mutex_);
  e->id = "s" + std::to_string(next_id_++);
  sessions_.emplace(e->id, e);
  return e->id;
}

std::shared_ptr<SessionStore::Entry> SessionStore::entry(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw Error(ErrorKind::kNotFound, "/session", "unknown session '" + id + "'");
  }
  return it->second;
}

std::uint64_t SessionStore::update_session(const std::string& id, const json& patch) {
  auto e = entry(id);
  std::lock_guard lock(e->mutex);
  SessionDocument next = apply_patch(e->document, patch);
  validate_session(next, e->catalog);
  e->document = std::move(next);
  return ++e->revision;
}

StoredResult SessionStore::evaluate(const std::string& id) {
  auto e = entry(id);
  std::lock_guard lock(e->mutex);
  auto it = e->results.find(e->revision);
  if (it == e->results.end()) {
    ResultSet result = run_session(e->catalog, e->document);
    it = e->results.emplace(e->revision, result_to_json(result)).first;
  }
  return {it->first, it->second};
}

StoredResult SessionStore::latest_result(const std::string& id) const {
  auto e = entry(id);
  std::lock_guard lock(e->mutex);
  if (e->results.empty()) {
    throw Error(ErrorKind::kNotFound, "/results", "session '" + id + "' has not been evaluated");
  }
  const auto& [revision, result] = *e->results.rbegin();
  return {revision, result};
}

StoredResult SessionStore::result_at(const std::string& id, std::uint64_t revision) const {
  auto e = entry(id);
  std::lock_guard lock(e->mutex);
  auto it = e->results.find(revision);
  if (it == e->results.end()) {
    throw Error(ErrorKind::kNotFound, "/results/" + std::to_string(revision),
                "no result for revision " + std::to_string(revision));
  }
  return {it->first, it->second};
}

SessionView SessionStore::view(const std::string& id) const {
  auto e = entry(id);
  std::lock_guard lock(e->mutex);
  SessionView v{e->id, e->catalog_id, e->revision, e->document, false, {}};
  for (const auto& [rev, r] : e->results) v.result_revisions.push_back(rev);
  v.outdated = !e->results.empty() && e->results.rbegin()->first != e->revision;
  return v;
}

ordered_json error_body(const Error& error, int* status) {
  if (status != nullptr) {
    switch (error.exit_code()) {
      case ExitCode::kNotFound: *status = 404; break;
      case ExitCode::kValidation:
        *status = error.kind() == ErrorKind::kParse ? 400 : 422;
        break;
      case ExitCode::kUsage: *status = 400; break;
      default: *status = 500; break;
    }
  }
  ordered_json body;
  body["code"] = code_name(error.exit_code());
  body["message"] = error.detail();
  body["path"] = error.path();
  return body;
}

namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJson);
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "", e.what());
  }
}

std::uint64_t parse_revision(const std::string& text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::kNotFound, "/results/" + text, "revision must be an integer");
  }
  return value;
}

ordered_json result_envelope(const std::string& id, const StoredResult& r, const SessionView& v) {
  ordered_json body;
  body["session"] = id;
  body["revision"] = r.revision;
  body["current_revision"] = v.revision;
  body["outdated"] = r.revision != v.revision;
  body["result"] = r.result;
  return body;
}

ordered_json view_json(const SessionView& v) {
  ordered_json body;
  body["id"] = v.id;
  body["catalog"] = v.catalog_id;
  body["revision"] = v.revision;
  body["outdated"] = v.outdated;
  body["result_revisions"] = v.result_revisions;
  json doc = session_to_json(v.document);
  doc.erase("catalog");
  body["session"] = doc;
  return body;
}

bool accepts_json(const httplib::Request& req) {
  if (!req.has_header("Accept")) return true;
  const std::string accept = req.get_header_value("Accept");
  return accept.empty() || accept.find("json") != std::string::npos ||
         accept.find("*/*") != std::string::npos;
}

// Wraps a handler with content negotiation and Error -> JSON mapping.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      if (!accepts_json(req)) {
        throw Error(ErrorKind::kUsage, "", "only application/json responses are available");
      }
      fn(req, res);
    } catch (const Error& e) {
      int status = 500;
      ordered_json body = error_body(e, &status);
      if (e.kind() == ErrorKind::kUsage && !accepts_json(req)) status = 406;
      send(res, status, body);
    } catch (const std::exception& e) {
      send(res, 500, error_body(Error(ErrorKind::kInternal, "", e.what())));
    }
  };
}

}  // namespace

HttpServer::HttpServer(SessionStore& store)
    : store_(store), http_(std::make_unique<httplib::Server>()) {
  install_routes();
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::install_routes() {
  httplib::Server& http = *http_;
  SessionStore& store = store_;

  http.Get("/catalogs", guarded([&store](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"catalogs", store.catalog_ids()}});
  }));

  http.Get("/catalogs/:id", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    const Catalog c = store.catalog(req.path_params.at("id"));
    send(res, 200, ordered_json::parse(save_catalog_text(c)));
  }));

  http.Post("/sessions", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    if (!body.is_object() || !body.contains("catalog") || !body["catalog"].is_string()) {
      throw Error(ErrorKind::kSchema, "/catalog", "expected {\"catalog\": <catalog id>}");
    }
    const std::string id = store.create_session(body["catalog"].get<std::string>());
    send(res, 201, view_json(store.view(id)));
  }));

  http.Get("/sessions/:id", guarded([&store](const httplib::Request& req, httplib::Response& res) {
    send(res, 200, view_json(store.view(req.path_params.at("id"))));
  }));

  http.Patch("/sessions/:id",
             guarded([&store](const httplib::Request& req, httplib::Response& res) {
               const std::string& id = req.path_params.at("id");
               store.update_session(id, parse_body(req));
               send(res, 200, view_json(store.view(id)));
             }));

  http.Post("/sessions/:id/evaluate",
            guarded([&store](const httplib::Request& req, httplib::Response& res) {
              const std::string& id = req.path_params.at("id");
              const StoredResult r = store.evaluate(id);
              send(res, 200, result_envelope(id, r, store.view(id)));
            }));

  http.Get("/sessions/:id/results",
           guarded([&store](const httplib::Request& req, httplib::Response& res) {
             const std::string& id = req.path_params.at("id");
             const StoredResult r = store.latest_result(id);
             send(res, 200, result_envelope(id, r, store.view(id)));
           }));

  http.Get("/sessions/:id/results/:revision",
           guarded([&store](const httplib::Request& req, httplib::Response& res) {
             const std::string& id = req.path_params.at("id");
             const StoredResult r =
                 store.result_at(id, parse_revision(req.path_params.at("revision")));
             send(res, 200, result_envelope(id, r, store.view(id)));
           }));

  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const ErrorKind kind = res.status == 404 ? ErrorKind::kNotFound : ErrorKind::kUsage;
    ordered_json body = error_body(Error(kind, "", "no such route or method"));
    res.set_content(body.dump(2) + "\n", kJson);
  });
}

bool HttpServer::listen(const std::string& host, int port) { return http_->listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return http_->bind_to_any_port(host); }

bool HttpServer::run() { return http_->listen_after_bind(); }

void HttpServer::stop() {
  if (http_) http_->stop();
}

bool HttpServer::running() const { return http_->is_running(); }

void HttpServer::wait_until_ready() const { http_->wait_until_ready(); }

}  // namespace cloudpick
