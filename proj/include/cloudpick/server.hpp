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

// In-memory session store and its HTTP front end.
//
//   POST  /sessions                      {"catalog": id}
//   GET   /sessions/{id}
//   PATCH /sessions/{id}                 partial session document
//   POST  /sessions/{id}/evaluate
//   GET   /sessions/{id}/results         latest result
//   GET   /sessions/{id}/results/{rev}   result computed at revision rev
//   GET   /catalogs, /catalogs/{id}
//
// Errors are {"code", "message", "path"} with the CLI's code names.

#ifndef CLOUDPICK_SERVER_HPP_
#define CLOUDPICK_SERVER_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cloudpick/catalog.hpp"
#include "cloudpick/error.hpp"
#include "cloudpick/session.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace cloudpick {

struct StoredResult {
  std::uint64_t revision = 0;
  nlohmann::ordered_json result;  // result_to_json() payload
};

struct SessionView {
  std::string id;
  std::string catalog_id;
  std::uint64_t revision = 0;
  SessionDocument document;
  // The latest result predates the current revision.
  bool outdated = false;
  std::vector<std::uint64_t> result_revisions;
};

// Thread-safe. Mutations and evaluations of one session are serialized;
// different sessions proceed independently.
class SessionStore {
 public:
  SessionStore() = default;
  explicit SessionStore(std::map<std::string, Catalog> catalogs);

  void add_catalog(const std::string& id, Catalog catalog);
  std::vector<std::string> catalog_ids() const;
  // Throws Error(kNotFound).
  Catalog catalog(const std::string& id) const;

  // Fresh session with the default hierarchies and indifferent judgments.
  std::string create_session(const std::string& catalog_id);
  // Validates the patched document first; on failure nothing changes.
  std::uint64_t update_session(const std::string& id, const nlohmann::json& patch);
  // Evaluates the current revision. A repeat at the same revision returns
  // the stored result.
  StoredResult evaluate(const std::string& id);
  StoredResult latest_result(const std::string& id) const;
  StoredResult result_at(const std::string& id, std::uint64_t revision) const;
  SessionView view(const std::string& id) const;

 private:
  struct Entry {
    explicit Entry(Catalog c) : catalog(std::move(c)) {}
    mutable std::mutex mutex;
    std::string id;
    std::string catalog_id;
    Catalog catalog;
    SessionDocument document;
    std::uint64_t revision = 0;
    std::map<std::uint64_t, nlohmann::ordered_json> results;
  };

  std::shared_ptr<Entry> entry(const std::string& id) const;

  mutable std::mutex mutex_;
  std::map<std::string, Catalog> catalogs_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

// Response body for an Error; `status` receives the HTTP status.
nlohmann::ordered_json error_body(const Error& error, int* status = nullptr);

class HttpServer {
 public:
  explicit HttpServer(SessionStore& store);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Blocking. Returns false when the address cannot be bound.
  bool listen(const std::string& host, int port);
  // Binds to an ephemeral port and returns it (or -1); serve with run().
  int bind_any_port(const std::string& host);
  bool run();
  void stop();
  bool running() const;
  void wait_until_ready() const;

 private:
  void install_routes();

  SessionStore& store_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace cloudpick

#endif  // CLOUDPICK_SERVER_HPP_
