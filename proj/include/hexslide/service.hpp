#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "hexslide/json_io.hpp"

namespace hexslide {

struct ServiceOptions {
  std::uint64_t budget = kDefaultStateBudget;  // solvability and analysis
  std::uint64_t hint_budget = 1'000'000;
  int threads = 1;
  std::string snapshot_dir;  // empty: memory only
  std::string cors_origin = "*";
};

struct Response {
  int status = 200;
  Json body;
};

// Game sessions behind the HTTP API. Every method is safe to call from
// many threads; mutations of one session are serialised.
class GameService {
 public:
  explicit GameService(ServiceOptions options = {});
  ~GameService();

  Response create_game(const Json& body);
  Response get_game(const std::string& id);
  Response post_move(const std::string& id, const Json& body);
  Response solvability(const std::string& id);
  Response hint(const std::string& id);
  Response analysis(const std::map<std::string, std::string>& query);
  Response health() const;

  // Routes a request by method and path.
  Response handle(std::string_view method, std::string_view path,
                  const std::map<std::string, std::string>& query, std::string_view body);

  // Restores sessions from snapshot_dir; returns how many were loaded.
  std::size_t load_snapshots();
  std::size_t session_count() const;
  const ServiceOptions& options() const { return options_; }

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;
  Json session_json(const Session& s) const;
  void snapshot(const Session& s) const;
  std::string new_id();

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex id_mutex_;
  std::uint64_t id_state_;
};

// HTTP/1.1 front end over a GameService.
class HttpServer {
 public:
  explicit HttpServer(GameService& service);
  ~HttpServer();
  // Blocks until stop().
  bool listen(const std::string& host, int port);
  // Binds an ephemeral port; pair with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hexslide
