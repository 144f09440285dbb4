#include "hexslide/service.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>

#include <fmt/format.h>
#include <httplib.h>

#include "hexslide/analysis.hpp"
#include "hexslide/error.hpp"

namespace hexslide {

namespace fs = std::filesystem;

struct GameService::Session {
  Session(std::string id_, Board board_, int holes_, Configuration initial_, Configuration target_)
      : id(std::move(id_)),
        board(std::move(board_)),
        holes(holes_),
        initial(initial_),
        current(std::move(initial_)),
        target(std::move(target_)) {}

  std::mutex mutex;
  std::string id;
  Board board;
  int holes;
  Configuration initial;
  Configuration current;
  Configuration target;
  std::vector<SlideMove> log;
  std::string created_at;
  std::uint64_t seed = 0;
  std::string mode;
  int steps = 0;
  // Distances to the target, built on the first hint request.
  std::shared_ptr<const DistanceTable> table;
  bool table_failed = false;
};

namespace {

Response error(int status, const std::string& message) {
  return {status, Json{{"error", message}}};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::budget_exceeded:
    case ErrorCode::too_large: return 503;
    case ErrorCode::illegal_move: return 409;
    case ErrorCode::division_not_exact:
    case ErrorCode::hypotheses_violated: return 500;
    default: return 400;
  }
}

Response error(const Error& e) { return error(status_for(e.code()), e.what()); }

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Configuration random_walk(Configuration c, int steps, std::mt19937_64& rng) {
  for (int i = 0; i < steps; ++i) {
    const auto moves = legal_moves(c);
    if (moves.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
    c = apply_move(c, moves[pick(rng)]);
  }
  return c;
}

Configuration relabel_randomly(const Configuration& c, std::mt19937_64& rng) {
  std::vector<std::uint8_t> labels(c.labels().begin(), c.labels().end());
  std::vector<std::uint8_t> tiles;
  for (auto l : labels)
    if (l != 0) tiles.push_back(l);
  std::shuffle(tiles.begin(), tiles.end(), rng);
  for (std::size_t i = 0, k = 0; i < labels.size(); ++i)
    if (labels[i] != 0) labels[i] = tiles[k++];
  return Configuration(c.board(), std::move(labels));
}

Configuration swap_first_tiles(const Configuration& c) {
  std::vector<std::uint8_t> labels(c.labels().begin(), c.labels().end());
  int first = -1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) continue;
    if (first < 0) {
      first = static_cast<int>(i);
    } else {
      std::swap(labels[first], labels[i]);
      break;
    }
  }
  return Configuration(c.board(), std::move(labels));
}

Json moves_json(std::span<const SlideMove> moves) {
  Json out = Json::array();
  for (const auto& m : moves) out.push_back(to_json(m));
  return out;
}

Board board_from_query(const std::map<std::string, std::string>& q) {
  auto get = [&](const char* key) -> const std::string* {
    auto it = q.find(key);
    return it == q.end() ? nullptr : &it->second;
  };
  if (auto b = get("board")) {
    const Json j = Json::parse(*b, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::malformed_input, "board is not valid JSON");
    return board_from_json(j);
  }
  const std::string* shape = get("shape");
  if (!shape) throw Error(ErrorCode::malformed_input, "missing shape");
  auto num = [&](const char* key) {
    const std::string* v = get(key);
    if (!v) throw Error(ErrorCode::malformed_input, fmt::format("missing {}", key));
    try {
      std::size_t used = 0;
      const int n = std::stoi(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
      return n;
    } catch (const std::exception&) {
      throw Error(ErrorCode::malformed_input, fmt::format("{} must be an integer", key));
    }
  };
  const auto family = parse_shape_family(*shape);
  if (!family || *family == ShapeFamily::explicit_cells)
    throw Error(ErrorCode::malformed_input, fmt::format("unknown shape \"{}\"", *shape));
  if (*family == ShapeFamily::parallelogram || *family == ShapeFamily::trimmed_parallelogram)
    return Board::build(*family, num("m1"), num("m2"));
  return Board::build(*family, num("m"));
}

}  // namespace

GameService::GameService(ServiceOptions options)
    : options_(std::move(options)), id_state_(std::random_device{}()) {}

GameService::~GameService() = default;

std::string GameService::new_id() {
  std::lock_guard lock(id_mutex_);
  // splitmix64 step: distinct ids without a shared RNG object.
  std::uint64_t z = (id_state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return fmt::format("{:016x}", z ^ (z >> 31));
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t GameService::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

Json GameService::session_json(const Session& s) const {
  return {{"id", s.id},
          {"board", to_json(s.board)},
          {"name", s.board.name()},
          {"holes", s.holes},
          {"initial", to_json(s.initial)},
          {"current", to_json(s.current)},
          {"target", to_json(s.target)},
          {"move_log", moves_json(s.log)},
          {"moves", s.log.size()},
          {"legal_moves", moves_json(legal_moves(s.current))},
          {"tight_corners", [&] {
             Json out = Json::array();
             for (Cell c : tight_corners(s.board)) out.push_back(to_json(c));
             return out;
           }()},
          {"solved", s.current == s.target},
          {"scramble", {{"mode", s.mode}, {"steps", s.steps}, {"seed", s.seed}}},
          {"created_at", s.created_at}};
}

void GameService::snapshot(const Session& s) const {
  if (options_.snapshot_dir.empty()) return;
  std::error_code ec;
  fs::create_directories(options_.snapshot_dir, ec);
  const fs::path file = fs::path(options_.snapshot_dir) / (s.id + ".json");
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << session_json(s).dump(2);
  }
  fs::rename(tmp, file, ec);
}

std::size_t GameService::load_snapshots() {
  if (options_.snapshot_dir.empty() || !fs::is_directory(options_.snapshot_dir)) return 0;
  std::size_t loaded = 0;
  for (const auto& entry : fs::directory_iterator(options_.snapshot_dir)) {
    if (entry.path().extension() != ".json") continue;
    try {
      std::ifstream in(entry.path());
      const Json j = Json::parse(in);
      const Board board = board_from_json(j.at("board"));
      auto s = std::make_shared<Session>(j.at("id").get<std::string>(), board,
                                         j.at("holes").get<int>(),
                                         configuration_from_json(j.at("initial"), board),
                                         configuration_from_json(j.at("target"), board));
      for (const Json& m : j.at("move_log")) {
        const SlideMove move = move_from_json(m, s->current);
        s->current = apply_move(s->current, move);
        s->log.push_back(move);
      }
      s->created_at = j.value("created_at", "");
      s->mode = j.at("scramble").value("mode", "");
      s->steps = j.at("scramble").value("steps", 0);
      s->seed = j.at("scramble").value("seed", std::uint64_t{0});
      std::unique_lock lock(sessions_mutex_);
      sessions_[s->id] = std::move(s);
      ++loaded;
    } catch (const std::exception&) {
      // Unreadable snapshots are skipped.
    }
  }
  return loaded;
}

Response GameService::create_game(const Json& body) {
  try {
    if (!body.is_object()) return error(400, "request body must be a JSON object");
    if (!body.contains("board")) return error(400, "missing board");
    const Board board = board_from_json(body["board"]);
    if (!body.contains("holes") || !body["holes"].is_number_integer())
      return error(400, "holes must be an integer");
    const int h = body["holes"].get<int>();
    if (h < 0 || h > board.size()) return error(400, "hole count out of range");
    if (board.size() - h > 255) return error(400, "boards are limited to 255 tiles");

    const Json scramble = body.value("scramble", Json::object());
    if (!scramble.is_object()) return error(400, "scramble must be an object");
    const std::string mode = scramble.value("mode", std::string("solvable"));
    const int steps = scramble.value("steps", 100);
    if (steps < 0 || steps > 1'000'000) return error(400, "steps must lie in 0..1000000");
    std::uint64_t seed;
    if (scramble.contains("seed")) {
      if (!scramble["seed"].is_number_integer()) return error(400, "seed must be an integer");
      seed = scramble["seed"].get<std::uint64_t>();
    } else {
      seed = (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    }

    const Configuration target = canonical_start(board, h);
    std::mt19937_64 rng(seed);
    std::optional<Configuration> start;
    if (mode == "solvable") {
      start = random_walk(target, steps, rng);
    } else if (mode == "random") {
      start = relabel_randomly(target, rng);
    } else if (mode == "unsolvable") {
      start = swap_first_tiles(random_walk(target, steps, rng));
      DecideOptions opts;
      opts.budget = options_.budget;
      const auto v = decide_solvable(*start, target, opts);
      if (v.decision != Decision::unsolvable)
        return error(422, fmt::format("{} with {} holes: cannot guarantee an unsolvable scramble ({})",
                                      board.name(), h, v.explanation));
    } else {
      return error(400, fmt::format("unknown scramble mode \"{}\"", mode));
    }

    auto s = std::make_shared<Session>(new_id(), board, h, *start, target);
    s->created_at = utc_now();
    s->seed = seed;
    s->mode = mode;
    s->steps = steps;
    Json out = session_json(*s);
    snapshot(*s);
    {
      std::unique_lock lock(sessions_mutex_);
      sessions_[s->id] = s;
    }
    return {201, std::move(out)};
  } catch (const Error& e) {
    return error(e);
  } catch (const Json::exception& e) {
    return error(400, e.what());
  }
}

Response GameService::get_game(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  std::lock_guard lock(s->mutex);
  return {200, session_json(*s)};
}

Response GameService::post_move(const std::string& id, const Json& body) {
  auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  std::lock_guard lock(s->mutex);
  try {
    const SlideMove move = move_from_json(body, s->current);
    s->current = apply_move(s->current, move);
    s->log.push_back(move);
    snapshot(*s);
    return {200, session_json(*s)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::cell_not_on_board) return error(409, e.what());
    return error(e);
  }
}

Response GameService::solvability(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  Configuration current = [&] {
    std::lock_guard lock(s->mutex);
    return s->current;
  }();
  DecideOptions opts;
  opts.budget = options_.budget;
  try {
    return {200, to_json(decide_solvable(current, s->target, opts))};
  } catch (const Error& e) {
    return error(e);
  }
}

Response GameService::hint(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "unknown game " + id);
  std::lock_guard lock(s->mutex);
  if (s->current == s->target) return {200, Json{{"hint", nullptr}, {"reason", "solved"}}};

  if (!s->table && !s->table_failed) {
    try {
      s->table = std::make_shared<DistanceTable>(s->target, options_.hint_budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget_exceeded) return error(e);
      s->table_failed = true;
    }
  }
  if (s->table) {
    const auto d = s->table->distance(s->current);
    if (!d) return {200, Json{{"hint", nullptr}, {"reason", "unsolvable"}}};
    for (const SlideMove& m : legal_moves(s->current)) {
      if (s->table->distance(apply_move(s->current, m)) == *d - 1)
        return {200, Json{{"hint", to_json(m)}, {"distance", *d}}};
    }
    return error(500, "distance table has no descending move");
  }
  try {
    auto path = shortest_path(s->current, s->target, options_.hint_budget);
    if (!path) return {200, Json{{"hint", nullptr}, {"reason", "unsolvable"}}};
    return {200, Json{{"hint", to_json(path->front())}, {"distance", path->size()}}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded) return error(e);
    return {503, Json{{"hint", nullptr}, {"reason", "budget"}}};
  }
}

Response GameService::analysis(const std::map<std::string, std::string>& query) {
  try {
    const Board board = board_from_query(query);
    auto it = query.find("holes");
    if (it == query.end()) return error(400, "missing holes");
    int h = 0;
    try {
      h = std::stoi(it->second);
    } catch (const std::exception&) {
      return error(400, "holes must be an integer");
    }
    SearchOptions opts;
    opts.budget = options_.budget;
    opts.threads = options_.threads;
    const AnalysisReport r = analyze(board, h, opts);
    if (r.budget_exceeded) return {503, to_json(r)};
    return {200, to_json(r)};
  } catch (const Error& e) {
    return error(e);
  }
}

Response GameService::health() const {
  return {200, Json{{"status", "ok"}, {"sessions", session_count()}}};
}

Response GameService::handle(std::string_view method, std::string_view path,
                             const std::map<std::string, std::string>& query,
                             std::string_view body) {
  auto parse_body = [&]() -> std::optional<Json> {
    Json j = Json::parse(body, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return j;
  };
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0; pos < path.size();) {
    const std::size_t next = path.find('/', pos);
    const std::size_t end = next == std::string_view::npos ? path.size() : next;
    if (end > pos) parts.push_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  auto only = [&](std::string_view m) { return method == m; };

  if (parts.size() == 1 && parts[0] == "healthz")
    return only("GET") ? health() : error(405, "method not allowed");
  if (parts.size() == 1 && parts[0] == "analysis")
    return only("GET") ? analysis(query) : error(405, "method not allowed");
  if (!parts.empty() && parts[0] == "games") {
    if (parts.size() == 1) {
      if (!only("POST")) return error(405, "method not allowed");
      auto j = parse_body();
      return j ? create_game(*j) : error(400, "request body is not valid JSON");
    }
    const std::string id(parts[1]);
    if (parts.size() == 2) return only("GET") ? get_game(id) : error(405, "method not allowed");
    if (parts.size() == 3) {
      if (parts[2] == "moves") {
        if (!only("POST")) return error(405, "method not allowed");
        if (!find(id)) return error(404, "unknown game " + id);
        auto j = parse_body();
        return j ? post_move(id, *j) : error(400, "request body is not valid JSON");
      }
      if (parts[2] == "solvability")
        return only("GET") ? solvability(id) : error(405, "method not allowed");
      if (parts[2] == "hint") return only("GET") ? hint(id) : error(405, "method not allowed");
    }
  }
  return error(404, "no such endpoint");
}

struct HttpServer::Impl {
  GameService& service;
  httplib::Server server;
};

HttpServer::HttpServer(GameService& service) : impl_(new Impl{service, {}}) {
  auto& srv = impl_->server;
  const std::string origin = service.options().cors_origin;
  srv.set_default_headers({{"Access-Control-Allow-Origin", origin},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  srv.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const Response r = impl_->service.handle(req.method, req.path, query, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  srv.Get(".*", dispatch);
  srv.Post(".*", dispatch);
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }

}  // namespace hexslide
