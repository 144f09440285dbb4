#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include <httplib.h>
#include <unistd.h>

#include "hexslide/service.hpp"
#include "oracles.hpp"

using namespace hexslide;
namespace fs = std::filesystem;

namespace {

Json game_request(Json board, int holes, const std::string& mode, int steps, std::uint64_t seed) {
  return {{"board", std::move(board)},
          {"holes", holes},
          {"scramble", {{"mode", mode}, {"steps", steps}, {"seed", seed}}}};
}

Json flower(int m) { return {{"family", "flower"}, {"m", m}}; }
Json triangle(int m) { return {{"family", "triangle"}, {"m", m}}; }
Json parallelogram(int a, int b) { return {{"family", "parallelogram"}, {"m1", a}, {"m2", b}}; }
Json trimmed_parallelogram(int a, int b) {
  return {{"family", "trimmed-parallelogram"}, {"m1", a}, {"m2", b}};
}

std::string create(GameService& s, const Json& req) {
  const Response r = s.create_game(req);
  EXPECT_EQ(r.status, 201) << r.body.dump();
  return r.body.value("id", "");
}

Configuration current_of(const Json& game) {
  return configuration_from_json(game["current"]);
}

Json move_body(const Json& move) { return {{"from", move["from"]}, {"to", move["to"]}}; }

}  // namespace

TEST(Service, Health) {
  GameService s;
  EXPECT_EQ(s.health().status, 200);
  EXPECT_EQ(s.handle("GET", "/healthz", {}, "").body["status"], "ok");
}

TEST(Service, SolvableScrambleIsSolvable) {
  GameService s;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::string id = create(s, game_request(flower(3), 3, "solvable", 200, seed));
    const Response v = s.solvability(id);
    EXPECT_EQ(v.status, 200);
    EXPECT_EQ(v.body["decision"], "solvable");
  }
}

TEST(Service, ScrambleIsSeeded) {
  GameService s;
  const Json a = s.create_game(game_request(triangle(4), 3, "random", 0, 99)).body;
  const Json b = s.create_game(game_request(triangle(4), 3, "random", 0, 99)).body;
  EXPECT_NE(a["id"], b["id"]);
  EXPECT_EQ(a["initial"], b["initial"]);
  EXPECT_EQ(a["scramble"]["seed"], 99);
  const Json c = s.create_game(game_request(triangle(4), 3, "random", 0, 100)).body;
  EXPECT_NE(a["initial"], c["initial"]);
  // Random keeps the target's holes.
  EXPECT_EQ(current_of(a).holes(), configuration_from_json(a["target"]).holes());
}

TEST(Service, UnsolvableModes) {
  GameService s;
  const Response maximal = s.create_game(game_request(parallelogram(3, 3), 3, "unsolvable", 20, 1));
  EXPECT_EQ(maximal.status, 422);

  const std::string id = create(s, game_request(trimmed_parallelogram(3, 4), 2, "unsolvable", 30, 2));
  const Json v = s.solvability(id).body;
  EXPECT_EQ(v["decision"], "unsolvable");
  EXPECT_EQ(v["rule"], "strong-parity");
}

TEST(Service, ScrambleSoundness) {
  GameService s;
  struct Row {
    Json board;
    int h;
  };
  const std::vector<Row> rows = {{triangle(3), 2},          {triangle(4), 2},
                                 {flower(2), 2},            {flower(3), 2},
                                 {parallelogram(2, 4), 2},  {parallelogram(3, 4), 2},
                                 {trimmed_parallelogram(3, 4), 2}};
  for (const auto& [board, h] : rows) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const std::string good = create(s, game_request(board, h, "solvable", 50, seed));
      EXPECT_EQ(s.solvability(good).body["decision"], "solvable") << board.dump();
      const Response bad = s.create_game(game_request(board, h, "unsolvable", 50, seed));
      if (bad.status == 201)
        EXPECT_EQ(s.solvability(bad.body["id"]).body["decision"], "unsolvable") << board.dump();
      else
        EXPECT_EQ(bad.status, 422) << board.dump();
    }
  }
}

TEST(Service, BadRequests) {
  GameService s;
  EXPECT_EQ(s.handle("POST", "/games", {}, "{oops").status, 400);
  EXPECT_EQ(s.create_game(Json::parse(R"({"holes":2})")).status, 400);
  EXPECT_EQ(s.create_game({{"board", {{"family", "blob"}}}, {"holes", 2}}).status, 400);
  EXPECT_EQ(s.create_game({{"board", triangle(3)}, {"holes", 9}}).status, 400);
  EXPECT_EQ(s.create_game(game_request(triangle(3), 2, "chaotic", 5, 1)).status, 400);
  EXPECT_EQ(s.get_game("nope").status, 404);
  EXPECT_EQ(s.hint("nope").status, 404);
  EXPECT_EQ(s.solvability("nope").status, 404);
  EXPECT_EQ(s.handle("POST", "/games/nope/moves", {}, "{}").status, 404);
  EXPECT_EQ(s.handle("GET", "/nowhere", {}, "").status, 404);
  EXPECT_EQ(s.handle("DELETE", "/games", {}, "").status, 405);
}

TEST(Service, MovesAndReplay) {
  GameService s;
  const std::string id = create(s, game_request(flower(3), 3, "solvable", 40, 7));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Json game = s.get_game(id).body;
    const Json& moves = game["legal_moves"];
    ASSERT_FALSE(moves.empty());
    const Response r = s.post_move(id, move_body(moves[rng() % moves.size()]));
    ASSERT_EQ(r.status, 200);
  }
  const Json game = s.get_game(id).body;
  EXPECT_EQ(game["moves"], 50);
  Configuration c = configuration_from_json(game["initial"]);
  for (const Json& m : game["move_log"]) c = apply_move(c, move_from_json(m, c));
  EXPECT_EQ(c, current_of(game));

  // Onto a tile, and off the board.
  const Configuration cur = current_of(game);
  const Cell tile = [&] {
    for (int i = 0; i < cur.board().size(); ++i)
      if (cur.label_at_index(i) != 0) return cur.board().cell(i);
    return Cell{};
  }();
  const Cell other_tile = [&] {
    for (int i = cur.board().size() - 1; i >= 0; --i)
      if (cur.label_at_index(i) != 0) return cur.board().cell(i);
    return Cell{};
  }();
  EXPECT_EQ(s.post_move(id, {{"from", to_json(tile)}, {"to", to_json(other_tile)}}).status, 409);
  EXPECT_EQ(s.post_move(id, {{"from", Json::array({50, 50})}, {"to", to_json(tile)}}).status, 409);
  EXPECT_EQ(s.post_move(id, {{"from", "x"}}).status, 400);
  EXPECT_EQ(s.get_game(id).body["moves"], 50);
}

TEST(Service, SolvingMoveAndHints) {
  GameService s;
  const std::string id = create(s, game_request(triangle(3), 3, "solvable", 1, 3));
  const Json game = s.get_game(id).body;
  ASSERT_FALSE(game["solved"].get<bool>());
  const Response h = s.hint(id);
  ASSERT_EQ(h.status, 200);
  EXPECT_EQ(h.body["distance"], 1);
  const Response done = s.post_move(id, move_body(h.body["hint"]));
  EXPECT_EQ(done.body["solved"], true);
  EXPECT_EQ(s.hint(id).body["reason"], "solved");
}

TEST(Service, RandomScramblesOnSmallTriangle) {
  // T(3) with three holes has one configuration per hole placement in each
  // component, so a random relabelling around the target's holes is either
  // the target itself or out of reach.
  GameService s;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Json g = s.create_game(game_request(triangle(3), 3, "random", 0, seed)).body;
    if (g["solved"].get<bool>()) continue;
    EXPECT_EQ(s.hint(g["id"]).body["reason"], "unsolvable");
    EXPECT_EQ(s.solvability(g["id"]).body["decision"], "unsolvable");
  }
}

TEST(Service, HintsReduceTrueDistance) {
  GameService s;
  const Configuration target = canonical_start(Board::flower(2), 3);
  const auto truth = oracle::bfs(target).dist;
  auto distance = [&](const Configuration& c) { return truth.at(c.encoding()); };
  int sessions = 0;
  for (std::uint64_t seed = 1; sessions < 3 && seed < 200; ++seed) {
    const Json g = s.create_game(game_request(flower(2), 3, "random", 0, seed)).body;
    const std::string id = g["id"];
    if (g["solved"].get<bool>()) continue;
    if (!truth.count(current_of(g).encoding())) {
      EXPECT_EQ(s.hint(id).body["reason"], "unsolvable");
      continue;
    }
    ++sessions;
    for (int step = 0; step < 100; ++step) {
      const Json cur = s.get_game(id).body;
      if (cur["solved"].get<bool>()) break;
      const int before = distance(current_of(cur));
      const Json h = s.hint(id).body;
      ASSERT_EQ(h["distance"], before);
      const Json after = s.post_move(id, move_body(h["hint"])).body;
      ASSERT_EQ(distance(current_of(after)), before - 1);
    }
    EXPECT_EQ(s.get_game(id).body["solved"], true);
  }
  EXPECT_EQ(sessions, 3);
}

TEST(Service, HintUnsolvableAndBudget) {
  GameService s;
  const std::string bad = create(s, game_request(triangle(3), 2, "unsolvable", 10, 5));
  EXPECT_EQ(s.hint(bad).body["reason"], "unsolvable");

  ServiceOptions tight;
  tight.hint_budget = 10;
  GameService small(tight);
  const std::string id = create(small, game_request(triangle(4), 3, "random", 0, 5));
  const Response r = small.hint(id);
  EXPECT_EQ(r.status, 503);
  EXPECT_TRUE(r.body["hint"].is_null());
  EXPECT_EQ(r.body["reason"], "budget");
}

TEST(Service, Analysis) {
  GameService s;
  auto q = [&](std::map<std::string, std::string> query) { return s.analysis(query); };
  const Response f = q({{"shape", "flower"}, {"m", "2"}, {"holes", "3"}});
  ASSERT_EQ(f.status, 200);
  EXPECT_EQ(f.body["components"], 6);
  EXPECT_EQ(f.body["component_size"], 132);
  const Response t = q({{"shape", "triangle"}, {"m", "3"}, {"holes", "2"}});
  EXPECT_EQ(t.body["components"], 24);
  EXPECT_EQ(t.body["component_size"], 9);
  const Response p = q({{"shape", "parallelogram"}, {"m1", "2"}, {"m2", "4"}, {"holes", "2"}});
  EXPECT_EQ(p.body["components"], 720);
  const Response j = q({{"board", R"({"family":"triangle","m":3})"}, {"holes", "2"}});
  EXPECT_EQ(j.body["components"], 24);

  EXPECT_EQ(q({{"shape", "blob"}, {"m", "2"}, {"holes", "2"}}).status, 400);
  EXPECT_EQ(q({{"shape", "flower"}, {"m", "x"}, {"holes", "2"}}).status, 400);
  EXPECT_EQ(q({{"shape", "flower"}, {"m", "2"}}).status, 400);

  ServiceOptions tight;
  tight.budget = 100;
  GameService small(tight);
  EXPECT_EQ(small.analysis({{"shape", "triangle"}, {"m", "4"}, {"holes", "3"}}).status, 503);
}

TEST(Service, SnapshotsRestoreSessions) {
  const fs::path dir = fs::temp_directory_path() / ("hexslide_snap_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  ServiceOptions opts;
  opts.snapshot_dir = dir.string();
  std::string id;
  Json before;
  {
    GameService s(opts);
    id = create(s, game_request(flower(2), 3, "solvable", 30, 4));
    for (int i = 0; i < 5; ++i) {
      const Json g = s.get_game(id).body;
      s.post_move(id, move_body(g["legal_moves"][0]));
    }
    before = s.get_game(id).body;
  }
  GameService restored(opts);
  EXPECT_EQ(restored.load_snapshots(), 1u);
  EXPECT_EQ(restored.get_game(id).body, before);
  fs::remove_all(dir);
}

TEST(Service, ConcurrentMovesAreSerialised) {
  GameService s;
  const std::string id = create(s, game_request(flower(3), 3, "solvable", 10, 8));
  std::vector<std::thread> workers;
  std::atomic<int> accepted{0};
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&, t] {
      std::mt19937_64 rng(t);
      for (int i = 0; i < 50; ++i) {
        const Json g = s.get_game(id).body;
        const Json& moves = g["legal_moves"];
        // Stale reads are expected; the service must reject or apply
        // each move atomically.
        const Response r = s.post_move(id, move_body(moves[rng() % moves.size()]));
        if (r.status == 200) ++accepted;
        s.solvability(id);
      }
    });
  }
  for (auto& w : workers) w.join();
  const Json game = s.get_game(id).body;
  EXPECT_EQ(game["moves"], accepted.load());
  Configuration c = configuration_from_json(game["initial"]);
  for (const Json& m : game["move_log"]) c = apply_move(c, move_from_json(m, c));
  EXPECT_EQ(c, current_of(game));
}

TEST(Service, OverHttp) {
  GameService service;
  HttpServer server(service);
  const int port = server.bind_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread loop([&] { server.listen_after_bind(); });

  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->get_header_value("Access-Control-Allow-Origin"), "*");

  const auto created = client.Post("/games", game_request(triangle(3), 3, "solvable", 5, 1).dump(),
                                   "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 201);
  const Json game = Json::parse(created->body);
  const std::string id = game["id"];

  const auto moved = client.Post("/games/" + id + "/moves", move_body(game["legal_moves"][0]).dump(),
                                 "application/json");
  ASSERT_TRUE(moved);
  EXPECT_EQ(moved->status, 200);
  const auto illegal = client.Post("/games/" + id + "/moves",
                                   R"({"from":[0,0],"to":[0,0]})", "application/json");
  EXPECT_EQ(illegal->status, 409);
  EXPECT_EQ(client.Get("/games/" + id + "/solvability")->status, 200);
  EXPECT_EQ(client.Get("/games/" + id + "/hint")->status, 200);
  EXPECT_EQ(client.Get("/games/unknown")->status, 404);
  const auto analysis = client.Get("/analysis?shape=triangle&m=3&holes=2");
  EXPECT_EQ(Json::parse(analysis->body)["components"], 24);
  const auto preflight = client.Options("/games");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);

  server.stop();
  loop.join();
}
