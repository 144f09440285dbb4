#include "hexslide/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hexslide/analysis.hpp"
#include "hexslide/error.hpp"
#include "hexslide/service.hpp"

namespace hexslide {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;
constexpr int kBudget = 3;

struct BoardFlags {
  std::string shape;
  int m = 0;
  int m1 = 0;
  int m2 = 0;
  std::string file;  // board JSON, required for --shape explicit
  int holes = -1;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--shape", shape,
                   "parallelogram, triangle, flower, trimmed-parallelogram, "
                   "trimmed-triangle or explicit");
    cmd.add_option("--m", m, "size of a triangle or flower");
    cmd.add_option("--m1", m1, "first side of a parallelogram");
    cmd.add_option("--m2", m2, "second side of a parallelogram");
    cmd.add_option("--board", file, "board JSON file");
    cmd.add_option("--holes", holes, "number of holes")->required();
  }
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::malformed_input, fmt::format("cannot read {}", path));
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::malformed_input, fmt::format("{} is not valid JSON", path));
  return j;
}

Board board_of(const BoardFlags& f) {
  if (f.shape.empty() || f.shape == "explicit") {
    if (f.file.empty()) throw Error(ErrorCode::malformed_input, "give --shape or --board");
    return board_from_json(read_json(f.file));
  }
  const auto family = parse_shape_family(f.shape);
  if (!family) throw Error(ErrorCode::malformed_input, fmt::format("unknown shape \"{}\"", f.shape));
  if (*family == ShapeFamily::parallelogram || *family == ShapeFamily::trimmed_parallelogram) {
    if (f.m1 <= 0 || f.m2 <= 0) throw Error(ErrorCode::malformed_input, "--m1 and --m2 are required");
    return Board::build(*family, f.m1, f.m2);
  }
  if (f.m <= 0) throw Error(ErrorCode::malformed_input, "--m is required");
  return Board::build(*family, f.m);
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::budget_exceeded:
    case ErrorCode::too_large: return kBudget;
    case ErrorCode::division_not_exact:
    case ErrorCode::hypotheses_violated: return kFailed;
    default: return kBadInput;
  }
}

Json moves_json(std::span<const SlideMove> moves) {
  Json out = Json::array();
  for (const auto& m : moves) out.push_back(to_json(m));
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hexagonal sliding puzzle engine"};
  app.require_subcommand(1);

  std::uint64_t budget = default_state_budget();
  int threads = 0;
  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--budget", budget, "maximum visited states");
    cmd->add_option("--threads", threads, "BFS workers (0: all cores)");
  };

  BoardFlags analyze_board;
  std::string format = "json";
  auto* analyze_cmd = app.add_subcommand("analyze", "component count, size and depth");
  analyze_board.add_to(*analyze_cmd);
  analyze_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "text"}));
  common(analyze_cmd);

  std::string suite = "paper-tables";
  bool include_slow = false;
  auto* verify_cmd = app.add_subcommand("verify", "recompute the reference tables");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember({"paper-tables"}));
  verify_cmd->add_flag("--include-slow", include_slow, "also run rows above a million states");
  common(verify_cmd);

  std::string board_file, start_file, target_file;
  bool emit_moves = false;
  auto* solve_cmd = app.add_subcommand("solve", "decide whether start reaches target");
  solve_cmd->add_option("--board", board_file, "board JSON file")->required();
  solve_cmd->add_option("--start", start_file, "start configuration JSON")->required();
  solve_cmd->add_option("--target", target_file, "target configuration JSON")->required();
  solve_cmd->add_flag("--emit-moves", emit_moves, "include a shortest slide sequence");
  common(solve_cmd);

  BoardFlags graph_board;
  std::string out_file;
  std::uint64_t max_states = 10'000;
  auto* graph_cmd = app.add_subcommand("export-graph", "write the start component as DOT");
  graph_board.add_to(*graph_cmd);
  graph_cmd->add_option("--out", out_file, "output file (stdout if omitted)");
  graph_cmd->add_option("--max-states", max_states);

  BoardFlags derive_board;
  std::string derive_out;
  auto* derive_cmd = app.add_subcommand("derive", "build a patching derivation");
  derive_board.add_to(*derive_cmd);
  derive_cmd->add_option("--out", derive_out, "output file (stdout if omitted)");
  common(derive_cmd);

  std::string derivation_file;
  auto* check_cmd = app.add_subcommand("check-derivation", "re-check a derivation file");
  check_cmd->add_option("--in", derivation_file, "derivation JSON")->required();

  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t hint_budget = 1'000'000;
  std::string snapshot_dir;
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP API");
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--hint-budget", hint_budget);
  serve_cmd->add_option("--snapshot-dir", snapshot_dir, "persist sessions here");
  common(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  const SearchOptions search{budget, threads};
  auto emit = [&](const std::string& text, const std::string& path) {
    if (path.empty()) {
      out << text;
      return true;
    }
    std::ofstream f(path);
    f << text;
    if (!f) err << "cannot write " << path << "\n";
    return static_cast<bool>(f);
  };

  try {
    if (*analyze_cmd) {
      const AnalysisReport r = analyze(board_of(analyze_board), analyze_board.holes, search);
      if (format == "json")
        out << to_json(r).dump(2) << "\n";
      else if (format == "csv")
        out << csv_header() << "\n" << to_csv_row(r) << "\n";
      else
        out << to_text(r);
      return r.budget_exceeded ? kBudget : kOk;
    }

    if (*verify_cmd) {
      int passed = 0, failed = 0, skipped = 0;
      verify_paper_tables({include_slow, search}, [&](const VerifyRow& row) {
        const char* tag = row.skipped ? "SKIP" : row.passed ? "PASS" : "FAIL";
        (row.skipped ? skipped : row.passed ? passed : failed)++;
        out << fmt::format("{} {:<10} {:<14} {}\n", tag, row.table, row.label, row.detail);
        out.flush();
      });
      out << fmt::format("{} passed, {} failed, {} skipped\n", passed, failed, skipped);
      return failed ? kFailed : kOk;
    }

    if (*solve_cmd) {
      const Board board = board_from_json(read_json(board_file));
      const Configuration start = configuration_from_json(read_json(start_file), board);
      const Configuration target = configuration_from_json(read_json(target_file), board);
      DecideOptions opts;
      opts.budget = budget;
      const SolvabilityVerdict v = decide_solvable(start, target, opts);
      Json j = to_json(v);
      int code = kOk;
      if (v.decision == Decision::unknown && v.rule == "bfs-fallback") code = kBudget;
      if (emit_moves && v.decision == Decision::solvable) {
        if (!v.certificate.path.empty() || start == target) {
          j["moves"] = moves_json(v.certificate.path);
        } else {
          try {
            auto path = shortest_path(start, target, budget);
            j["moves"] = path ? moves_json(*path) : Json(nullptr);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::budget_exceeded) throw;
            j["moves"] = nullptr;
            j["moves_unavailable"] = "budget";
          }
        }
      }
      out << j.dump(2) << "\n";
      return code;
    }

    if (*graph_cmd) {
      const Board board = board_of(graph_board);
      const DotGraph g = export_dot(canonical_start(board, graph_board.holes), max_states);
      if (!emit(g.text, out_file)) return kFailed;
      if (!out_file.empty())
        out << fmt::format("{} nodes, {} edges written to {}\n", g.nodes, g.edges, out_file);
      return kOk;
    }

    if (*derive_cmd) {
      const Board board = board_of(derive_board);
      const auto d = derive_connectivity(board, derive_board.holes, search);
      if (!d) {
        err << fmt::format("no patching construction for {} with {} holes\n", board.name(),
                           derive_board.holes);
        return kFailed;
      }
      return emit(to_json(*d).dump(2) + "\n", derive_out) ? kOk : kFailed;
    }

    if (*check_cmd) {
      const PatchDerivation d = derivation_from_json(read_json(derivation_file));
      const DerivationCheck c = check_derivation_detailed(d);
      out << Json{{"ok", c.ok}, {"problems", c.problems}}.dump(2) << "\n";
      return c.ok ? kOk : kFailed;
    }

    if (*serve_cmd) {
      ServiceOptions opts;
      opts.budget = budget;
      opts.hint_budget = hint_budget;
      opts.threads = threads;
      opts.snapshot_dir = snapshot_dir;
      GameService service(opts);
      if (const auto n = service.load_snapshots()) err << "restored " << n << " sessions\n";
      HttpServer server(service);
      err << fmt::format("listening on http://{}:{}\n", host, port);
      return server.listen(host, port) ? kOk : kFailed;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kBadInput;
}

}  // namespace hexslide
