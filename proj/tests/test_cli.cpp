#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hexslide/cli.hpp"
#include "hexslide/json_io.hpp"
#include "oracles.hpp"

using namespace hexslide;
namespace fs = std::filesystem;

namespace {

const fs::path kData = HEXSLIDE_TEST_DATA;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "hexslide");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string data(const std::string& name) { return (kData / "data" / name).string(); }

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("hexslide_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, AnalyzeGoldenFiles) {
  EXPECT_EQ(run({"analyze", "--shape", "flower", "--m", "2", "--holes", "3", "--format", "csv"}).out,
            slurp(kData / "golden/analyze_flower2_h3.csv"));
  EXPECT_EQ(run({"analyze", "--shape", "triangle", "--m", "3", "--holes", "2"}).out,
            slurp(kData / "golden/analyze_triangle3_h2.json"));
  EXPECT_EQ(run({"analyze", "--shape", "parallelogram", "--m1", "2", "--m2", "4", "--holes", "2",
                 "--format", "text"})
                .out,
            slurp(kData / "golden/analyze_p24_h2.txt"));
}

TEST(Cli, AnalyzeJsonIsParseable) {
  const CliResult r = run({"analyze", "--shape", "parallelogram", "--m1", "3", "--m2", "3",
                           "--holes", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["provenance"], "formula");
  EXPECT_EQ(j["components"], 1);
  // Every non-isolated placement of the holes times every labelling.
  const Board b = Board::parallelogram(3, 3);
  long placements = 0;
  std::string mask(9, 1);
  std::fill(mask.begin(), mask.begin() + 3, 0);
  do {
    placements += oracle::non_isolated(b, mask);
  } while (std::next_permutation(mask.begin(), mask.end()));
  EXPECT_EQ(j["component_size"], placements * oracle::factorial(6));
}

TEST(Cli, FormulaSurvivesBudget) {
  // The closed form still answers when the component is too big to walk.
  const CliResult r = run({"analyze", "--shape", "trimmed-triangle", "--m", "5", "--holes", "2",
                           "--budget", "1000"});
  EXPECT_EQ(r.code, 3);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["components"], 2);
  EXPECT_EQ(j["budget_exceeded"], true);
  EXPECT_TRUE(j["component_size"].is_null());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"analyze", "--shape", "hexagon", "--m", "2", "--holes", "2"}).code, 2);
  EXPECT_EQ(run({"analyze", "--shape", "flower", "--holes", "2"}).code, 2);
  EXPECT_EQ(run({"analyze", "--shape", "flower", "--m", "2"}).code, 2);
  EXPECT_EQ(run({"analyze", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  // No formula covers T(4) with three holes, so a tiny budget is fatal.
  EXPECT_EQ(run({"analyze", "--shape", "triangle", "--m", "4", "--holes", "3", "--budget", "100"})
                .code,
            3);
}

TEST(Cli, BudgetFromEnvironment) {
  ::setenv("HEXSLIDE_BUDGET", "100", 1);
  const CliResult r = run({"analyze", "--shape", "triangle", "--m", "4", "--holes", "3"});
  ::unsetenv("HEXSLIDE_BUDGET");
  EXPECT_EQ(r.code, 3);
}

TEST(Cli, VerifyFastSuite) {
  const CliResult r = run({"verify", "--suite", "paper-tables"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS components T(4) h=2"), std::string::npos);
  EXPECT_NE(r.out.find("SKIP"), std::string::npos);
  EXPECT_NE(r.out.find("flower depths are listed for F(3)"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, SolveTangledPair) {
  const CliResult r = run({"solve", "--board", data("tangled_board.json"), "--start",
                     data("tangled_right.json"), "--target", data("tangled_left.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(kData / "golden/solve_tangled.json"));
}

TEST(Cli, SolveIdentityAndSwap) {
  const CliResult same = run({"solve", "--board", data("tangled_board.json"), "--start",
                        data("tangled_left.json"), "--target", data("tangled_left.json"),
                        "--emit-moves"});
  const Json j = Json::parse(same.out);
  EXPECT_EQ(j["decision"], "solvable");
  EXPECT_EQ(j["moves"], Json::array());

  // Adjacent tiles swapped on P(3,3) with three holes.
  const fs::path dir = scratch_dir();
  const Board b = Board::parallelogram(3, 3);
  const Configuration start = canonical_start(b, 3);
  std::vector<std::uint8_t> labels(start.labels().begin(), start.labels().end());
  std::swap(labels[0], labels[1]);
  const Configuration target(b, labels);
  std::ofstream(dir / "b.json") << to_json(b).dump();
  std::ofstream(dir / "s.json") << to_json(start).dump();
  std::ofstream(dir / "t.json") << to_json(target).dump();
  const CliResult r = run({"solve", "--board", (dir / "b.json").string(), "--start",
                     (dir / "s.json").string(), "--target", (dir / "t.json").string(),
                     "--emit-moves"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json v = Json::parse(r.out);
  EXPECT_EQ(v["decision"], "solvable");
  ASSERT_TRUE(v["moves"].is_array());
  Configuration c = start;
  for (const Json& m : v["moves"]) c = apply_move(c, move_from_json(m, c));
  EXPECT_EQ(c, target);
  fs::remove_all(dir);
}

TEST(Cli, SolveMalformedInput) {
  const fs::path dir = scratch_dir();
  std::ofstream(dir / "bad.json") << "{not json";
  const CliResult r = run({"solve", "--board", (dir / "bad.json").string(), "--start",
                     data("tangled_left.json"), "--target", data("tangled_left.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"solve", "--board", data("tangled_board.json"), "--start",
                 (dir / "missing.json").string(), "--target", data("tangled_left.json")})
                .code,
            2);
  fs::remove_all(dir);
}

TEST(Cli, ExportGraph) {
  EXPECT_EQ(run({"export-graph", "--shape", "triangle", "--m", "2", "--holes", "2"}).out,
            slurp(kData / "golden/graph_t2_h2.dot"));
  const fs::path dir = scratch_dir();
  const CliResult r = run({"export-graph", "--shape", "triangle", "--m", "3", "--holes", "2", "--out",
                     (dir / "g.dot").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("9 nodes"), std::string::npos);
  // A full board has no moves at all.
  EXPECT_EQ(run({"export-graph", "--shape", "triangle", "--m", "3", "--holes", "0"}).code, 2);
  EXPECT_EQ(run({"export-graph", "--shape", "triangle", "--m", "4", "--holes", "3"}).code, 3);
  EXPECT_EQ(run({"export-graph", "--shape", "triangle", "--m", "2", "--holes", "2", "--out",
                 (dir / "no/such/dir/g.dot").string()})
                .code,
            1);
  fs::remove_all(dir);
}

TEST(Cli, DeriveAndCheck) {
  const fs::path dir = scratch_dir();
  const std::string file = (dir / "d.json").string();
  EXPECT_EQ(run({"derive", "--shape", "triangle", "--m", "5", "--holes", "3", "--out", file}).code,
            0);
  const CliResult ok = run({"check-derivation", "--in", file});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(Json::parse(ok.out)["ok"], true);

  Json d = Json::parse(slurp(file));
  d["base_cases"][0]["verified"] = false;
  std::ofstream(dir / "bad.json") << d.dump();
  const CliResult bad = run({"check-derivation", "--in", (dir / "bad.json").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(Json::parse(bad.out)["ok"], false);

  EXPECT_EQ(run({"derive", "--shape", "triangle", "--m", "4", "--holes", "3"}).code, 1);
  fs::remove_all(dir);
}
