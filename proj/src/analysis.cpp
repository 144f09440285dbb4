#include "hexslide/analysis.hpp"

#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "hexslide/error.hpp"
#include "hexslide/holes.hpp"

namespace hexslide {

AnalysisReport analyze(const Board& board, int h, const SearchOptions& options) {
  AnalysisReport r{board, h};
  const FormulaCount formula = component_count_formula(board, h);
  r.start = canonical_start(board, h);
  try {
    const ComponentSummary s = enumerate_component(*r.start, options);
    r.component_size = s.size;
    r.home_count = s.home_count;
    r.gods_bounds = GodsNumberBounds{s.depth, 2 * s.depth};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded || !formula.count) throw;
    r.budget_exceeded = true;
  }
  if (formula.count) {
    r.components = *formula.count;
    r.provenance = "formula";
    r.basis = formula.basis;
  } else {
    r.components = count_components(board, h, options);
    r.provenance = "bfs";
  }
  return r;
}

Json to_json(const AnalysisReport& r) {
  Json j{{"board", to_json(r.board)},
         {"name", r.board.name()},
         {"h", r.h},
         {"components", to_json(r.components)},
         {"provenance", r.provenance}};
  if (!r.basis.empty()) j["basis"] = r.basis;
  j["component_size"] = r.component_size ? Json(*r.component_size) : Json(nullptr);
  j["home_count"] = r.home_count ? Json(*r.home_count) : Json(nullptr);
  if (r.gods_bounds) {
    j["depth"] = r.gods_bounds->lower;
    j["gods_bounds"] = {{"lower", r.gods_bounds->lower}, {"upper", r.gods_bounds->upper}};
  } else {
    j["depth"] = nullptr;
    j["gods_bounds"] = nullptr;
  }
  if (r.start) j["start"] = to_json(*r.start);
  if (r.budget_exceeded) j["budget_exceeded"] = true;
  return j;
}

std::string csv_header() { return "board,h,components,component_size,depth_lower,depth_upper"; }

std::string to_csv_row(const AnalysisReport& r) {
  auto opt = [](const auto& v) { return v ? fmt::format("{}", *v) : std::string{}; };
  return fmt::format("{},{},{},{},{},{}", r.board.name(), r.h, r.components.str(),
                     opt(r.component_size),
                     r.gods_bounds ? std::to_string(r.gods_bounds->lower) : "",
                     r.gods_bounds ? std::to_string(r.gods_bounds->upper) : "");
}

std::string to_text(const AnalysisReport& r) {
  std::string out = fmt::format("board        {} ({} cells), {} holes\n", r.board.name(),
                                r.board.size(), r.h);
  out += fmt::format("components   {} ({}{})\n", r.components.str(), r.provenance,
                     r.basis.empty() ? "" : ": " + r.basis);
  if (r.component_size) out += fmt::format("component    {} configurations\n", *r.component_size);
  if (r.gods_bounds)
    out += fmt::format("depth        {} from the start; God's number in [{}, {}]\n",
                       r.gods_bounds->lower, r.gods_bounds->lower, r.gods_bounds->upper);
  if (r.budget_exceeded) out += "search       budget exceeded; component size unknown\n";
  return out;
}

namespace {

struct ComponentRow {
  Board board;
  int h;
  std::uint64_t components;
  std::uint64_t size;
  bool slow;
};

struct DepthRow {
  Board board;
  int h;
  int depth;
  bool strict;  // exact match required
  bool slow;
  std::string note;
};

VerifyRow check_components(const ComponentRow& row, const SearchOptions& options) {
  VerifyRow out{"components", fmt::format("{} h={}", row.board.name(), row.h)};
  const ComponentCensus census = component_census(row.board, row.h, options);
  std::set<std::uint64_t> sizes;
  for (const auto& c : census.classes) sizes.insert(c.component_size);
  out.passed = census.components == row.components && sizes.size() == 1 &&
               *sizes.begin() == row.size;
  out.detail = fmt::format("components {} (expected {}), size {} (expected {})",
                           census.components.str(), row.components, fmt::join(sizes, "/"),
                           row.size);
  return out;
}

VerifyRow check_depth(const DepthRow& row, const SearchOptions& options) {
  VerifyRow out{"depth", fmt::format("{} h={}", row.board.name(), row.h)};
  std::set<int> seen;
  std::optional<EccentricityProfile::Entry> match;
  for (const auto& cls : hole_classes(row.board, row.h, options.budget)) {
    const Configuration start = Configuration::with_holes(row.board, hole_cells(row.board, cls.front()));
    for (auto& e : eccentricity_profile(start, options, true).entries) {
      seen.insert(e.eccentricity);
      if (e.eccentricity == row.depth && !match) match = e;
    }
  }
  const Configuration canonical = canonical_start(row.board, row.h);
  if (match) {
    out.passed = true;
    std::vector<std::string> holes;
    for (Cell c : match->start.holes()) holes.push_back(fmt::format("({},{})", c.q, c.r));
    out.detail = fmt::format("d={} (expected {}), bounds [{}, {}], holes at {}; start depths {}",
                             row.depth, row.depth, row.depth, 2 * row.depth,
                             fmt::join(holes, " "),
                             fmt::join(seen, "/"));
  } else {
    const int d = enumerate_component(canonical, options).depth;
    out.passed = !row.strict && d <= 2 * row.depth;
    out.detail = fmt::format("no start reaches d={}; start depths {}; canonical start depth {}",
                             row.depth, fmt::join(seen, "/"), d);
  }
  if (!row.note.empty()) out.detail += "; " + row.note;
  return out;
}

}  // namespace

std::vector<VerifyRow> verify_paper_tables(const VerifyOptions& options,
                                           const std::function<void(const VerifyRow&)>& on_row) {
  const std::vector<ComponentRow> components = {
      {Board::flower(2), 2, 24, 60, false},     {Board::flower(2), 3, 6, 132, false},
      {Board::flower(2), 4, 1, 210, false},     {Board::triangle(2), 2, 1, 3, false},
      {Board::triangle(3), 2, 24, 9, false},    {Board::triangle(3), 3, 6, 19, false},
      {Board::triangle(3), 4, 1, 30, false},    {Board::triangle(4), 2, 8064, 90, false},
      {Board::triangle(4), 3, 1, 498960, true},
  };
  const std::string flower_note =
      "flower depths are listed for F(3) but match F(2), whose components have the listed sizes";
  const std::vector<DepthRow> depths = {
      {Board::triangle(3), 2, 3, true, false, ""},
      {Board::triangle(3), 3, 4, true, false, ""},
      {Board::triangle(3), 4, 6, true, false, ""},
      {Board::triangle(4), 2, 17, false, false, ""},
      {Board::triangle(4), 3, 56, false, true, ""},
      {Board::parallelogram(3, 3), 3, 51, true, false, ""},
      {Board::trimmed_parallelogram(3, 4), 2, 78, false, true, ""},
      {Board::flower(2), 2, 16, false, false, flower_note},
      {Board::flower(2), 3, 12, false, false, flower_note},
      {Board::flower(2), 4, 8, false, false, flower_note},
  };

  std::vector<VerifyRow> rows;
  auto emit = [&](VerifyRow row) {
    if (on_row) on_row(row);
    rows.push_back(std::move(row));
  };
  auto skipped = [](std::string table, std::string label) {
    return VerifyRow{std::move(table), std::move(label), true, "needs --include-slow", true};
  };

  for (const auto& row : components) {
    if (row.slow && !options.include_slow)
      emit(skipped("components", fmt::format("{} h={}", row.board.name(), row.h)));
    else
      emit(check_components(row, options.search));
  }

  {
    const Board p34 = Board::parallelogram(3, 4);
    if (!options.include_slow) {
      emit(skipped("formula", "P(3,4) h=2"));
    } else {
      const BigInt bfs = count_components(p34, 2, options.search);
      const auto formula = component_count_formula(p34, 2);
      VerifyRow row{"formula", "P(3,4) h=2"};
      row.passed = formula.count && *formula.count == bfs && bfs == 180;
      row.detail = fmt::format("closed form {}, search {}",
                               formula.count ? formula.count->str() : "n/a", bfs.str());
      emit(std::move(row));
    }
  }

  for (const auto& row : depths) {
    if (row.slow && !options.include_slow)
      emit(skipped("depth", fmt::format("{} h={}", row.board.name(), row.h)));
    else
      emit(check_depth(row, options.search));
  }
  return rows;
}

}  // namespace hexslide
