#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hexslide/json_io.hpp"

namespace hexslide {

struct AnalysisReport {
  Board board;
  int h = 0;
  BigInt components;
  std::string provenance;  // "formula" or "bfs"
  std::string basis;       // which closed form, when provenance is "formula"
  std::optional<Configuration> start;
  std::optional<std::uint64_t> component_size;
  std::optional<std::uint64_t> home_count;
  std::optional<GodsNumberBounds> gods_bounds;
  bool budget_exceeded = false;
};

// Component count from a closed form when one covers (board, h), otherwise
// from BFS; component size and depth from a BFS of canonical_start. When
// the BFS blows the budget the report keeps whatever the formula gave and
// sets budget_exceeded; without a formula it throws budget_exceeded.
AnalysisReport analyze(const Board& board, int h, const SearchOptions& options = {});

Json to_json(const AnalysisReport& r);
std::string csv_header();
std::string to_csv_row(const AnalysisReport& r);
std::string to_text(const AnalysisReport& r);

struct VerifyRow {
  std::string table;
  std::string label;
  bool passed = false;
  std::string detail;
  bool skipped = false;
};

struct VerifyOptions {
  bool include_slow = false;
  SearchOptions search;
};

// Recomputes the reference component tables and depth lower bounds.
// `on_row` sees each row as soon as it finishes.
std::vector<VerifyRow> verify_paper_tables(const VerifyOptions& options,
                                           const std::function<void(const VerifyRow&)>& on_row = {});

}  // namespace hexslide
