#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hexslide/bigint.hpp"
#include "hexslide/configuration.hpp"
#include "hexslide/puzzlegraph.hpp"

namespace hexslide {

// Shape of a board, recognising explicit cell lists that happen to be one of
// the named families.
std::optional<ShapeId> effective_shape(const Board& board);

// h >= 3 boards whose non-isolated configurations form one component.
bool maximal_family(const Board& board, int h);
// h = 2 boards with exactly two components of non-isolated configurations.
bool strong_parity_family(const Board& board);
// 2 x m parallelograms (either orientation).
bool skinny_board(const Board& board);

struct FormulaCount {
  std::optional<BigInt> count;  // nullopt: not covered
  std::string basis;            // which closed form produced the count
};

// Closed-form number of components containing non-isolated configurations.
FormulaCount component_count_formula(const Board& board, int h);

// Count for a board with tight corners and two holes, given the count c for
// its trimmed board: c * k! * C(t, k) with k corners and t tiles.
BigInt corner_component_count(const Board& board, const BigInt& trimmed_count);

// Moves c's holes onto target_holes by BFS over hole placements only.
// Throws holes_unreachable.
std::pair<Configuration, std::vector<SlideMove>> normalize_holes(
    const Configuration& c, std::span<const Cell> target_holes,
    std::uint64_t budget = kDefaultStateBudget);

// Tile labels on a 2 x m board read along the strip (row by row across the
// short side). Slides never change this sequence.
std::vector<int> weakly_above_sequence(const Configuration& c);

// The tile that owns a tight corner with two holes: the tile in the corner,
// or with a hole in the corner the tile on its other neighbour. nullopt if
// the corner and both its neighbours are holes.
std::optional<int> corner_owner(const Configuration& c, Cell corner);

enum class Decision { solvable, unsolvable, unknown };
std::string_view to_string(Decision d);

struct Certificate {
  std::vector<SlideMove> normalizing_moves;
  std::optional<Parity> parity;
  std::optional<Cell> corner;
  std::optional<std::size_t> path_length;
  std::vector<SlideMove> path;  // filled by the search fallback
};

struct SolvabilityVerdict {
  Decision decision = Decision::unknown;
  std::string rule;
  Certificate certificate;
  std::string explanation;
};

struct DecideOptions {
  bool allow_bfs_fallback = true;
  bool force_bfs = false;  // skip the closed-form rules
  std::uint64_t budget = kDefaultStateBudget;
};

// First applicable rule wins: identical, isolated, skinny, maximal, corner,
// strong-parity, parity-weak, then bidirectional search within budget.
// Throws board_mismatch and label_mismatch.
SolvabilityVerdict decide_solvable(const Configuration& start, const Configuration& target,
                                   const DecideOptions& options = {});

}  // namespace hexslide
