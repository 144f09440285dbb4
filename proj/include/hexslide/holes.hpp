#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hexslide/configuration.hpp"
#include "hexslide/hexboard.hpp"

namespace hexslide {

// Sorted cell indices of the holes. Which slides are legal depends only on
// the hole placement, so the puzzle graph projects onto a graph of hole
// placements with C(|cells|, h) vertices.
using HoleSet = std::vector<int>;

HoleSet hole_set_of(const Board& board, std::span<const Cell> holes);
std::vector<Cell> hole_cells(const Board& board, const HoleSet& holes);

// True when some tile can slide with holes at `holes`.
bool hole_set_non_isolated(const Board& board, const HoleSet& holes);

// Every non-isolated placement of h holes, in lexicographic order.
std::vector<HoleSet> non_isolated_hole_sets(const Board& board, int h);

// Slides (with canonical witnesses) available from a hole placement, as
// index triples (from, to, witness); one entry per (from, to).
struct IndexSlide {
  int from;
  int to;
  int witness;
};
std::vector<IndexSlide> hole_slides(const Board& board, const HoleSet& holes);
HoleSet slide_holes(const HoleSet& holes, const IndexSlide& slide);

// Placements reachable from `start`, in BFS order (start first). Throws
// budget_exceeded when more than `budget` placements are reached.
std::vector<HoleSet> hole_class(const Board& board, const HoleSet& start,
                                std::uint64_t budget = UINT64_MAX);

// Shortest slide sequence moving the holes from `from` to `to`, ignoring
// tile labels; nullopt when unreachable.
std::optional<std::vector<SlideMove>> hole_path(const Board& board, const HoleSet& from,
                                                const HoleSet& to,
                                                std::uint64_t budget = UINT64_MAX);

// Partition of the non-isolated placements into classes of the hole graph;
// each class is sorted and the classes are ordered by their first member.
std::vector<std::vector<HoleSet>> hole_classes(const Board& board, int h,
                                               std::uint64_t budget = UINT64_MAX);

}  // namespace hexslide
