#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hexslide/bigint.hpp"
#include "hexslide/configuration.hpp"
#include "hexslide/holes.hpp"

namespace hexslide {

inline constexpr std::uint64_t kDefaultStateBudget = 50'000'000;

// kDefaultStateBudget unless HEXSLIDE_BUDGET holds a positive integer.
std::uint64_t default_state_budget();

struct SearchOptions {
  std::uint64_t budget = kDefaultStateBudget;  // max visited states
  int threads = 1;                             // BFS workers; <= 0 means all cores
};

struct ComponentSummary {
  Configuration start;
  std::uint64_t size = 0;
  int depth = 0;
  std::uint64_t home_count = 0;
  bool contains_isolated = false;
  std::vector<Cell> home_holes;
};

// Level-synchronous BFS over the component of `start`. home_count counts the
// configurations whose holes are exactly `home_holes`. Results do not depend
// on the number of workers. Throws budget_exceeded.
ComponentSummary enumerate_component(const Configuration& start, std::span<const Cell> home_holes,
                                     const SearchOptions& options = {});
ComponentSummary enumerate_component(const Configuration& start, const SearchOptions& options = {});

// Per hole-placement class: components whose configurations use that class
// of hole placements, counted as t! / home_count.
struct ComponentClass {
  HoleSet representative;
  std::uint64_t placements = 0;
  std::uint64_t component_size = 0;
  std::uint64_t home_count = 0;
  int depth = 0;
  BigInt components;
};

struct ComponentCensus {
  BigInt components;
  std::vector<ComponentClass> classes;
};

// Throws invalid_params when no non-isolated configuration exists,
// budget_exceeded, or division_not_exact.
ComponentCensus component_census(const Board& board, int h, const SearchOptions& options = {});
BigInt count_components(const Board& board, int h, const SearchOptions& options = {});

struct GodsNumberBounds {
  int lower = 0;
  int upper = 0;
};

// (d, 2d) with d the BFS depth from `start`.
GodsNumberBounds gods_number_bounds(const Configuration& start, const SearchOptions& options = {});
GodsNumberBounds gods_number_bounds(const Board& board, int h, const Configuration& start,
                                    const SearchOptions& options = {});

// Eccentricity of the configurations with each hole placement of start's
// class. Eccentricity only depends on the hole placement, so one BFS per
// placement (or per symmetry orbit of placements) covers the component.
struct EccentricityProfile {
  struct Entry {
    HoleSet holes;
    Configuration start;
    int eccentricity = 0;
  };
  std::vector<Entry> entries;
  std::uint64_t component_size = 0;
  int radius = 0;
  int diameter = 0;
};

EccentricityProfile eccentricity_profile(const Configuration& start,
                                         const SearchOptions& options = {},
                                         bool use_symmetry = false);

// Exact diameter over all components of non-isolated configurations.
int exact_gods_number(const Board& board, int h, const SearchOptions& options = {},
                      bool use_symmetry = false);

// Minimum slide sequence from c1 to c2 by bidirectional BFS; nullopt when
// c2 is not in c1's component. Throws budget_exceeded (both searches
// together) and board_mismatch / label_mismatch.
std::optional<std::vector<SlideMove>> shortest_path(const Configuration& c1,
                                                    const Configuration& c2,
                                                    std::uint64_t budget = kDefaultStateBudget);

// BFS distances from one configuration to every member of its component.
class DistanceTable {
 public:
  DistanceTable(const Configuration& origin, std::uint64_t budget = kDefaultStateBudget);
  ~DistanceTable();
  DistanceTable(DistanceTable&&) noexcept;
  DistanceTable& operator=(DistanceTable&&) noexcept;

  const Configuration& origin() const;
  std::uint64_t size() const;
  int depth() const;
  std::optional<int> distance(const Configuration& c) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// Tiles 1..t in canonical order with holes on the last h cells. If that
// placement is isolated, the holes move to the first non-isolated placement
// in reverse lexicographic order of hole-index tuples. Throws invalid_params
// when no non-isolated placement exists.
Configuration canonical_start(const Board& board, int h);

// Component of `start` as a DOT graph: one node per configuration labelled
// by its canonical sequence, one undirected edge per slide. Throws too_large
// above `max_states` and invalid_params for isolated starts.
struct DotGraph {
  std::string text;
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
};
DotGraph export_dot(const Configuration& start, std::uint64_t max_states = 10'000);

// Component structure from the hole-placement graph alone: the tile
// permutations realisable with the holes back on start's placement form a
// group (computed with Schreier-Sims from the cycles of the hole graph); its
// order is the home count of the component.
struct GroupSummary {
  BigInt home_count;
  std::uint64_t placements = 0;
  BigInt component_size;
  BigInt components;  // t! / home_count for this hole class
  bool full_symmetric = false;
  bool alternating = false;
};
GroupSummary group_component_summary(const Configuration& start,
                                     std::uint64_t budget = kDefaultStateBudget);

}  // namespace hexslide
