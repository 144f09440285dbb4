#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hexslide/hexboard.hpp"

namespace hexslide {

// One tile slide. The tile at `from` moves into the hole at `to`; `witness`
// is a second hole adjacent to both, which the hex slide rule requires.
struct SlideMove {
  Cell from;
  Cell to;
  Cell witness;

  friend bool operator==(const SlideMove&, const SlideMove&) = default;

  SlideMove reversed() const { return {to, from, witness}; }
};

// Diagonal in the sheared-grid picture of a parallelogram board: the slide
// offset is +-(1,-1). The other four offsets are orthogonal.
bool is_diagonal_slide(const SlideMove& move);

// Labels of tiles on the board; 0 marks a hole. Stored per cell in canonical
// cell order, which is also the canonical encoding.
class Configuration {
 public:
  Configuration(Board board, std::vector<std::uint8_t> labels);

  // Tiles 1..t in canonical cell order, holes on the last `holes` cells.
  static Configuration ordered(Board board, int holes);
  // Tiles 1..t in canonical cell order around the given hole cells.
  static Configuration with_holes(Board board, std::span<const Cell> holes);

  const Board& board() const { return board_; }
  std::span<const std::uint8_t> labels() const { return labels_; }
  int label_at_index(int index) const { return labels_[index]; }
  int label_at(Cell c) const { return labels_[board_.require_index(c)]; }

  int hole_count() const { return hole_count_; }
  int tile_count() const { return static_cast<int>(labels_.size()) - hole_count_; }
  std::vector<int> hole_indices() const;
  std::vector<Cell> holes() const;
  // Sorted tile labels.
  std::vector<int> tile_labels() const;
  std::optional<int> index_of_label(int label) const;

  // Byte string, one byte per cell in canonical order.
  std::string encoding() const { return {labels_.begin(), labels_.end()}; }

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.labels_ == b.labels_ && a.board_ == b.board_;
  }

 private:
  Board board_;
  std::vector<std::uint8_t> labels_;
  int hole_count_ = 0;
};

// Calls fn(from, to, witness) with cell indices for every tile that can slide
// into a hole. A (from, to) pair can be reported once per valid witness.
template <class Fn>
void for_each_slide(const Board& board, std::span<const std::uint8_t> labels,
                    std::span<const int> holes, Fn&& fn) {
  for (std::size_t a = 0; a < holes.size(); ++a) {
    for (std::size_t b = a + 1; b < holes.size(); ++b) {
      const int i = holes[a], j = holes[b];
      if (!board.adjacent_indices(i, j)) continue;
      for (int x : board.neighbor_indices(i)) {
        if (labels[x] == 0 || !board.adjacent_indices(x, j)) continue;
        fn(x, i, j);
        fn(x, j, i);
      }
    }
  }
}

// All legal slides, one per (from, to) pair with the least witness, sorted
// by (from, to).
std::vector<SlideMove> legal_moves(const Configuration& c);

// The slide of the tile at `from` into `to`, if legal.
std::optional<SlideMove> find_slide(const Configuration& c, Cell from, Cell to);

bool is_legal(const Configuration& c, const SlideMove& move);

// Throws illegal_move when the move is not a legal slide of c.
Configuration apply_move(const Configuration& c, const SlideMove& move);

bool is_isolated(const Configuration& c);

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator^(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
std::string_view to_string(Parity p);

// Parity of a permutation of 0..n-1 given in one-line form.
Parity permutation_parity(std::span<const int> perm);

struct TilePermutation {
  // (label in c1, label in c2 at the same cell), sorted by the first label.
  std::vector<std::pair<int, int>> mapping;
  Parity parity = Parity::even;

  bool is_identity() const;
};

// The relabelling sigma with sigma . c1 = c2. Throws board_mismatch,
// hole_mismatch or label_mismatch.
TilePermutation permutation_between(const Configuration& c1, const Configuration& c2);

// Two-hole configuration on a parallelogram whose holes carry the labels -1
// and 0, so their individual positions can be tracked.
class AugmentedConfiguration {
 public:
  // `minus_one` names which of the two holes gets label -1. Throws
  // board_not_parallelogram, hole_count, or hole_mismatch.
  AugmentedConfiguration(Configuration base, Cell minus_one);

  const Configuration& base() const { return base_; }
  Cell minus_one_hole() const { return minus_one_; }
  Cell zero_hole() const { return zero_; }

  // Slides a tile; the hole label travels to the cell the tile vacated.
  AugmentedConfiguration apply(const SlideMove& move) const;

 private:
  Configuration base_;
  Cell minus_one_;
  Cell zero_;
};

// Parity of p1 + p2 + p3 for `cur` measured against `ref`: p1 and p2 are the
// taxicab distances of the two labelled holes from the board's minimum cell
// (diagonal edges ignored), p3 the parity of the permutation of all
// positions, tiles and labelled holes, taking ref to cur. Hole distances are
// taken relative to ref, so ref against itself is even.
Parity augmented_parity(const AugmentedConfiguration& ref, const AugmentedConfiguration& cur);

}  // namespace hexslide
