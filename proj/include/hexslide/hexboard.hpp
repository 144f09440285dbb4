#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hexslide {

// Axial hex coordinate. Cells are ordered lexicographically by (q, r); that
// order is the canonical cell order used by every encoding.
struct Cell {
  int q = 0;
  int r = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
  friend Cell operator+(Cell a, Cell b) { return {a.q + b.q, a.r + b.r}; }
  friend Cell operator-(Cell a, Cell b) { return {a.q - b.q, a.r - b.r}; }
};

inline constexpr std::array<Cell, 6> kHexOffsets = {
    Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}, Cell{1, -1}, Cell{-1, 1}};

bool adjacent(Cell a, Cell b);

enum class ShapeFamily {
  parallelogram,
  triangle,
  flower,
  trimmed_parallelogram,
  trimmed_triangle,
  explicit_cells,
};

std::string_view to_string(ShapeFamily family);
std::optional<ShapeFamily> parse_shape_family(std::string_view name);

// Family plus size parameters. Triangles and flowers use only m1.
struct ShapeId {
  ShapeFamily family = ShapeFamily::explicit_cells;
  int m1 = 0;
  int m2 = 0;

  friend bool operator==(const ShapeId&, const ShapeId&) = default;
};

std::string shape_name(const ShapeId& id);

// Immutable set of hex cells with precomputed adjacency. Copies share the
// underlying data, so passing boards by value is cheap.
class Board {
 public:
  static Board build(ShapeFamily family, int m1, int m2 = 0);
  static Board parallelogram(int m1, int m2);
  static Board triangle(int m);
  static Board flower(int m);
  static Board trimmed_parallelogram(int m1, int m2);
  static Board trimmed_triangle(int m);
  // Explicit cell list; duplicates are rejected and the set must be
  // non-empty and connected.
  static Board from_cells(std::vector<Cell> cells, std::string name = {});

  const ShapeId& shape() const { return impl_->shape; }
  ShapeFamily family() const { return impl_->shape.family; }
  const std::string& name() const { return impl_->name; }

  std::span<const Cell> cells() const { return impl_->cells; }
  int size() const { return static_cast<int>(impl_->cells.size()); }
  Cell cell(int index) const { return impl_->cells[index]; }

  std::optional<int> index_of(Cell c) const;
  bool contains(Cell c) const { return index_of(c).has_value(); }
  // Throws cell_not_on_board.
  int require_index(Cell c) const;

  std::span<const int> neighbor_indices(int index) const {
    return impl_->neighbors[index];
  }
  bool adjacent_indices(int a, int b) const {
    return impl_->adjacency[static_cast<std::size_t>(a) * impl_->cells.size() + b];
  }

  // Board cells adjacent to c, in canonical order. Throws cell_not_on_board.
  std::vector<Cell> neighbors(Cell c) const;

  // Boards compare equal when they have the same cell set.
  friend bool operator==(const Board& a, const Board& b) {
    return a.impl_ == b.impl_ || a.impl_->cells == b.impl_->cells;
  }

 private:
  struct Impl {
    ShapeId shape;
    std::string name;
    std::vector<Cell> cells;
    Cell origin;  // min corner of the bounding box
    int width = 0;
    int height = 0;
    std::vector<int> grid;  // bounding box -> cell index or -1
    std::vector<std::vector<int>> neighbors;
    std::vector<bool> adjacency;
  };

  Board(ShapeId shape, std::string name, std::vector<Cell> cells);

  std::shared_ptr<const Impl> impl_;
};

bool is_connected(std::span<const Cell> cells);

// Cells with exactly two neighbours that are themselves adjacent.
std::vector<Cell> tight_corners(const Board& board);

// Removes the board's tight corners in a single pass. Throws
// disconnected_after_trim when the remainder is empty or disconnected.
Board trim(const Board& board);

// One of the twelve symmetries of the hex lattice fixing the origin, as an
// integer matrix acting on axial coordinates.
struct HexTransform {
  int a = 1, b = 0, c = 0, d = 1;

  Cell apply(Cell x) const { return {a * x.q + b * x.r, c * x.q + d * x.r}; }
};

std::span<const HexTransform> hex_symmetries();

// Translation- and rotation/reflection-invariant normal form of a cell set.
std::vector<Cell> canonical_shape(std::span<const Cell> cells);
bool congruent(std::span<const Cell> a, std::span<const Cell> b);

// Symmetries mapping the board onto itself, each as a permutation of cell
// indices (perm[i] = image of cell i). Always contains the identity.
std::vector<std::vector<int>> board_automorphisms(const Board& board);

// Recognises a board (possibly explicit, translated or rotated) as a member
// of one of the named families.
std::optional<ShapeId> identify_shape(const Board& board);

// Smallest parallelogram P(w, h) containing a translate of the board.
ShapeId bounding_parallelogram(const Board& board);

}  // namespace hexslide
