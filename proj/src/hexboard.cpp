#include "hexslide/hexboard.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "hexslide/error.hpp"

namespace hexslide {

bool adjacent(Cell a, Cell b) {
  const Cell d = a - b;
  return std::find(kHexOffsets.begin(), kHexOffsets.end(), d) != kHexOffsets.end();
}

namespace {

constexpr std::array<std::pair<ShapeFamily, std::string_view>, 6> kFamilyNames = {{
    {ShapeFamily::parallelogram, "parallelogram"},
    {ShapeFamily::triangle, "triangle"},
    {ShapeFamily::flower, "flower"},
    {ShapeFamily::trimmed_parallelogram, "trimmed-parallelogram"},
    {ShapeFamily::trimmed_triangle, "trimmed-triangle"},
    {ShapeFamily::explicit_cells, "explicit"},
}};

std::vector<Cell> parallelogram_cells(int m1, int m2) {
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(m1) * m2);
  for (int q = 0; q < m1; ++q)
    for (int r = 0; r < m2; ++r) cells.push_back({q, r});
  return cells;
}

std::vector<Cell> triangle_cells(int m) {
  std::vector<Cell> cells;
  for (int q = 0; q < m; ++q)
    for (int r = 0; q + r <= m - 1; ++r) cells.push_back({q, r});
  return cells;
}

std::vector<Cell> flower_cells(int m) {
  const int radius = m - 1;
  std::vector<Cell> cells;
  for (int q = -radius; q <= radius; ++q)
    for (int r = -radius; r <= radius; ++r)
      if (std::abs(q + r) <= radius) cells.push_back({q, r});
  return cells;
}

std::vector<Cell> remove_tight_corners(const Board& board) {
  const auto corners = tight_corners(board);
  std::vector<Cell> kept;
  for (Cell c : board.cells())
    if (!std::binary_search(corners.begin(), corners.end(), c)) kept.push_back(c);
  return kept;
}

Cell translate_to_origin_min(std::vector<Cell>& cells) {
  const Cell lo = *std::min_element(cells.begin(), cells.end());
  for (Cell& c : cells) c = c - lo;
  return lo;
}

}  // namespace

std::string_view to_string(ShapeFamily family) {
  for (const auto& [f, name] : kFamilyNames)
    if (f == family) return name;
  return "explicit";
}

std::optional<ShapeFamily> parse_shape_family(std::string_view name) {
  for (const auto& [f, n] : kFamilyNames)
    if (n == name) return f;
  return std::nullopt;
}

std::string shape_name(const ShapeId& id) {
  switch (id.family) {
    case ShapeFamily::parallelogram:
      return fmt::format("P({},{})", id.m1, id.m2);
    case ShapeFamily::triangle:
      return fmt::format("T({})", id.m1);
    case ShapeFamily::flower:
      return fmt::format("F({})", id.m1);
    case ShapeFamily::trimmed_parallelogram:
      return fmt::format("Ptr({},{})", id.m1, id.m2);
    case ShapeFamily::trimmed_triangle:
      return fmt::format("Ttr({})", id.m1);
    case ShapeFamily::explicit_cells:
      break;
  }
  return "explicit";
}

Board::Board(ShapeId shape, std::string name, std::vector<Cell> cells) {
  auto impl = std::make_shared<Impl>();
  impl->shape = shape;
  impl->name = name.empty() ? shape_name(shape) : std::move(name);
  std::sort(cells.begin(), cells.end());
  impl->cells = std::move(cells);

  int min_q = impl->cells.front().q, max_q = min_q;
  int min_r = impl->cells.front().r, max_r = min_r;
  for (Cell c : impl->cells) {
    min_q = std::min(min_q, c.q);
    max_q = std::max(max_q, c.q);
    min_r = std::min(min_r, c.r);
    max_r = std::max(max_r, c.r);
  }
  impl->origin = {min_q, min_r};
  impl->width = max_q - min_q + 1;
  impl->height = max_r - min_r + 1;
  impl->grid.assign(static_cast<std::size_t>(impl->width) * impl->height, -1);
  const int n = static_cast<int>(impl->cells.size());
  for (int i = 0; i < n; ++i) {
    const Cell c = impl->cells[i] - impl->origin;
    impl->grid[static_cast<std::size_t>(c.q) * impl->height + c.r] = i;
  }
  impl_ = impl;

  impl->neighbors.resize(n);
  impl->adjacency.assign(static_cast<std::size_t>(n) * n, false);
  for (int i = 0; i < n; ++i) {
    for (Cell off : kHexOffsets) {
      if (auto j = index_of(impl->cells[i] + off)) {
        impl->neighbors[i].push_back(*j);
        impl->adjacency[static_cast<std::size_t>(i) * n + *j] = true;
      }
    }
    std::sort(impl->neighbors[i].begin(), impl->neighbors[i].end());
  }
}

Board Board::build(ShapeFamily family, int m1, int m2) {
  switch (family) {
    case ShapeFamily::parallelogram:
      return parallelogram(m1, m2);
    case ShapeFamily::triangle:
      return triangle(m1);
    case ShapeFamily::flower:
      return flower(m1);
    case ShapeFamily::trimmed_parallelogram:
      return trimmed_parallelogram(m1, m2);
    case ShapeFamily::trimmed_triangle:
      return trimmed_triangle(m1);
    case ShapeFamily::explicit_cells:
      break;
  }
  throw Error(ErrorCode::invalid_params, "explicit boards need a cell list");
}

Board Board::parallelogram(int m1, int m2) {
  if (m1 < 1 || m2 < 1)
    throw Error(ErrorCode::invalid_params,
                fmt::format("parallelogram needs m1, m2 >= 1 (got {}, {})", m1, m2));
  return Board({ShapeFamily::parallelogram, m1, m2}, {}, parallelogram_cells(m1, m2));
}

Board Board::triangle(int m) {
  if (m < 2) throw Error(ErrorCode::invalid_params, fmt::format("triangle needs m >= 2 (got {})", m));
  return Board({ShapeFamily::triangle, m, 0}, {}, triangle_cells(m));
}

Board Board::flower(int m) {
  if (m < 1) throw Error(ErrorCode::invalid_params, fmt::format("flower needs m >= 1 (got {})", m));
  return Board({ShapeFamily::flower, m, 0}, {}, flower_cells(m));
}

Board Board::trimmed_parallelogram(int m1, int m2) {
  const Board base = parallelogram(m1, m2);
  auto kept = remove_tight_corners(base);
  if (kept.empty() || !is_connected(kept))
    throw Error(ErrorCode::disconnected_after_trim,
                fmt::format("trimming {} leaves a disconnected board", base.name()));
  return Board({ShapeFamily::trimmed_parallelogram, m1, m2}, {}, std::move(kept));
}

Board Board::trimmed_triangle(int m) {
  const Board base = triangle(m);
  auto kept = remove_tight_corners(base);
  if (kept.empty() || !is_connected(kept))
    throw Error(ErrorCode::disconnected_after_trim,
                fmt::format("trimming {} leaves a disconnected board", base.name()));
  return Board({ShapeFamily::trimmed_triangle, m, 0}, {}, std::move(kept));
}

Board Board::from_cells(std::vector<Cell> cells, std::string name) {
  if (cells.empty()) throw Error(ErrorCode::invalid_params, "explicit board has no cells");
  std::sort(cells.begin(), cells.end());
  if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
    throw Error(ErrorCode::invalid_params, "explicit board lists a cell twice");
  if (!is_connected(cells))
    throw Error(ErrorCode::invalid_params, "explicit board is not connected");
  if (name.empty()) name = fmt::format("explicit[{}]", cells.size());
  return Board({ShapeFamily::explicit_cells, 0, 0}, std::move(name), std::move(cells));
}

std::optional<int> Board::index_of(Cell c) const {
  const Cell d = c - impl_->origin;
  if (d.q < 0 || d.r < 0 || d.q >= impl_->width || d.r >= impl_->height) return std::nullopt;
  const int i = impl_->grid[static_cast<std::size_t>(d.q) * impl_->height + d.r];
  if (i < 0) return std::nullopt;
  return i;
}

int Board::require_index(Cell c) const {
  if (auto i = index_of(c)) return *i;
  throw Error(ErrorCode::cell_not_on_board,
              fmt::format("cell ({},{}) is not on board {}", c.q, c.r, name()));
}

std::vector<Cell> Board::neighbors(Cell c) const {
  std::vector<Cell> out;
  for (int j : neighbor_indices(require_index(c))) out.push_back(cell(j));
  return out;
}

bool is_connected(std::span<const Cell> cells) {
  if (cells.empty()) return false;
  std::set<Cell> remaining(cells.begin(), cells.end());
  std::vector<Cell> stack{*remaining.begin()};
  remaining.erase(remaining.begin());
  while (!stack.empty()) {
    const Cell c = stack.back();
    stack.pop_back();
    for (Cell off : kHexOffsets) {
      auto it = remaining.find(c + off);
      if (it != remaining.end()) {
        stack.push_back(*it);
        remaining.erase(it);
      }
    }
  }
  return remaining.empty();
}

std::vector<Cell> tight_corners(const Board& board) {
  std::vector<Cell> corners;
  for (int i = 0; i < board.size(); ++i) {
    const auto nb = board.neighbor_indices(i);
    if (nb.size() == 2 && board.adjacent_indices(nb[0], nb[1])) corners.push_back(board.cell(i));
  }
  return corners;
}

Board trim(const Board& board) {
  switch (board.family()) {
    case ShapeFamily::parallelogram:
      return Board::trimmed_parallelogram(board.shape().m1, board.shape().m2);
    case ShapeFamily::triangle:
      return Board::trimmed_triangle(board.shape().m1);
    case ShapeFamily::flower:
      if (tight_corners(board).empty()) return board;
      break;
    default:
      break;
  }
  auto kept = remove_tight_corners(board);
  if (kept.size() == static_cast<std::size_t>(board.size())) return board;
  if (kept.empty() || !is_connected(kept))
    throw Error(ErrorCode::disconnected_after_trim,
                fmt::format("trimming {} leaves a disconnected board", board.name()));
  return Board::from_cells(std::move(kept), "trim(" + board.name() + ")");
}

std::span<const HexTransform> hex_symmetries() {
  // Six rotations by 60 degrees, each optionally preceded by the reflection
  // (q, r) -> (r, q).
  static const std::vector<HexTransform> all = [] {
    std::vector<HexTransform> out;
    const HexTransform rot{0, -1, 1, 1};  // (q, r) -> (-r, q + r)
    const HexTransform mirror{0, 1, 1, 0};
    auto compose = [](HexTransform f, HexTransform g) {  // f after g
      return HexTransform{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                          f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
    };
    HexTransform r{};
    for (int k = 0; k < 6; ++k) {
      out.push_back(r);
      out.push_back(compose(r, mirror));
      r = compose(rot, r);
    }
    return out;
  }();
  return all;
}

std::vector<Cell> canonical_shape(std::span<const Cell> cells) {
  std::vector<Cell> best;
  std::vector<Cell> image(cells.size());
  for (const HexTransform& t : hex_symmetries()) {
    std::transform(cells.begin(), cells.end(), image.begin(), [&](Cell c) { return t.apply(c); });
    translate_to_origin_min(image);
    std::sort(image.begin(), image.end());
    if (best.empty() || image < best) best = image;
  }
  return best;
}

bool congruent(std::span<const Cell> a, std::span<const Cell> b) {
  return a.size() == b.size() && canonical_shape(a) == canonical_shape(b);
}

std::vector<std::vector<int>> board_automorphisms(const Board& board) {
  std::vector<std::vector<int>> result;
  const auto cells = board.cells();
  std::vector<Cell> image(cells.size());
  for (const HexTransform& t : hex_symmetries()) {
    std::transform(cells.begin(), cells.end(), image.begin(), [&](Cell c) { return t.apply(c); });
    // The image must coincide with the board after a translation; the
    // translation is forced by the minimum cells.
    std::vector<Cell> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    const Cell shift = cells.front() - sorted.front();
    std::vector<int> perm(cells.size());
    bool ok = true;
    for (std::size_t i = 0; i < cells.size() && ok; ++i) {
      auto j = board.index_of(image[i] + shift);
      if (!j) ok = false;
      else perm[i] = *j;
    }
    if (ok && std::find(result.begin(), result.end(), perm) == result.end())
      result.push_back(std::move(perm));
  }
  return result;
}

std::optional<ShapeId> identify_shape(const Board& board) {
  if (board.family() != ShapeFamily::explicit_cells) return board.shape();
  const int n = board.size();
  const auto target = canonical_shape(board.cells());
  auto matches = [&](const Board& candidate) {
    return candidate.size() == n && canonical_shape(candidate.cells()) == target;
  };
  for (int m = 1; 3 * m * (m - 1) + 1 <= n; ++m)
    if (matches(Board::flower(m))) return ShapeId{ShapeFamily::flower, m, 0};
  for (int a = 1; a * a <= n; ++a)
    if (n % a == 0 && matches(Board::parallelogram(a, n / a)))
      return ShapeId{ShapeFamily::parallelogram, a, n / a};
  for (int m = 2; m * (m + 1) / 2 <= n; ++m)
    if (matches(Board::triangle(m))) return ShapeId{ShapeFamily::triangle, m, 0};
  for (int a = 2; a * a <= n + 2; ++a) {
    if ((n + 2) % a != 0) continue;
    try {
      if (matches(Board::trimmed_parallelogram(a, (n + 2) / a)))
        return ShapeId{ShapeFamily::trimmed_parallelogram, a, (n + 2) / a};
    } catch (const Error&) {
    }
  }
  for (int m = 3; m * (m + 1) / 2 - 3 <= n; ++m) {
    try {
      if (matches(Board::trimmed_triangle(m))) return ShapeId{ShapeFamily::trimmed_triangle, m, 0};
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

ShapeId bounding_parallelogram(const Board& board) {
  int min_q = board.cell(0).q, max_q = min_q, min_r = board.cell(0).r, max_r = min_r;
  for (Cell c : board.cells()) {
    min_q = std::min(min_q, c.q);
    max_q = std::max(max_q, c.q);
    min_r = std::min(min_r, c.r);
    max_r = std::max(max_r, c.r);
  }
  return {ShapeFamily::parallelogram, max_q - min_q + 1, max_r - min_r + 1};
}

}  // namespace hexslide
