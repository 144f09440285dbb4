#include "hexslide/theorems.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "hexslide/error.hpp"
#include "hexslide/holes.hpp"

namespace hexslide {

std::optional<ShapeId> effective_shape(const Board& board) { return identify_shape(board); }

bool maximal_family(const Board& board, int h) {
  if (h < 3 || h >= board.size()) return false;
  const auto s = effective_shape(board);
  if (!s) return false;
  switch (s->family) {
    case ShapeFamily::parallelogram: return s->m1 >= 3 && s->m2 >= 3;
    case ShapeFamily::triangle: return s->m1 >= 5;
    case ShapeFamily::flower: return s->m1 >= 3;
    default: return false;
  }
}

bool strong_parity_family(const Board& board) {
  const auto s = effective_shape(board);
  if (!s) return false;
  switch (s->family) {
    case ShapeFamily::flower: return s->m1 >= 3;
    case ShapeFamily::trimmed_triangle: return s->m1 >= 5;
    case ShapeFamily::trimmed_parallelogram:
      return s->m1 >= 3 && s->m2 >= 3 && std::max(s->m1, s->m2) >= 4;
    default: return false;
  }
}

bool skinny_board(const Board& board) {
  const auto s = effective_shape(board);
  return s && s->family == ShapeFamily::parallelogram && std::min(s->m1, s->m2) == 2;
}

namespace {

bool corner_shape(const ShapeId& s) {
  return (s.family == ShapeFamily::triangle && s.m1 >= 4) ||
         (s.family == ShapeFamily::parallelogram && s.m1 >= 3 && s.m2 >= 3);
}

}  // namespace

BigInt corner_component_count(const Board& board, const BigInt& trimmed_count) {
  const int k = static_cast<int>(tight_corners(board).size());
  const int t = board.size() - 2;
  return trimmed_count * factorial(k) * binomial(t, k);
}

FormulaCount component_count_formula(const Board& board, int h) {
  const int n = board.size();
  const auto s = effective_shape(board);
  if (!s || h < 2 || h >= n) return {};
  if (s->family == ShapeFamily::parallelogram && std::min(s->m1, s->m2) == 2)
    return {factorial(n - h), "skinny"};
  if (maximal_family(board, h)) return {BigInt{1}, "maximal"};
  if (h != 2) return {};
  if (s->family == ShapeFamily::parallelogram && s->m1 >= 3 && s->m2 >= 3 &&
      std::max(s->m1, s->m2) >= 4)
    return {4 * binomial(n - 2, 2), "parallelogram-corners"};
  if (s->family == ShapeFamily::triangle && s->m1 >= 5)
    return {12 * binomial(n - 2, 3), "triangle-corners"};
  if (strong_parity_family(board)) return {BigInt{2}, "strong-parity"};
  if (corner_shape(*s)) {
    const auto inner = component_count_formula(trim(board), 2);
    if (inner.count)
      return {corner_component_count(board, *inner.count), "corners+" + inner.basis};
  }
  return {};
}

std::pair<Configuration, std::vector<SlideMove>> normalize_holes(
    const Configuration& c, std::span<const Cell> target_holes, std::uint64_t budget) {
  const Board& board = c.board();
  const HoleSet from = hole_set_of(board, c.holes());
  const HoleSet to = hole_set_of(board, target_holes);
  auto path = hole_path(board, from, to, budget);
  if (!path)
    throw Error(ErrorCode::holes_unreachable, "target hole placement is not reachable by slides");
  Configuration out = c;
  for (const SlideMove& m : *path) out = apply_move(out, m);
  return {std::move(out), std::move(*path)};
}

namespace {

// Cell order along a strip of triangles: each cell adjacent to the next two.
std::optional<std::vector<int>> strip_order(const Board& board) {
  const int n = board.size();
  for (int first = 0; first < n; ++first) {
    const auto nb = board.neighbor_indices(first);
    if (nb.size() != 2) continue;
    for (int flip = 0; flip < 2; ++flip) {
      std::vector<int> order{first, nb[flip], nb[1 - flip]};
      if (n < 3 || !board.adjacent_indices(order[1], order[2])) continue;
      std::vector<bool> used(n, false);
      for (int i : order) used[i] = true;
      while (static_cast<int>(order.size()) < n) {
        const int a = order[order.size() - 2], b = order.back();
        int next = -1;
        for (int x : board.neighbor_indices(b))
          if (!used[x] && board.adjacent_indices(x, a)) next = x;
        if (next < 0) break;
        used[next] = true;
        order.push_back(next);
      }
      if (static_cast<int>(order.size()) == n) return order;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<int> weakly_above_sequence(const Configuration& c) {
  const auto order = strip_order(c.board());
  if (!order) throw Error(ErrorCode::invalid_params, c.board().name() + " is not a 2 x m strip");
  std::vector<int> out;
  for (int i : *order)
    if (c.label_at_index(i) != 0) out.push_back(c.label_at_index(i));
  return out;
}

std::optional<int> corner_owner(const Configuration& c, Cell corner) {
  if (int label = c.label_at(corner); label != 0) return label;
  for (Cell x : c.board().neighbors(corner))
    if (int label = c.label_at(x); label != 0) return label;
  return std::nullopt;
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::solvable: return "solvable";
    case Decision::unsolvable: return "unsolvable";
    case Decision::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

SolvabilityVerdict verdict(Decision d, std::string rule, std::string explanation,
                           Certificate cert = {}) {
  return {d, std::move(rule), std::move(cert), std::move(explanation)};
}

// Slides every corner owner back into its corner. nullopt when holes keep
// landing in corners (tiny boards).
std::optional<Configuration> settle_corners(Configuration c, std::span<const Cell> corners) {
  for (std::size_t round = 0; round <= corners.size(); ++round) {
    bool moved = false;
    for (Cell k : corners) {
      if (c.label_at(k) != 0) continue;
      const auto nb = c.board().neighbors(k);
      if (nb.size() != 2) return std::nullopt;
      Cell hole = nb[0], owner = nb[1];
      if (c.label_at(owner) == 0) std::swap(hole, owner);
      if (c.label_at(owner) == 0 || c.label_at(hole) != 0) return std::nullopt;
      c = apply_move(c, {owner, k, hole});
      moved = true;
    }
    if (!moved) return c;
  }
  return std::nullopt;
}

Configuration restrict_to(const Configuration& c, const Board& sub) {
  std::vector<std::uint8_t> labels;
  labels.reserve(sub.size());
  for (Cell x : sub.cells()) labels.push_back(static_cast<std::uint8_t>(c.label_at(x)));
  return Configuration(sub, std::move(labels));
}

SolvabilityVerdict search(const Configuration& start, const Configuration& target,
                          const DecideOptions& options, std::string prefix) {
  try {
    auto path = shortest_path(start, target, options.budget);
    if (!path)
      return verdict(Decision::unsolvable, "bfs-fallback",
                     prefix + "exhaustive search found no slide sequence");
    Certificate cert;
    cert.path_length = path->size();
    cert.path = std::move(*path);
    return verdict(Decision::solvable, "bfs-fallback",
                   prefix + fmt::format("search found a sequence of {} slides", *cert.path_length),
                   std::move(cert));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded) throw;
    return verdict(Decision::unknown, "bfs-fallback",
                   prefix + fmt::format("no rule applies and search exceeded the budget of {} states",
                                        options.budget));
  }
}

SolvabilityVerdict decide(const Configuration& start, const Configuration& target,
                          const DecideOptions& options) {
  const Board& board = start.board();
  const int h = start.hole_count();

  if (start == target)
    return verdict(Decision::solvable, "identical", "start and target are the same configuration");
  if (options.force_bfs) return search(start, target, options, "");

  if (is_isolated(start) || is_isolated(target))
    return verdict(Decision::unsolvable, "isolated",
                   "an isolated configuration admits no slide, so it only reaches itself");

  if (skinny_board(board)) {
    const bool same = weakly_above_sequence(start) == weakly_above_sequence(target);
    return verdict(same ? Decision::solvable : Decision::unsolvable, "skinny",
                   same ? "tiles appear in the same order along the strip"
                        : "slides preserve the order of tiles along the strip, and it differs");
  }

  if (maximal_family(board, h))
    return verdict(Decision::solvable, "maximal",
                   fmt::format("{} with {} holes has one component of non-isolated configurations",
                               board.name(), h));

  if (h == 2) {
    const auto corners = tight_corners(board);
    if (!corners.empty()) {
      auto s = settle_corners(start, corners);
      auto t = settle_corners(target, corners);
      if (s && t) {
        for (Cell k : corners) {
          if (s->label_at(k) != t->label_at(k)) {
            Certificate cert;
            cert.corner = k;
            return verdict(Decision::unsolvable, "corner",
                           fmt::format("tight corner ({},{}) belongs to tile {} in the start but "
                                       "tile {} in the target",
                                       k.q, k.r, s->label_at(k), t->label_at(k)),
                           std::move(cert));
          }
        }
        std::optional<Board> inner;
        try {
          inner = trim(board);
        } catch (const Error&) {
        }
        if (inner && inner->size() >= 3) {
          auto sub = decide(restrict_to(*s, *inner), restrict_to(*t, *inner), options);
          sub.explanation = "corner tiles agree; on the trimmed board: " + sub.explanation;
          return sub;
        }
      }
    }

    const bool strong = strong_parity_family(board);
    std::pair<Configuration, std::vector<SlideMove>> norm{target, {}};
    try {
      norm = normalize_holes(target, start.holes(), options.budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::holes_unreachable) throw;
      return verdict(Decision::unsolvable, "hole-placement",
                     "the holes cannot be moved from the target's placement to the start's");
    }
    Certificate cert;
    cert.parity = permutation_between(start, norm.first).parity;
    cert.normalizing_moves = std::move(norm.second);
    if (strong) {
      const bool even = *cert.parity == Parity::even;
      return verdict(even ? Decision::solvable : Decision::unsolvable, "strong-parity",
                     fmt::format("{} with two holes has exactly two parity classes; the tile "
                                 "permutation is {}",
                                 board.name(), to_string(*cert.parity)),
                     std::move(cert));
    }
    if (*cert.parity == Parity::odd)
      return verdict(Decision::unsolvable, "parity-weak",
                     "with two holes on the same cells the tiles differ by an odd permutation",
                     std::move(cert));
    if (!options.allow_bfs_fallback)
      return verdict(Decision::unknown, "parity-weak",
                     "even permutation; this board has no rule for the even case", std::move(cert));
    return search(start, target, options, "even permutation; ");
  }

  if (!options.allow_bfs_fallback)
    return verdict(Decision::unknown, "none", "no rule applies and search is disabled");
  return search(start, target, options, "");
}

}  // namespace

SolvabilityVerdict decide_solvable(const Configuration& start, const Configuration& target,
                                   const DecideOptions& options) {
  if (!(start.board() == target.board()))
    throw Error(ErrorCode::board_mismatch, "start and target are on different boards");
  if (start.tile_labels() != target.tile_labels())
    throw Error(ErrorCode::label_mismatch, "start and target carry different tiles");
  return decide(start, target, options);
}

}  // namespace hexslide
