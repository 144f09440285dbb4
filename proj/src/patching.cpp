#include "hexslide/patching.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "hexslide/error.hpp"

namespace hexslide {

std::string_view to_string(Claim c) {
  return c == Claim::maximal ? "maximal" : "strong-parity";
}

std::optional<Claim> parse_claim(std::string_view s) {
  if (s == "maximal") return Claim::maximal;
  if (s == "strong-parity") return Claim::strong_parity;
  return std::nullopt;
}

std::string_view to_string(PatchKind k) {
  return k == PatchKind::connectivity ? "connectivity" : "parity";
}

std::optional<PatchKind> parse_patch_kind(std::string_view s) {
  if (s == "connectivity") return PatchKind::connectivity;
  if (s == "parity") return PatchKind::parity;
  return std::nullopt;
}

namespace {

using Cells = std::vector<Cell>;

Cells sorted(std::span<const Cell> cells) {
  Cells out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end());
  return out;
}

Cells intersect(const Cells& a, const Cells& b) {
  Cells out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Cells unite(const Cells& a, const Cells& b) {
  Cells out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Cells shifted(std::span<const Cell> cells, Cell by) {
  Cells out;
  for (Cell c : cells) out.push_back(c + by);
  std::sort(out.begin(), out.end());
  return out;
}

bool has_adjacent_pair(const Cells& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      if (adjacent(cells[i], cells[j])) return true;
  return false;
}

PatchKind kind_for(Claim c) {
  return c == Claim::maximal ? PatchKind::connectivity : PatchKind::parity;
}

// Hypotheses of one gluing step; empty string when they hold.
std::string step_problem(const Cells& b1, const Cells& b2, const Cells& meet, int k, PatchKind kind) {
  if (b1.size() == meet.size() || b2.size() == meet.size())
    return "one patch lies inside the other";
  if (kind == PatchKind::connectivity) {
    if (meet.size() < static_cast<std::size_t>(k) + 1)
      return fmt::format("intersection has {} cells, needs at least {}", meet.size(), k + 1);
    if (!is_connected(meet)) return "intersection is not connected";
  } else {
    if (k != 2) return "parity patching needs exactly two holes";
    if (b1.size() < 5 || b2.size() < 5) return "a patch has fewer than five cells";
    if (meet.size() < 4) return fmt::format("intersection has {} cells, needs at least 4", meet.size());
    if (!has_adjacent_pair(meet)) return "intersection has no two adjacent cells";
  }
  return {};
}

// All copies of `shape` (any rotation, reflection, translation) inside `target`.
std::vector<Cells> placements(std::span<const Cell> shape, const Cells& target) {
  std::set<Cells> found;
  for (const HexTransform& t : hex_symmetries()) {
    Cells img;
    for (Cell c : shape) img.push_back(t.apply(c));
    std::sort(img.begin(), img.end());
    for (Cell anchor : target) {
      Cells moved = shifted(img, anchor - img.front());
      if (std::includes(target.begin(), target.end(), moved.begin(), moved.end()))
        found.insert(std::move(moved));
    }
  }
  return {found.begin(), found.end()};
}

class Builder {
 public:
  Builder(int h, Claim claim, const SearchOptions& options) : options_(options) {
    d_.h = h;
    d_.claim = claim;
  }

  void base(const Board& b) {
    d_.base_cases.push_back(verify_base_case(b, d_.h, d_.claim, options_));
    known_.insert(canonical_shape(b.cells()));
  }

  bool known(std::span<const Cell> cells) const { return known_.contains(canonical_shape(cells)); }

  bool fits(const Cells& b1, const Cells& b2) const {
    return step_problem(b1, b2, intersect(b1, b2), d_.h, kind_for(d_.claim)).empty();
  }

  void step(const Board& b1, const Board& b2) {
    const Cells c1 = sorted(b1.cells()), c2 = sorted(b2.cells());
    Cells meet = intersect(c1, c2);
    if (auto problem = step_problem(c1, c2, meet, d_.h, kind_for(d_.claim)); !problem.empty())
      throw Error(ErrorCode::hypotheses_violated,
                  fmt::format("gluing {} and {}: {}", b1.name(), b2.name(), problem));
    d_.steps.push_back({b1, b2, std::move(meet), d_.h, kind_for(d_.claim)});
    known_.insert(canonical_shape(unite(c1, c2)));
  }

  void step(const Cells& c1, const Cells& c2) { step(named(c1), named(c2)); }

  // Explicit board named after the shape it is congruent to.
  static Board named(const Cells& cells) {
    Board b = Board::from_cells(cells);
    if (auto id = identify_shape(b)) return Board::from_cells(cells, shape_name(*id));
    return b;
  }

  PatchDerivation finish(const Board& target) {
    d_.target = target;
    return std::move(d_);
  }

 private:
  SearchOptions options_;
  PatchDerivation d_{Board::triangle(2), 0, Claim::maximal, {}, {}};
  std::set<Cells> known_;
};

// P(a, b), a, b >= 3, grown one row or column at a time from P(3, 3).
void ensure_parallelogram(Builder& bld, int a, int b) {
  const Board target = Board::parallelogram(a, b);
  if (bld.known(target.cells())) return;
  if (a == 3 && b == 3) return bld.base(target);
  if (a > 3) {
    ensure_parallelogram(bld, a - 1, b);
    const Board p = Board::parallelogram(a - 1, b);
    return bld.step(p, Builder::named(shifted(p.cells(), {1, 0})));
  }
  ensure_parallelogram(bld, a, b - 1);
  const Board p = Board::parallelogram(a, b - 1);
  bld.step(p, Builder::named(shifted(p.cells(), {0, 1})));
}

bool trimmed_ok(int a, int b) { return a >= 3 && b >= 3 && std::max(a, b) >= 4; }

// P^tr(a, b) grown from P^tr(3, 4).
void ensure_trimmed_parallelogram(Builder& bld, int a, int b) {
  const Board target = Board::trimmed_parallelogram(a, b);
  if (bld.known(target.cells())) return;
  if ((a == 3 && b == 4) || (a == 4 && b == 3)) return bld.base(Board::trimmed_parallelogram(3, 4));
  if (a > 3 && trimmed_ok(a - 1, b)) {
    ensure_trimmed_parallelogram(bld, a - 1, b);
    const Board p = Board::trimmed_parallelogram(a - 1, b);
    return bld.step(p, Builder::named(shifted(p.cells(), {1, 0})));
  }
  ensure_trimmed_parallelogram(bld, a, b - 1);
  const Board p = Board::trimmed_parallelogram(a, b - 1);
  bld.step(p, Builder::named(shifted(p.cells(), {0, 1})));
}

// Target as a union of two copies of U, where U is a union of two copies
// of the patch.
bool two_level(Builder& bld, const Board& patch, const Cells& target) {
  const auto first = placements(patch.cells(), target);
  std::set<Cells> tried;
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = i + 1; j < first.size(); ++j) {
      if (!bld.fits(first[i], first[j])) continue;
      Cells u = unite(first[i], first[j]);
      if (u == target) {
        bld.step(first[i], first[j]);
        return true;
      }
      if (!tried.insert(canonical_shape(u)).second) continue;
      const auto second = placements(u, target);
      for (std::size_t x = 0; x < second.size(); ++x) {
        for (std::size_t y = x + 1; y < second.size(); ++y) {
          if (unite(second[x], second[y]) != target || !bld.fits(second[x], second[y])) continue;
          bld.step(first[i], first[j]);
          bld.step(second[x], second[y]);
          return true;
        }
      }
    }
  }
  return false;
}

// Target grown by gluing one patch at a time, at most `depth` patches.
bool chain(Builder& bld, const std::vector<Cells>& patches, const Cells& target, int depth,
           const Cells& current, std::vector<Cells>& picked) {
  if (current == target) return true;
  if (static_cast<int>(picked.size()) >= depth) return false;
  for (const Cells& p : patches) {
    if (!picked.empty()) {
      if (std::includes(current.begin(), current.end(), p.begin(), p.end())) continue;
      if (!bld.fits(current, p)) continue;
    }
    picked.push_back(p);
    if (chain(bld, patches, target, depth, picked.size() == 1 ? p : unite(current, p), picked))
      return true;
    picked.pop_back();
  }
  return false;
}

bool derive_triangle_maximal(Builder& bld, int m) {
  const int a = (m + 1) / 2, b = m + 1 - a;
  ensure_parallelogram(bld, a, b);
  auto rotate = [m](const Cells& cells) {
    Cells out;
    for (Cell c : cells) out.push_back({c.r, m - 1 - c.q - c.r});
    std::sort(out.begin(), out.end());
    return out;
  };
  const Cells p1 = sorted(Board::parallelogram(a, b).cells());
  const Cells p2 = rotate(p1), p3 = rotate(p2);
  bld.step(p1, p2);
  bld.step(unite(p1, p2), p3);
  return true;
}

bool derive_trimmed_triangle(Builder& bld, int m) {
  const Cells target = sorted(Board::trimmed_triangle(m).cells());
  std::vector<std::pair<int, int>> sizes;
  for (int a = 3; a <= m; ++a)
    for (int b = a; b <= m; ++b)
      if (trimmed_ok(a, b)) sizes.emplace_back(a, b);
  std::sort(sizes.begin(), sizes.end(),
            [](auto x, auto y) { return x.first * x.second > y.first * y.second; });
  for (auto [a, b] : sizes) {
    const Board patch = Board::trimmed_parallelogram(a, b);
    if (patch.size() >= static_cast<int>(target.size())) continue;
    const auto ps = placements(patch.cells(), target);
    if (ps.empty()) continue;
    std::vector<Cells> picked;
    if (!chain(bld, ps, target, 3, {}, picked)) continue;
    ensure_trimmed_parallelogram(bld, a, b);
    Cells current = picked.front();
    for (std::size_t i = 1; i < picked.size(); ++i) {
      bld.step(current, picked[i]);
      current = unite(current, picked[i]);
    }
    return true;
  }
  return false;
}

}  // namespace

BaseCase verify_base_case(const Board& board, int h, Claim claim, const SearchOptions& options) {
  const ComponentCensus census = component_census(board, h, options);
  BaseCase out{board, h, claim, census.classes.front().component_size, census.components, false};
  out.verified = claim == Claim::maximal ? census.components == 1 : census.components == 2;
  return out;
}

std::optional<PatchDerivation> derive_connectivity(const Board& board, int h,
                                                   const SearchOptions& options) {
  const auto shape = identify_shape(board);
  if (!shape || h < 2) return std::nullopt;
  const Cells target = sorted(board.cells());
  const int m1 = shape->m1, m2 = shape->m2;

  std::optional<PatchDerivation> out;
  if (h >= 3) {
    Builder bld(h, Claim::maximal, options);
    switch (shape->family) {
      case ShapeFamily::parallelogram:
        if (m1 < 3 || m2 < 3) return std::nullopt;
        ensure_parallelogram(bld, m1, m2);
        break;
      case ShapeFamily::triangle:
        if (m1 < 5) return std::nullopt;
        derive_triangle_maximal(bld, m1);
        break;
      case ShapeFamily::flower:
        if (m1 < 3) return std::nullopt;
        ensure_parallelogram(bld, m1, m1);
        if (!two_level(bld, Board::parallelogram(m1, m1), target)) return std::nullopt;
        break;
      default:
        return std::nullopt;
    }
    out = bld.finish(board);
  } else {
    Builder bld(2, Claim::strong_parity, options);
    switch (shape->family) {
      case ShapeFamily::trimmed_parallelogram:
        if (!trimmed_ok(m1, m2)) return std::nullopt;
        ensure_trimmed_parallelogram(bld, m1, m2);
        break;
      case ShapeFamily::trimmed_triangle:
        if (m1 < 5 || !derive_trimmed_triangle(bld, m1)) return std::nullopt;
        break;
      case ShapeFamily::flower:
        if (m1 < 3) return std::nullopt;
        ensure_trimmed_parallelogram(bld, m1 + 1, m1 + 1);
        if (!two_level(bld, Board::trimmed_parallelogram(m1 + 1, m1 + 1), target))
          return std::nullopt;
        break;
      default:
        return std::nullopt;
    }
    out = bld.finish(board);
  }

  const auto check = check_derivation_detailed(*out);
  if (!check.ok)
    throw Error(ErrorCode::hypotheses_violated,
                fmt::format("derivation for {} rejected: {}", board.name(), check.problems.front()));
  return out;
}

DerivationCheck check_derivation_detailed(const PatchDerivation& d) {
  DerivationCheck out;
  auto fail = [&](std::string msg) { out.problems.push_back(std::move(msg)); };
  std::vector<Cells> established;
  auto is_established = [&](std::span<const Cell> cells) {
    return std::any_of(established.begin(), established.end(),
                       [&](const Cells& e) { return congruent(e, cells); });
  };

  if (d.claim == Claim::maximal && d.h < 3) fail("maximal connectivity needs at least three holes");
  if (d.claim == Claim::strong_parity && d.h != 2) fail("strong parity needs exactly two holes");

  for (std::size_t i = 0; i < d.base_cases.size(); ++i) {
    const BaseCase& b = d.base_cases[i];
    if (!b.verified) fail(fmt::format("base case {} ({}) is not verified", i, b.board.name()));
    if (b.h != d.h || b.claim != d.claim)
      fail(fmt::format("base case {} ({}) proves a different claim", i, b.board.name()));
    const BigInt expected = d.claim == Claim::maximal ? 1 : 2;
    if (b.components != expected)
      fail(fmt::format("base case {} ({}) records {} components, claim needs {}", i,
                       b.board.name(), b.components.str(), expected.str()));
    if (b.component_size == 0) fail(fmt::format("base case {} records an empty component", i));
    established.push_back(sorted(b.board.cells()));
  }

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const PatchStep& s = d.steps[i];
    const Cells c1 = sorted(s.b1.cells()), c2 = sorted(s.b2.cells());
    if (s.kind != kind_for(d.claim)) fail(fmt::format("step {}: wrong kind of patching", i));
    if (s.k != d.h) fail(fmt::format("step {}: k = {} but the claim has {} holes", i, s.k, d.h));
    if (!is_established(c1)) fail(fmt::format("step {}: first patch is not established", i));
    if (!is_established(c2)) fail(fmt::format("step {}: second patch is not established", i));
    const Cells meet = intersect(c1, c2);
    if (sorted(s.intersection) != meet)
      fail(fmt::format("step {}: recorded intersection differs from the actual one", i));
    if (auto problem = step_problem(c1, c2, meet, s.k, s.kind); !problem.empty())
      fail(fmt::format("step {}: {}", i, problem));
    established.push_back(unite(c1, c2));
  }

  if (!is_established(d.target.cells()))
    fail(fmt::format("{} is not reached by the derivation", d.target.name()));
  out.ok = out.problems.empty();
  return out;
}

bool check_derivation(const PatchDerivation& d) { return check_derivation_detailed(d).ok; }

}  // namespace hexslide
