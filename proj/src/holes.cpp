#include "hexslide/holes.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>
#include <fmt/format.h>

#include "hexslide/error.hpp"

namespace hexslide {

HoleSet hole_set_of(const Board& board, std::span<const Cell> holes) {
  HoleSet out;
  out.reserve(holes.size());
  for (Cell c : holes) out.push_back(board.require_index(c));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error(ErrorCode::invalid_params, "hole listed twice");
  return out;
}

std::vector<Cell> hole_cells(const Board& board, const HoleSet& holes) {
  std::vector<Cell> out;
  out.reserve(holes.size());
  for (int i : holes) out.push_back(board.cell(i));
  return out;
}

namespace {

std::vector<std::uint8_t> occupancy(const Board& board, const HoleSet& holes) {
  std::vector<std::uint8_t> labels(board.size(), 1);
  for (int i : holes) labels[i] = 0;
  return labels;
}

void check_budget(std::size_t seen, std::uint64_t budget) {
  if (seen > budget)
    throw Error(ErrorCode::budget_exceeded,
                fmt::format("hole-placement search exceeded {} states", budget));
}

}  // namespace

bool hole_set_non_isolated(const Board& board, const HoleSet& holes) {
  const auto labels = occupancy(board, holes);
  bool any = false;
  for_each_slide(board, labels, holes, [&](int, int, int) { any = true; });
  return any;
}

std::vector<HoleSet> non_isolated_hole_sets(const Board& board, int h) {
  const int n = board.size();
  std::vector<HoleSet> out;
  if (h < 2 || h > n) return out;
  HoleSet pick(h);
  for (int i = 0; i < h; ++i) pick[i] = i;
  while (true) {
    if (hole_set_non_isolated(board, pick)) out.push_back(pick);
    int k = h - 1;
    while (k >= 0 && pick[k] == n - h + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (int j = k + 1; j < h; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

std::vector<IndexSlide> hole_slides(const Board& board, const HoleSet& holes) {
  const auto labels = occupancy(board, holes);
  std::map<std::pair<int, int>, int> slides;
  for_each_slide(board, labels, holes, [&](int from, int to, int witness) {
    auto [it, inserted] = slides.try_emplace({from, to}, witness);
    if (!inserted) it->second = std::min(it->second, witness);
  });
  std::vector<IndexSlide> out;
  out.reserve(slides.size());
  for (const auto& [ft, w] : slides) out.push_back({ft.first, ft.second, w});
  return out;
}

HoleSet slide_holes(const HoleSet& holes, const IndexSlide& slide) {
  HoleSet next = holes;
  *std::find(next.begin(), next.end(), slide.to) = slide.from;
  std::sort(next.begin(), next.end());
  return next;
}

std::vector<HoleSet> hole_class(const Board& board, const HoleSet& start, std::uint64_t budget) {
  absl::flat_hash_set<HoleSet> seen{start};
  std::vector<HoleSet> order{start};
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const IndexSlide& s : hole_slides(board, order[head])) {
      HoleSet next = slide_holes(order[head], s);
      if (seen.insert(next).second) {
        order.push_back(std::move(next));
        check_budget(order.size(), budget);
      }
    }
  }
  return order;
}

std::optional<std::vector<SlideMove>> hole_path(const Board& board, const HoleSet& from,
                                                const HoleSet& to, std::uint64_t budget) {
  if (from.size() != to.size()) return std::nullopt;
  struct Parent {
    HoleSet prev;
    IndexSlide slide;
  };
  absl::flat_hash_map<HoleSet, Parent> parent;
  parent.emplace(from, Parent{{}, {-1, -1, -1}});
  std::deque<HoleSet> queue{from};
  bool found = from == to;
  while (!queue.empty() && !found) {
    HoleSet cur = std::move(queue.front());
    queue.pop_front();
    for (const IndexSlide& s : hole_slides(board, cur)) {
      HoleSet next = slide_holes(cur, s);
      if (parent.contains(next)) continue;
      parent.emplace(next, Parent{cur, s});
      check_budget(parent.size(), budget);
      if (next == to) {
        found = true;
        break;
      }
      queue.push_back(std::move(next));
    }
  }
  if (!found) return std::nullopt;
  std::vector<SlideMove> moves;
  for (HoleSet cur = to; cur != from;) {
    const Parent& p = parent.at(cur);
    moves.push_back({board.cell(p.slide.from), board.cell(p.slide.to), board.cell(p.slide.witness)});
    cur = p.prev;
  }
  std::reverse(moves.begin(), moves.end());
  return moves;
}

std::vector<std::vector<HoleSet>> hole_classes(const Board& board, int h, std::uint64_t budget) {
  std::vector<std::vector<HoleSet>> classes;
  absl::flat_hash_set<HoleSet> assigned;
  for (const HoleSet& s : non_isolated_hole_sets(board, h)) {
    if (assigned.contains(s)) continue;
    auto cls = hole_class(board, s, budget);
    for (const HoleSet& member : cls) assigned.insert(member);
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace hexslide
