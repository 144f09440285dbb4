#include "hexslide/configuration.hpp"

#include <algorithm>
#include <array>
#include <map>

#include <fmt/format.h>

#include "hexslide/error.hpp"

namespace hexslide {

bool is_diagonal_slide(const SlideMove& move) {
  const Cell d = move.from - move.to;
  return d == Cell{1, -1} || d == Cell{-1, 1};
}

Configuration::Configuration(Board board, std::vector<std::uint8_t> labels)
    : board_(std::move(board)), labels_(std::move(labels)) {
  if (labels_.size() != static_cast<std::size_t>(board_.size()))
    throw Error(ErrorCode::malformed_input,
                fmt::format("configuration has {} cells, board {} has {}", labels_.size(),
                            board_.name(), board_.size()));
  std::array<bool, 256> seen{};
  for (std::uint8_t l : labels_) {
    if (l == 0) {
      ++hole_count_;
      continue;
    }
    if (seen[l]) throw Error(ErrorCode::malformed_input, fmt::format("tile label {} repeated", l));
    seen[l] = true;
  }
}

Configuration Configuration::ordered(Board board, int holes) {
  const int n = board.size();
  if (holes < 0 || holes > n)
    throw Error(ErrorCode::invalid_params, fmt::format("{} holes on a {}-cell board", holes, n));
  if (n - holes > 255) throw Error(ErrorCode::too_large, "boards are limited to 255 tiles");
  std::vector<std::uint8_t> labels(n, 0);
  for (int i = 0; i < n - holes; ++i) labels[i] = static_cast<std::uint8_t>(i + 1);
  return Configuration(std::move(board), std::move(labels));
}

Configuration Configuration::with_holes(Board board, std::span<const Cell> holes) {
  const int n = board.size();
  std::vector<bool> is_hole(n, false);
  for (Cell c : holes) {
    const int i = board.require_index(c);
    if (is_hole[i]) throw Error(ErrorCode::invalid_params, "hole listed twice");
    is_hole[i] = true;
  }
  if (n - static_cast<int>(holes.size()) > 255)
    throw Error(ErrorCode::too_large, "boards are limited to 255 tiles");
  std::vector<std::uint8_t> labels(n, 0);
  int next = 1;
  for (int i = 0; i < n; ++i)
    if (!is_hole[i]) labels[i] = static_cast<std::uint8_t>(next++);
  return Configuration(std::move(board), std::move(labels));
}

std::vector<int> Configuration::hole_indices() const {
  std::vector<int> out;
  out.reserve(hole_count_);
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i)
    if (labels_[i] == 0) out.push_back(i);
  return out;
}

std::vector<Cell> Configuration::holes() const {
  std::vector<Cell> out;
  for (int i : hole_indices()) out.push_back(board_.cell(i));
  return out;
}

std::vector<int> Configuration::tile_labels() const {
  std::vector<int> out;
  for (std::uint8_t l : labels_)
    if (l != 0) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> Configuration::index_of_label(int label) const {
  if (label <= 0) return std::nullopt;
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::vector<SlideMove> legal_moves(const Configuration& c) {
  const Board& board = c.board();
  const auto holes = c.hole_indices();
  // (from, to) -> least witness
  std::map<std::pair<int, int>, int> slides;
  for_each_slide(board, c.labels(), holes, [&](int from, int to, int witness) {
    auto [it, inserted] = slides.try_emplace({from, to}, witness);
    if (!inserted) it->second = std::min(it->second, witness);
  });
  std::vector<SlideMove> out;
  out.reserve(slides.size());
  // Cell indices follow canonical cell order, so the map order is (from, to).
  for (const auto& [ft, w] : slides)
    out.push_back({board.cell(ft.first), board.cell(ft.second), board.cell(w)});
  return out;
}

std::optional<SlideMove> find_slide(const Configuration& c, Cell from, Cell to) {
  for (const SlideMove& m : legal_moves(c))
    if (m.from == from && m.to == to) return m;
  return std::nullopt;
}

bool is_legal(const Configuration& c, const SlideMove& move) {
  const Board& board = c.board();
  const auto from = board.index_of(move.from);
  const auto to = board.index_of(move.to);
  const auto witness = board.index_of(move.witness);
  if (!from || !to || !witness || *to == *witness) return false;
  if (c.label_at_index(*from) == 0 || c.label_at_index(*to) != 0 ||
      c.label_at_index(*witness) != 0)
    return false;
  return board.adjacent_indices(*from, *to) && board.adjacent_indices(*from, *witness) &&
         board.adjacent_indices(*to, *witness);
}

Configuration apply_move(const Configuration& c, const SlideMove& move) {
  if (!is_legal(c, move))
    throw Error(ErrorCode::illegal_move,
                fmt::format("cannot slide ({},{}) -> ({},{}) via hole ({},{})", move.from.q,
                            move.from.r, move.to.q, move.to.r, move.witness.q, move.witness.r));
  const Board& board = c.board();
  std::vector<std::uint8_t> labels(c.labels().begin(), c.labels().end());
  const int from = *board.index_of(move.from);
  const int to = *board.index_of(move.to);
  labels[to] = labels[from];
  labels[from] = 0;
  return Configuration(board, std::move(labels));
}

bool is_isolated(const Configuration& c) {
  bool any = false;
  const auto holes = c.hole_indices();
  for_each_slide(c.board(), c.labels(), holes, [&](int, int, int) { any = true; });
  return !any;
}

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity permutation_parity(std::span<const int> perm) {
  std::vector<bool> seen(perm.size(), false);
  int even_cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int length = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++length;
    }
    if (length % 2 == 0) ++even_cycles;
  }
  return even_cycles % 2 == 0 ? Parity::even : Parity::odd;
}

bool TilePermutation::is_identity() const {
  return std::all_of(mapping.begin(), mapping.end(),
                     [](const auto& p) { return p.first == p.second; });
}

TilePermutation permutation_between(const Configuration& c1, const Configuration& c2) {
  if (!(c1.board() == c2.board()))
    throw Error(ErrorCode::board_mismatch, "configurations are on different boards");
  if (c1.hole_indices() != c2.hole_indices())
    throw Error(ErrorCode::hole_mismatch, "configurations have holes in different cells");
  const auto labels = c1.tile_labels();
  if (labels != c2.tile_labels())
    throw Error(ErrorCode::label_mismatch, "configurations carry different tile labels");

  std::array<int, 256> rank{};
  for (std::size_t k = 0; k < labels.size(); ++k) rank[labels[k]] = static_cast<int>(k);

  TilePermutation result;
  std::vector<int> perm(labels.size());
  for (int i = 0; i < c1.board().size(); ++i) {
    const int a = c1.label_at_index(i);
    if (a == 0) continue;
    const int b = c2.label_at_index(i);
    result.mapping.emplace_back(a, b);
    perm[rank[a]] = rank[b];
  }
  std::sort(result.mapping.begin(), result.mapping.end());
  result.parity = permutation_parity(perm);
  return result;
}

AugmentedConfiguration::AugmentedConfiguration(Configuration base, Cell minus_one)
    : base_(std::move(base)), minus_one_(minus_one) {
  if (base_.board().family() != ShapeFamily::parallelogram)
    throw Error(ErrorCode::board_not_parallelogram,
                "augmented configurations live on parallelogram boards");
  if (base_.hole_count() != 2)
    throw Error(ErrorCode::hole_count,
                fmt::format("augmented configurations need 2 holes, got {}", base_.hole_count()));
  const auto holes = base_.holes();
  if (holes[0] == minus_one) zero_ = holes[1];
  else if (holes[1] == minus_one) zero_ = holes[0];
  else throw Error(ErrorCode::hole_mismatch, "the -1 label must sit on a hole");
}

AugmentedConfiguration AugmentedConfiguration::apply(const SlideMove& move) const {
  Configuration next = apply_move(base_, move);
  const Cell minus_one = move.to == minus_one_ ? move.from : minus_one_;
  return AugmentedConfiguration(std::move(next), minus_one);
}

namespace {

int taxicab_parity(const Board& board, Cell c) {
  const Cell origin = board.cell(0);  // minimum cell of the parallelogram
  const Cell d = c - origin;
  return (d.q + d.r) & 1;
}

}  // namespace

Parity augmented_parity(const AugmentedConfiguration& ref, const AugmentedConfiguration& cur) {
  const Board& board = ref.base().board();
  if (!(board == cur.base().board()))
    throw Error(ErrorCode::board_mismatch, "augmented configurations are on different boards");
  if (ref.base().tile_labels() != cur.base().tile_labels())
    throw Error(ErrorCode::label_mismatch, "augmented configurations carry different tiles");

  // Position of every item (tiles by label, holes as -1 / 0) in ref and cur.
  const int n = board.size();
  std::array<int, 256> ref_pos{};
  for (int i = 0; i < n; ++i)
    if (int l = ref.base().label_at_index(i)) ref_pos[l] = i;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i)
    if (int l = cur.base().label_at_index(i)) perm[ref_pos[l]] = i;
  perm[board.require_index(ref.minus_one_hole())] = board.require_index(cur.minus_one_hole());
  perm[board.require_index(ref.zero_hole())] = board.require_index(cur.zero_hole());

  const int p1 = taxicab_parity(board, cur.minus_one_hole()) ^ taxicab_parity(board, ref.minus_one_hole());
  const int p2 = taxicab_parity(board, cur.zero_hole()) ^ taxicab_parity(board, ref.zero_hole());
  const int p3 = static_cast<int>(permutation_parity(perm));
  return static_cast<Parity>((p1 + p2 + p3) & 1);
}

}  // namespace hexslide
