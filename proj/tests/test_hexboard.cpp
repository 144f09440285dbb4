#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "hexslide/error.hpp"
#include "hexslide/hexboard.hpp"
#include "oracles.hpp"

using namespace hexslide;

namespace {

std::vector<Cell> naive_tight_corners(const Board& b) {
  std::vector<Cell> out;
  for (Cell c : b.cells()) {
    std::vector<Cell> nb;
    for (Cell d : b.cells())
      if (oracle::adj(c, d)) nb.push_back(d);
    if (nb.size() == 2 && oracle::adj(nb[0], nb[1])) out.push_back(c);
  }
  return out;
}

}  // namespace

TEST(Hexboard, CellCountsMatchClosedForms) {
  for (int m = 1; m <= 8; ++m) {
    EXPECT_EQ(Board::flower(m).size(), 3 * m * (m - 1) + 1) << m;
    if (m >= 2) EXPECT_EQ(Board::triangle(m).size(), m * (m + 1) / 2) << m;
    if (m >= 3) EXPECT_EQ(Board::trimmed_triangle(m).size(), m * (m + 1) / 2 - 3) << m;
    for (int n = 1; n <= 8; ++n) {
      EXPECT_EQ(Board::parallelogram(m, n).size(), m * n);
      if (m >= 2 && n >= 2 && m * n > 4)
        EXPECT_EQ(Board::trimmed_parallelogram(m, n).size(), m * n - 2) << m << "x" << n;
    }
  }
}

TEST(Hexboard, NeighboursAgreeWithAxialDistance) {
  for (const Board& b : {Board::flower(4), Board::triangle(6), Board::parallelogram(4, 7),
                         Board::trimmed_triangle(5)}) {
    for (int i = 0; i < b.size(); ++i) {
      std::set<int> expected;
      for (int j = 0; j < b.size(); ++j)
        if (oracle::adj(b.cell(i), b.cell(j))) expected.insert(j);
      const auto got = b.neighbor_indices(i);
      EXPECT_EQ(std::set<int>(got.begin(), got.end()), expected);
      for (int j = 0; j < b.size(); ++j)
        EXPECT_EQ(b.adjacent_indices(i, j), expected.count(j) == 1);
    }
  }
}

TEST(Hexboard, CellsAreInCanonicalOrder) {
  const Board b = Board::flower(3);
  EXPECT_TRUE(std::is_sorted(b.cells().begin(), b.cells().end()));
  for (int i = 0; i < b.size(); ++i) EXPECT_EQ(b.index_of(b.cell(i)), i);
  EXPECT_FALSE(b.index_of(Cell{10, 10}));
  EXPECT_THROW(b.require_index(Cell{10, 10}), Error);
}

TEST(Hexboard, TightCornersMatchBruteForce) {
  for (int m = 2; m <= 8; ++m) {
    const Board t = Board::triangle(m);
    EXPECT_EQ(tight_corners(t), naive_tight_corners(t));
    EXPECT_EQ(tight_corners(t).size(), 3u);
    EXPECT_TRUE(tight_corners(Board::flower(m)).empty());
    for (int n = 2; n <= 8; ++n) {
      const Board p = Board::parallelogram(m, n);
      EXPECT_EQ(tight_corners(p), naive_tight_corners(p));
      EXPECT_EQ(tight_corners(p).size(), 2u);
    }
  }
}

TEST(Hexboard, TrimRemovesCornersAndKeepsFamily) {
  const Board t = trim(Board::triangle(5));
  EXPECT_EQ(t.size(), 12);
  EXPECT_EQ(t, Board::trimmed_triangle(5));
  const Board p = trim(Board::parallelogram(3, 4));
  EXPECT_EQ(p, Board::trimmed_parallelogram(3, 4));
  EXPECT_EQ(p.name(), "Ptr(3,4)");
  EXPECT_THROW(trim(Board::triangle(2)), Error);
}

TEST(Hexboard, TwelveSymmetriesPreserveAdjacency) {
  const auto syms = hex_symmetries();
  ASSERT_EQ(syms.size(), 12u);
  std::set<std::vector<Cell>> images;
  for (const HexTransform& t : syms) {
    for (Cell off : kHexOffsets) EXPECT_TRUE(adjacent(Cell{0, 0}, t.apply(off)));
    std::vector<Cell> img;
    for (Cell off : kHexOffsets) img.push_back(t.apply(off));
    images.insert(img);
  }
  EXPECT_EQ(images.size(), 12u);
}

TEST(Hexboard, CongruenceIgnoresPlacement) {
  const Board p = Board::parallelogram(3, 4);
  const Board q = Board::parallelogram(4, 3);
  EXPECT_TRUE(congruent(p.cells(), q.cells()));
  std::vector<Cell> moved;
  for (Cell c : p.cells()) moved.push_back(Cell{-c.r + 5, c.q + c.r - 2});
  EXPECT_TRUE(congruent(p.cells(), moved));
  EXPECT_FALSE(congruent(p.cells(), Board::parallelogram(2, 6).cells()));
  const auto id = identify_shape(Board::from_cells(moved));
  ASSERT_TRUE(id);
  EXPECT_EQ(id->family, ShapeFamily::parallelogram);
}

TEST(Hexboard, AutomorphismCounts) {
  EXPECT_EQ(board_automorphisms(Board::flower(3)).size(), 12u);
  EXPECT_EQ(board_automorphisms(Board::triangle(4)).size(), 6u);
  EXPECT_EQ(board_automorphisms(Board::parallelogram(3, 3)).size(), 4u);
  EXPECT_EQ(board_automorphisms(Board::parallelogram(3, 4)).size(), 2u);
}

TEST(Hexboard, ExplicitBoardsAreValidated) {
  EXPECT_THROW(Board::from_cells({}), Error);
  EXPECT_THROW(Board::from_cells({{0, 0}, {5, 5}}), Error);
  EXPECT_THROW(Board::from_cells({{0, 0}, {0, 0}}), Error);
  EXPECT_EQ(Board::from_cells({{0, 0}, {1, 0}}).name(), "explicit[2]");
}

TEST(Hexboard, BoundingParallelogram) {
  const ShapeId s = bounding_parallelogram(Board::triangle(4));
  EXPECT_EQ(s.m1 * s.m2, 16);
}
