#include <gtest/gtest.h>

#include "hexslide/error.hpp"
#include "hexslide/json_io.hpp"
#include "hexslide/patching.hpp"

using namespace hexslide;

namespace {

struct Target {
  Board board;
  int h;
  Claim claim;
};

std::vector<Target> targets() {
  std::vector<Target> out;
  for (int a = 3; a <= 6; ++a)
    for (int b = 3; b <= 6; ++b) out.push_back({Board::parallelogram(a, b), 3, Claim::maximal});
  out.push_back({Board::flower(3), 3, Claim::maximal});
  out.push_back({Board::flower(3), 4, Claim::maximal});
  for (int m = 5; m <= 6; ++m) out.push_back({Board::triangle(m), 3, Claim::maximal});
  out.push_back({Board::flower(3), 2, Claim::strong_parity});
  out.push_back({Board::trimmed_triangle(5), 2, Claim::strong_parity});
  out.push_back({Board::trimmed_parallelogram(4, 5), 2, Claim::strong_parity});
  return out;
}

std::vector<Cell> shifted(const Board& b, Cell by) {
  std::vector<Cell> out;
  for (Cell c : b.cells()) out.push_back(c + by);
  return out;
}

}  // namespace

TEST(Patching, DerivationsCheckOut) {
  for (const auto& [board, h, claim] : targets()) {
    const auto d = derive_connectivity(board, h);
    ASSERT_TRUE(d) << board.name() << " h=" << h;
    EXPECT_EQ(d->claim, claim);
    EXPECT_EQ(d->target, board);
    const DerivationCheck c = check_derivation_detailed(*d);
    EXPECT_TRUE(c.ok) << board.name() << ": " << (c.problems.empty() ? "" : c.problems.front());
    for (const BaseCase& b : d->base_cases) EXPECT_TRUE(b.verified);
    for (const PatchStep& s : d->steps) {
      EXPECT_EQ(s.k, h);
      if (s.kind == PatchKind::connectivity) EXPECT_GE(s.intersection.size(), h + 1u);
      if (s.kind == PatchKind::parity) EXPECT_GE(s.intersection.size(), 4u);
    }
  }
}

TEST(Patching, JsonRoundTrip) {
  const auto d = derive_connectivity(Board::triangle(5), 3);
  ASSERT_TRUE(d);
  const Json j = to_json(*d);
  EXPECT_EQ(j["conclusion"]["claim"], "maximal");
  const PatchDerivation back = derivation_from_json(j);
  EXPECT_EQ(to_json(back), j);
  EXPECT_TRUE(check_derivation(back));
  EXPECT_TRUE(check_derivation(derivation_from_json(Json::parse(j.dump()))));
}

TEST(Patching, UnverifiedBaseCaseFails) {
  auto d = derive_connectivity(Board::parallelogram(3, 4), 3);
  ASSERT_TRUE(d);
  d->base_cases.front().verified = false;
  EXPECT_FALSE(check_derivation(*d));
}

TEST(Patching, WrongBaseCountFails) {
  auto d = derive_connectivity(Board::parallelogram(3, 4), 3);
  ASSERT_TRUE(d);
  d->base_cases.front().components = 2;
  EXPECT_FALSE(check_derivation(*d));
}

TEST(Patching, TamperedIntersectionFails) {
  auto d = derive_connectivity(Board::parallelogram(4, 4), 3);
  ASSERT_TRUE(d);
  d->steps.front().intersection.pop_back();
  EXPECT_FALSE(check_derivation(*d));
}

TEST(Patching, SmallIntersectionFails) {
  // Two copies of P(3,3) overlapping in a single row of three cells: only k
  // cells for k = 3 holes.
  const Board p33 = Board::parallelogram(3, 3);
  const Board b2 = Board::from_cells(shifted(p33, Cell{0, 2}));
  std::vector<Cell> all(p33.cells().begin(), p33.cells().end());
  for (Cell c : b2.cells())
    if (!p33.contains(c)) all.push_back(c);
  const Board target = Board::from_cells(all);
  const BaseCase base = verify_base_case(p33, 3, Claim::maximal);
  ASSERT_TRUE(base.verified);
  std::vector<Cell> inter;
  for (Cell c : p33.cells())
    if (b2.contains(c)) inter.push_back(c);
  ASSERT_EQ(inter.size(), 3u);
  const PatchDerivation d{target, 3, Claim::maximal, {base},
                          {{p33, b2, inter, 3, PatchKind::connectivity}}};
  const DerivationCheck c = check_derivation_detailed(d);
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.problems.empty());

  // The same pair overlapping in two rows passes.
  const Board b3 = Board::from_cells(shifted(p33, Cell{0, 1}));
  std::vector<Cell> all3(p33.cells().begin(), p33.cells().end()), inter3;
  for (Cell x : b3.cells()) {
    if (p33.contains(x))
      inter3.push_back(x);
    else
      all3.push_back(x);
  }
  const PatchDerivation ok{Board::from_cells(all3), 3, Claim::maximal, {base},
                           {{p33, b3, inter3, 3, PatchKind::connectivity}}};
  EXPECT_TRUE(check_derivation(ok)) << check_derivation_detailed(ok).problems.front();
}

TEST(Patching, NoConstructionForSmallTriangle) {
  EXPECT_FALSE(derive_connectivity(Board::triangle(4), 3));
}

TEST(Patching, BaseCases) {
  const BaseCase p = verify_base_case(Board::parallelogram(3, 3), 3, Claim::maximal);
  EXPECT_TRUE(p.verified);
  EXPECT_EQ(p.components, 1);
  const BaseCase t = verify_base_case(Board::triangle(4), 3, Claim::maximal);
  EXPECT_TRUE(t.verified);
  const BaseCase s = verify_base_case(Board::parallelogram(3, 3), 2, Claim::strong_parity);
  EXPECT_FALSE(s.verified);
}

TEST(Patching, MalformedJsonIsRejected) {
  try {
    derivation_from_json(Json::parse(R"({"conclusion":{"h":3}})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::malformed_input);
  }
}
