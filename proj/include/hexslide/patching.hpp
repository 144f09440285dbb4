#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hexslide/bigint.hpp"
#include "hexslide/hexboard.hpp"
#include "hexslide/puzzlegraph.hpp"

namespace hexslide {

// maximal: one component holds every non-isolated configuration (h >= 3).
// strong_parity: two holes, exactly two such components.
enum class Claim { maximal, strong_parity };
std::string_view to_string(Claim c);
std::optional<Claim> parse_claim(std::string_view s);

enum class PatchKind { connectivity, parity };
std::string_view to_string(PatchKind k);
std::optional<PatchKind> parse_patch_kind(std::string_view s);

// A claim established by exhaustive search, with the numbers it rests on.
struct BaseCase {
  Board board;
  int h = 0;
  Claim claim = Claim::maximal;
  std::uint64_t component_size = 0;
  BigInt components;
  bool verified = false;
};

// b1 and b2 each carry the claim (by congruence with an earlier result);
// their union inherits it.
struct PatchStep {
  Board b1;
  Board b2;
  std::vector<Cell> intersection;
  int k = 0;
  PatchKind kind = PatchKind::connectivity;
};

struct PatchDerivation {
  Board target;
  int h = 0;
  Claim claim = Claim::maximal;
  std::vector<BaseCase> base_cases;
  std::vector<PatchStep> steps;
};

// Derives the claim for (board, h): maximal for h >= 3, strong parity for
// h = 2. Base cases are settled by BFS. nullopt when no construction is
// known (the board may still be settled by BFS directly). Throws
// hypotheses_violated if a generated step fails its own checks.
std::optional<PatchDerivation> derive_connectivity(const Board& board, int h,
                                                   const SearchOptions& options = {});

struct DerivationCheck {
  bool ok = false;
  std::vector<std::string> problems;
};

// Re-checks every step's geometry and every base-case record without
// running any search.
DerivationCheck check_derivation_detailed(const PatchDerivation& d);
bool check_derivation(const PatchDerivation& d);

// Runs the BFS behind a base case.
BaseCase verify_base_case(const Board& board, int h, Claim claim,
                          const SearchOptions& options = {});

}  // namespace hexslide
