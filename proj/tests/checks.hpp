#pragma once

// Ground-truth comparisons shared by the unit tests and the acceptance run.

#include <map>
#include <random>
#include <string>
#include <unordered_map>

#include "hexslide/theorems.hpp"
#include "oracles.hpp"

namespace checks {

using namespace hexslide;

struct Agreement {
  long pairs = 0;
  long agree = 0;
  long by_rule = 0;   // settled without search
  long fallback = 0;  // needed the search
  std::string first_mismatch;
};

// Rules first; the search only when no rule settles the pair.
inline SolvabilityVerdict decide(const Configuration& a, const Configuration& b, Agreement& tally) {
  DecideOptions no_search;
  no_search.allow_bfs_fallback = false;
  SolvabilityVerdict v = decide_solvable(a, b, no_search);
  if (v.decision != Decision::unknown) {
    ++tally.by_rule;
    return v;
  }
  ++tally.fallback;
  return decide_solvable(a, b);
}

inline void record(Agreement& tally, const Configuration& a, const Configuration& b,
                   bool same_component) {
  const SolvabilityVerdict v = decide(a, b, tally);
  ++tally.pairs;
  const bool ok = v.decision == (same_component ? Decision::solvable : Decision::unsolvable);
  if (ok) {
    ++tally.agree;
  } else if (tally.first_mismatch.empty()) {
    tally.first_mismatch = a.board().name() + ": rule " + v.rule + " said " +
                           std::string(to_string(v.decision));
  }
}

// Every non-isolated configuration against one representative of every
// component. Membership is transitive, so this covers all pairs.
inline Agreement full_enumeration(const Board& board, int h) {
  const auto ids = oracle::component_ids(board, h);
  std::map<int, std::string> reps;
  for (const auto& [enc, id] : ids) {
    auto it = reps.find(id);
    if (it == reps.end() || enc < it->second) reps[id] = enc;
  }
  Agreement tally;
  for (const auto& [enc, id] : ids) {
    const Configuration a = oracle::from_encoding(board, enc);
    for (const auto& [rid, renc] : reps)
      record(tally, a, oracle::from_encoding(board, renc), id == rid);
  }
  return tally;
}

// Component labels filled in lazily by oracle BFS.
class LazyComponents {
 public:
  explicit LazyComponents(Board board) : board_(std::move(board)) {}
  int id(const Configuration& c) {
    auto it = ids_.find(c.encoding());
    if (it != ids_.end()) return it->second;
    const int id = next_++;
    for (auto& [enc, d] : oracle::bfs(board_, c.encoding()).dist) ids_[enc] = id;
    return id;
  }
  int components_seen() const { return next_; }

 private:
  Board board_;
  std::unordered_map<std::string, int> ids_;
  int next_ = 0;
};

inline Agreement random_pairs(const Board& board, int h, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  LazyComponents truth(board);
  Agreement tally;
  for (int i = 0; i < count; ++i) {
    const Configuration a = oracle::random_configuration(board, h, rng);
    Configuration b = oracle::random_configuration(board, h, rng);
    // Half of the pairs are forced into one component by a random walk.
    if (i % 2 == 0) {
      b = a;
      for (int s = 0; s < 60; ++s) {
        const auto moves = legal_moves(b);
        b = apply_move(b, moves[rng() % moves.size()]);
      }
    }
    record(tally, a, b, truth.id(a) == truth.id(b));
  }
  return tally;
}

}  // namespace checks
