#include "hexslide/permgroup.hpp"

#include <numeric>

namespace hexslide {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose(const Perm& f, const Perm& g) {
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f[g[i]];
  return out;
}

Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<int>(i);
  return out;
}

PermGroup::PermGroup(int degree)
    : transversal_(degree), generators_(degree), n_(degree) {
  for (int k = 0; k < n_; ++k) {
    transversal_[k].resize(n_);
    transversal_[k][k] = identity_perm(n_);
  }
}

// Knuth's formulation: add_at(k, g) adds g to the generators of the k-th
// stabiliser, extend(k, t) files t under its image of k and recurses into
// the next stabiliser with the sifted residue.
bool PermGroup::sifts(int level, Perm g) const {
  for (int k = level; k < n_; ++k) {
    const int j = g[k];
    if (!transversal_[k][j]) return false;
    if (j != k) g = compose(inverse(*transversal_[k][j]), g);
  }
  return true;
}

void PermGroup::add_at(int level, const Perm& g) {
  if (level >= n_ || sifts(level, g)) return;
  generators_[level].push_back(g);
  // Snapshot: extend() may fill new transversal slots while we iterate.
  std::vector<Perm> reps;
  for (const auto& t : transversal_[level])
    if (t) reps.push_back(*t);
  for (const Perm& t : reps) extend(level, compose(g, t));
}

void PermGroup::extend(int level, const Perm& t) {
  const int j = t[level];
  if (!transversal_[level][j]) {
    transversal_[level][j] = t;
    const auto gens = generators_[level];
    for (const Perm& s : gens) extend(level, compose(s, t));
  } else {
    add_at(level + 1, compose(inverse(*transversal_[level][j]), t));
  }
}

void PermGroup::add_generator(const Perm& g) { add_at(0, g); }

bool PermGroup::contains(const Perm& g) const {
  return static_cast<int>(g.size()) == n_ && sifts(0, g);
}

BigInt PermGroup::order() const {
  BigInt out = 1;
  for (int k = 0; k < n_; ++k) {
    int orbit = 0;
    for (const auto& t : transversal_[k])
      if (t) ++orbit;
    out *= orbit;
  }
  return out;
}

}  // namespace hexslide
