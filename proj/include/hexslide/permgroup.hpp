#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hexslide/bigint.hpp"

namespace hexslide {

// Permutation of 0..n-1 in one-line form: p[i] is the image of i.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& f, const Perm& g);  // f after g
Perm inverse(const Perm& p);

// Permutation group given by generators, stored as a stabiliser chain built
// with the Schreier-Sims procedure (base 0, 1, ..., n-1).
class PermGroup {
 public:
  explicit PermGroup(int degree);

  int degree() const { return n_; }
  void add_generator(const Perm& g);
  bool contains(const Perm& g) const;
  BigInt order() const;

 private:
  // transversal_[k][j]: element fixing 0..k-1 and sending k to j.
  std::vector<std::vector<std::optional<Perm>>> transversal_;
  std::vector<std::vector<Perm>> generators_;
  int n_;

  void add_at(int level, const Perm& g);
  void extend(int level, const Perm& t);
  bool sifts(int level, Perm g) const;
};

}  // namespace hexslide
