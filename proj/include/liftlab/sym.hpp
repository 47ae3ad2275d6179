#pragma once

#include <vector>

#include "liftlab/cube.hpp"
#include "liftlab/rational.hpp"

namespace liftlab {

using Perm = std::vector<int>;  // perm[i] = image of coordinate i

/// Permutation group on [n] given by generators; elements enumerated by
/// closure (bounded).
struct SymmetryGroup {
  int n = 0;
  std::vector<Perm> generators;

  static SymmetryGroup trivial(int n) { return SymmetryGroup{n, {}}; }
  static SymmetryGroup cyclic(int n);
  /// Product of full symmetric groups on the given blocks.
  static SymmetryGroup symmetric_blocks(int n, const std::vector<IndexSet>& blocks);

  std::vector<Perm> elements(std::size_t cap = 200000) const;
  bool fixes_vector(const RatVector& v) const;
  /// One long cycle (length n) exists among the elements.
  bool has_full_cycle(std::size_t cap = 200000) const;
};

GenCube apply_perm(const Perm& g, const GenCube& c);
Perm compose(const Perm& g, const Perm& h);  // (g∘h)(i) = g[h[i]]

}  // namespace liftlab
