#include "liftlab/sym.hpp"

#include <algorithm>
#include <set>

namespace liftlab {

SymmetryGroup SymmetryGroup::cyclic(int n) {
  Perm g(n);
  for (int i = 0; i < n; ++i) g[i] = (i + 1) % n;
  return SymmetryGroup{n, {g}};
}

SymmetryGroup SymmetryGroup::symmetric_blocks(int n, const std::vector<IndexSet>& blocks) {
  SymmetryGroup s{n, {}};
  for (const IndexSet& b : blocks) {
    if (b.size() < 2) continue;
    // Adjacent transposition and block cycle generate Sym(block).
    Perm t(n), c(n);
    for (int i = 0; i < n; ++i) t[i] = c[i] = i;
    t[b[0]] = b[1];
    t[b[1]] = b[0];
    for (std::size_t i = 0; i < b.size(); ++i) c[b[i]] = b[(i + 1) % b.size()];
    s.generators.push_back(t);
    s.generators.push_back(c);
  }
  return s;
}

Perm compose(const Perm& g, const Perm& h) {
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = g[h[i]];
  return r;
}

std::vector<Perm> SymmetryGroup::elements(std::size_t cap) const {
  Perm id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::set<Perm> seen{id};
  std::vector<Perm> queue{id};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const Perm& g : generators) {
      Perm next = compose(g, queue[q]);
      if (seen.insert(next).second) {
        queue.push_back(next);
        if (queue.size() > cap) throw Error("symmetry group closure exceeds cap");
      }
    }
  }
  return queue;
}

bool SymmetryGroup::fixes_vector(const RatVector& v) const {
  for (const Perm& g : generators)
    for (int i = 0; i < n; ++i)
      if (v[g[i]] != v[i]) return false;
  return true;
}

bool SymmetryGroup::has_full_cycle(std::size_t cap) const {
  for (const Perm& g : elements(cap)) {
    std::vector<bool> vis(n, false);
    int len = 0;
    int i = 0;
    while (!vis[i]) {
      vis[i] = true;
      ++len;
      i = g[i];
    }
    if (len == n) return true;
  }
  return false;
}

GenCube apply_perm(const Perm& g, const GenCube& c) {
  GenCube out;
  out.n = c.n;
  out.empty = c.empty;
  for (int i : c.S) out.S.push_back(g[i]);
  for (int i : c.T) out.T.push_back(g[i]);
  for (const CardCap& cap : c.caps) {
    CardCap nc;
    nc.r = cap.r;
    for (int i : cap.U) nc.U.push_back(g[i]);
    out.caps.push_back(std::move(nc));
  }
  return normalize(out);
}

}  // namespace liftlab
