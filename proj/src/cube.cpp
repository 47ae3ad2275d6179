#include "liftlab/cube.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace liftlab {

AtomSet::AtomSet(int n) : n_(n) {
  if (n < 0 || n > kAtomLimit) throw Error("atom expansion limited to n <= 20");
  words_.assign((std::size_t(1) << n) <= 64 ? 1 : (std::size_t(1) << (n - 6)), 0);
}

bool AtomSet::none() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

long AtomSet::count() const {
  long c = 0;
  for (auto w : words_) c += __builtin_popcountll(w);
  return c;
}

AtomSet AtomSet::operator&(const AtomSet& o) const {
  if (n_ != o.n_) throw Error("AtomSet dimension mismatch");
  AtomSet r(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
  return r;
}

std::size_t AtomSet::hash() const {
  std::size_t h = 1469598103934665603ULL ^ std::size_t(n_);
  for (auto w : words_) h = (h ^ w) * 1099511628211ULL;
  return h;
}

static void sort_unique(IndexSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

static bool intersects(const IndexSet& a, const IndexSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return false;
}

GenCube GenCube::fixed(int n, const IndexSet& ones, const IndexSet& zeros) {
  return normalize(GenCube{n, ones, zeros, {}, false});
}

GenCube GenCube::capped(int n, const IndexSet& ones, const IndexSet& zeros, const IndexSet& U,
                        int r) {
  return normalize(GenCube{n, ones, zeros, {CardCap{U, r}}, false});
}

bool GenCube::contains_point(std::uint32_t x) const {
  if (empty) return false;
  for (int i : S)
    if (!((x >> i) & 1)) return false;
  for (int i : T)
    if ((x >> i) & 1) return false;
  for (const CardCap& c : caps) {
    int s = 0;
    for (int i : c.U) s += (x >> i) & 1;
    if (s > c.r - 1) return false;
  }
  return true;
}

std::string GenCube::text() const {
  if (empty) return "Empty";
  std::ostringstream os;
  auto put_set = [&os](const IndexSet& s) {
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
    os << "}";
  };
  os << "S=";
  put_set(S);
  os << " T=";
  put_set(T);
  os << " caps=[";
  for (std::size_t c = 0; c < caps.size(); ++c) {
    if (c) os << ",";
    os << "(";
    put_set(caps[c].U);
    os << "," << caps[c].r << ")";
  }
  os << "]";
  return os.str();
}

GenCube normalize(GenCube c) {
  for (int i : c.S)
    if (i < 0 || i >= c.n) throw Error("cube index out of range");
  for (int i : c.T)
    if (i < 0 || i >= c.n) throw Error("cube index out of range");
  if (c.empty) {
    c.S.clear();
    c.T.clear();
    c.caps.clear();
    return c;
  }
  sort_unique(c.S);
  sort_unique(c.T);
  auto make_empty = [&c] {
    c.empty = true;
    c.S.clear();
    c.T.clear();
    c.caps.clear();
    return c;
  };
  if (intersects(c.S, c.T)) return make_empty();

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<CardCap> kept;
    for (CardCap cap : c.caps) {
      sort_unique(cap.U);
      IndexSet u2;
      int ones = 0;
      for (int i : cap.U) {
        if (i < 0 || i >= c.n) throw Error("cube cap index out of range");
        if (std::binary_search(c.S.begin(), c.S.end(), i)) {
          ++ones;
        } else if (!std::binary_search(c.T.begin(), c.T.end(), i)) {
          u2.push_back(i);
        }
      }
      int r2 = cap.r - ones;
      if (r2 <= 0) return make_empty();
      if (int(u2.size()) <= r2 - 1) continue;  // trivially satisfied
      if (r2 == 1) {
        // All of u2 forced to zero.
        for (int i : u2) c.T.push_back(i);
        sort_unique(c.T);
        if (intersects(c.S, c.T)) return make_empty();
        changed = true;
        continue;
      }
      kept.push_back(CardCap{std::move(u2), r2});
    }
    c.caps = std::move(kept);
  }

  // Deduplicate and drop subsumed caps: (U1, r1) is implied by (U2, r2) when
  // U1 is a superset of U2 with r1 >= r2 + |U1 \ U2|... conservatively we only
  // drop exact-same-U duplicates and subset caps with smaller-or-equal r.
  std::sort(c.caps.begin(), c.caps.end(), [](const CardCap& a, const CardCap& b) {
    if (a.U != b.U) return a.U < b.U;
    return a.r < b.r;
  });
  std::vector<CardCap> out;
  for (const CardCap& cap : c.caps) {
    bool implied = false;
    for (const CardCap& other : c.caps) {
      if (&other == &cap) continue;
      // other implies cap if other.U subset of cap.U and other.r - 1 <= cap.r - 1
      if (other.U.size() <= cap.U.size() && other.r <= cap.r &&
          std::includes(cap.U.begin(), cap.U.end(), other.U.begin(), other.U.end())) {
        if (other.U == cap.U && other.r == cap.r && &other > &cap) continue;  // keep one copy
        implied = true;
        break;
      }
    }
    if (!implied) out.push_back(cap);
  }
  c.caps = std::move(out);
  return c;
}

GenCube cube_intersect(const GenCube& a, const GenCube& b) {
  if (a.n != b.n) throw Error("cube dimension mismatch");
  if (a.empty || b.empty) {
    GenCube e;
    e.n = a.n;
    e.empty = true;
    return e;
  }
  GenCube c;
  c.n = a.n;
  c.S = a.S;
  c.S.insert(c.S.end(), b.S.begin(), b.S.end());
  c.T = a.T;
  c.T.insert(c.T.end(), b.T.begin(), b.T.end());
  c.caps = a.caps;
  c.caps.insert(c.caps.end(), b.caps.begin(), b.caps.end());
  return normalize(c);
}

bool cube_is_empty(const GenCube& a) { return normalize(a).empty; }

AtomSet cube_atoms(const GenCube& a) {
  if (a.n > kAtomLimit) throw Error("atom expansion limited to n <= 20");
  AtomSet s(a.n);
  if (a.empty) return s;
  const std::uint32_t total = std::uint32_t(1) << a.n;
  for (std::uint32_t x = 0; x < total; ++x)
    if (a.contains_point(x)) s.set(x);
  return s;
}

EntryKey cube_key(const GenCube& a) {
  GenCube c = normalize(a);
  EntryKey k;
  if (c.empty) return k;
  if (c.n <= kAtomLimit) {
    AtomSet at = cube_atoms(c);
    if (at.none()) return k;
    k.empty = false;
    k.atom_words = at.words();
    k.h = at.hash();
  } else {
    k.empty = false;
    k.syntactic = c.text();
    k.h = std::hash<std::string>{}(k.syntactic);
  }
  return k;
}

EntryKey entry_key(const GenCube& a, const GenCube& b) {
  if (a.n != b.n) throw Error("cube dimension mismatch");
  if (a.n <= kAtomLimit) {
    if (a.empty || b.empty) return EntryKey{};
    AtomSet at = cube_atoms(normalize(a)) & cube_atoms(normalize(b));
    EntryKey k;
    if (at.none()) return k;
    k.empty = false;
    k.atom_words = at.words();
    k.h = at.hash();
    return k;
  }
  return cube_key(cube_intersect(a, b));
}

int IndexFamily::add(const GenCube& c) {
  GenCube nc = normalize(c);
  if (nc.n != n_) throw Error("family dimension mismatch");
  if (nc.empty) return -1;
  EntryKey k = cube_key(nc);
  auto it = dedup_.find(k);
  if (it != dedup_.end()) return it->second;
  cubes_.push_back(nc);
  dedup_.emplace(std::move(k), int(cubes_.size()) - 1);
  return int(cubes_.size()) - 1;
}

std::optional<int> IndexFamily::find(const GenCube& c) const {
  GenCube nc = normalize(c);
  if (nc.empty) return std::nullopt;
  auto it = dedup_.find(cube_key(nc));
  if (it == dedup_.end()) return std::nullopt;
  return it->second;
}

static void enum_subsets(int n, int maxk, const std::function<void(const IndexSet&)>& fn) {
  IndexSet cur;
  std::function<void(int)> rec = [&](int start) {
    fn(cur);
    if (int(cur.size()) == maxk) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

IndexFamily gen_A(int n, int level, bool plus_only) {
  if (level < 0 || level > n) throw Error("gen_A: level out of range");
  IndexFamily fam(n);
  fam.add(GenCube::full(n));
  enum_subsets(n, level, [&](const IndexSet& w) {
    if (w.empty()) return;
    if (plus_only) {
      fam.add(GenCube::fixed(n, w, {}));
      return;
    }
    int k = int(w.size());
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << k); ++mask) {
      IndexSet ones, zeros;
      for (int b = 0; b < k; ++b)
        ((mask >> b) & 1 ? zeros : ones).push_back(w[b]);
      fam.add(GenCube::fixed(n, ones, zeros));
    }
  });
  return fam;
}

RatVector x_hat(const RatVector& y, const IndexFamily& fam) {
  if (y.size() != std::size_t(fam.size())) throw Error("x_hat: dimension mismatch");
  int n = fam.n();
  auto f = fam.find(GenCube::full(n));
  if (!f) throw Error("x_hat: family lacks F");
  RatVector out(n + 1);
  out[0] = y[*f];
  for (int i = 0; i < n; ++i) {
    auto idx = fam.find(GenCube::one(n, i));
    if (!idx) throw Error("x_hat: family lacks a singleton one-cube");
    out[i + 1] = y[*idx];
  }
  return out;
}

std::uint32_t point_from_vector(const RatVector& x) {
  std::uint32_t p = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1)
      p |= std::uint32_t(1) << i;
    else if (x[i] != 0)
      throw Error("point_from_vector: vector is not 0/1");
  }
  return p;
}

RatMatrix integral_certificate(std::uint32_t x, const IndexFamily& rows, const IndexFamily& cols) {
  RatMatrix m(rows.size(), cols.size());
  for (int i = 0; i < rows.size(); ++i) {
    if (!rows[i].contains_point(x)) continue;
    for (int j = 0; j < cols.size(); ++j)
      if (cols[j].contains_point(x)) m.at(i, j) = 1;
  }
  return m;
}

namespace {

// Shared feasibility core: entries are sums of one signed atom weighting.
struct MeasureSystem {
  std::vector<const GenCube*> cubes;
  int n = 0;

  int add_cube(const GenCube& c) {
    cubes.push_back(&c);
    return int(cubes.size()) - 1;
  }
};

bool measure_feasible(const std::vector<std::pair<std::pair<int, int>, Rational>>& entries,
                      const std::vector<const GenCube*>& cubes, int n) {
  if (n > kAtomLimit) throw Error("consistency check: n too large for atom expansion");
  // Group atoms by their membership signature over all cubes.
  const std::uint32_t total = std::uint32_t(1) << n;
  std::map<std::vector<bool>, int> classes;
  std::vector<std::vector<bool>> class_sig;
  for (std::uint32_t x = 0; x < total; ++x) {
    std::vector<bool> sig(cubes.size());
    for (std::size_t c = 0; c < cubes.size(); ++c) sig[c] = cubes[c]->contains_point(x);
    if (!classes.count(sig)) {
      classes.emplace(sig, int(class_sig.size()));
      class_sig.push_back(sig);
    }
  }
  int ncls = int(class_sig.size());
  // Rows: one per entry; columns: classes; augmented with the value.
  std::vector<RatVector> rows;
  rows.reserve(entries.size());
  for (const auto& [cube_pair, val] : entries) {
    RatVector row(ncls + 1, Rational(0));
    for (int c = 0; c < ncls; ++c)
      if (class_sig[c][cube_pair.first] && class_sig[c][cube_pair.second]) row[c] = 1;
    row[ncls] = val;
    rows.push_back(std::move(row));
  }
  // Gaussian elimination; infeasible iff a row reduces to 0 = nonzero.
  std::size_t rank_col = 0;
  std::size_t rr = 0;
  for (rank_col = 0; rank_col < std::size_t(ncls) && rr < rows.size(); ++rank_col) {
    std::size_t piv = rr;
    while (piv < rows.size() && rows[piv][rank_col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rr], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rr || rows[i][rank_col] == 0) continue;
      Rational f = rows[i][rank_col] / rows[rr][rank_col];
      for (std::size_t j = rank_col; j <= std::size_t(ncls); ++j) rows[i][j] -= f * rows[rr][j];
    }
    ++rr;
  }
  for (std::size_t i = rr; i < rows.size(); ++i) {
    bool allzero = true;
    for (int j = 0; j < ncls; ++j)
      if (rows[i][j] != 0) {
        allzero = false;
        break;
      }
    if (allzero && rows[i][ncls] != 0) return false;
  }
  return true;
}

void collect(const IndexedMatrix& y, MeasureSystem& sys,
             std::vector<std::pair<std::pair<int, int>, Rational>>& entries,
             std::vector<int>& row_ids, std::vector<int>& col_ids) {
  row_ids.clear();
  col_ids.clear();
  for (int i = 0; i < y.rows.size(); ++i) row_ids.push_back(sys.add_cube(y.rows[i]));
  for (int j = 0; j < y.cols.size(); ++j) col_ids.push_back(sys.add_cube(y.cols[j]));
  for (int i = 0; i < y.rows.size(); ++i)
    for (int j = 0; j < y.cols.size(); ++j)
      entries.push_back({{row_ids[i], col_ids[j]}, y.entries.at(i, j)});
}

}  // namespace

bool check_consistency(const IndexedMatrix& y1, const IndexedMatrix& y2) {
  if (y1.rows.n() != y2.rows.n()) throw Error("consistency: dimension mismatch");
  if (y1.entries.rows() != y1.rows.size() || y1.entries.cols() != y1.cols.size() ||
      y2.entries.rows() != y2.rows.size() || y2.entries.cols() != y2.cols.size())
    throw Error("consistency: entry shape mismatch");
  MeasureSystem sys;
  sys.n = y1.rows.n();
  std::vector<std::pair<std::pair<int, int>, Rational>> entries;
  std::vector<int> r1, c1, r2, c2;
  collect(y1, sys, entries, r1, c1);
  collect(y2, sys, entries, r2, c2);
  return measure_feasible(entries, sys.cubes, sys.n);
}

bool check_omc(const IndexedMatrix& y) { return check_consistency(y, y); }

bool check_rcmc(const IndexedMatrix& y) {
  for (int i = 0; i < y.rows.size(); ++i) {
    IndexedMatrix row{IndexFamily(y.rows.n()), y.cols, RatMatrix(1, y.cols.size())};
    row.rows.add(y.rows[i]);
    for (int j = 0; j < y.cols.size(); ++j) row.entries.at(0, j) = y.entries.at(i, j);
    if (!check_omc(row)) return false;
  }
  for (int j = 0; j < y.cols.size(); ++j) {
    IndexedMatrix col{y.rows, IndexFamily(y.cols.n()), RatMatrix(y.rows.size(), 1)};
    col.cols.add(y.cols[j]);
    for (int i = 0; i < y.rows.size(); ++i) col.entries.at(i, 0) = y.entries.at(i, j);
    if (!check_omc(col)) return false;
  }
  return true;
}

}  // namespace liftlab
