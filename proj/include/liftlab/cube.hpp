#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "liftlab/rational.hpp"

namespace liftlab {

using IndexSet = std::vector<int>;  // sorted, unique, 0-based coordinates

struct CardCap {
  IndexSet U;
  int r = 1;  // means sum_{i in U} x_i <= r - 1
  friend bool operator==(const CardCap&, const CardCap&) = default;
};

/// Bitset over the 2^n points of {0,1}^n (n <= 20). Point x is encoded as the
/// integer with bit i = x_i.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(int n);

  int n() const { return n_; }
  bool test(std::uint32_t point) const { return (words_[point >> 6] >> (point & 63)) & 1; }
  void set(std::uint32_t point) { words_[point >> 6] |= (std::uint64_t(1) << (point & 63)); }
  bool none() const;
  long count() const;

  AtomSet operator&(const AtomSet& o) const;
  friend bool operator==(const AtomSet&, const AtomSet&) = default;

  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Generalized cube S|_1 ∩ T|_0 ∩ ⋂_j U_j|_{<r_j}, a subset of {0,1}^n.
struct GenCube {
  int n = 0;
  IndexSet S;  // coordinates fixed to 1
  IndexSet T;  // coordinates fixed to 0
  std::vector<CardCap> caps;
  bool empty = false;  // set by normalize() when the cube denotes the empty set

  static GenCube full(int n) { return GenCube{n, {}, {}, {}, false}; }
  static GenCube fixed(int n, const IndexSet& ones, const IndexSet& zeros);
  static GenCube one(int n, int i) { return fixed(n, {i}, {}); }
  static GenCube zero(int n, int i) { return fixed(n, {}, {i}); }
  static GenCube capped(int n, const IndexSet& ones, const IndexSet& zeros, const IndexSet& U,
                        int r);

  bool is_full() const { return !empty && S.empty() && T.empty() && caps.empty(); }
  bool contains_point(std::uint32_t x) const;  // n <= 20 callers
  std::string text() const;                    // canonical text form

  friend bool operator==(const GenCube&, const GenCube&) = default;
};

/// Normalizes in place: sorts index sets, substitutes fixed coordinates out of
/// caps, promotes forced caps to fixings, detects emptiness.
GenCube normalize(GenCube c);

GenCube cube_intersect(const GenCube& a, const GenCube& b);
bool cube_is_empty(const GenCube& a);
AtomSet cube_atoms(const GenCube& a);  // n <= 20

constexpr int kAtomLimit = 20;

/// Canonical identifier of a subset of {0,1}^n arising as a cube intersection.
/// Exact (atom-based) for n <= kAtomLimit, syntactic-canonical otherwise.
struct EntryKey {
  bool empty = true;
  std::size_t h = 0;
  std::vector<std::uint64_t> atom_words;  // exact mode
  std::string syntactic;                  // fallback mode

  friend bool operator==(const EntryKey&, const EntryKey&) = default;
};

struct EntryKeyHash {
  std::size_t operator()(const EntryKey& k) const { return k.h; }
};

EntryKey entry_key(const GenCube& a, const GenCube& b);
EntryKey cube_key(const GenCube& a);

/// Ordered, semantically deduplicated family of generalized cubes.
class IndexFamily {
 public:
  explicit IndexFamily(int n) : n_(n) {}

  int n() const { return n_; }
  int size() const { return int(cubes_.size()); }
  const GenCube& operator[](int i) const { return cubes_[i]; }
  const std::vector<GenCube>& cubes() const { return cubes_; }

  /// Adds a nonempty cube if not semantically present; returns its index, or
  /// -1 for empty cubes.
  int add(const GenCube& c);
  std::optional<int> find(const GenCube& c) const;

  bool contains_full() const { return find(GenCube::full(n_)).has_value(); }

 private:
  int n_;
  std::vector<GenCube> cubes_;
  std::unordered_map<EntryKey, int, EntryKeyHash> dedup_;
};

/// A_l (plus_only = false) or A_l^+ (plus_only = true), deduplicated, F first.
IndexFamily gen_A(int n, int level, bool plus_only = false);

/// x_hat = (y_F, y_{1|1}, ..., y_{n|1}) for a vector indexed by `fam`.
RatVector x_hat(const RatVector& y, const IndexFamily& fam);

/// The 0/1 rank-<=1 certificate matrix Y^x restricted to the given families.
RatMatrix integral_certificate(std::uint32_t x, const IndexFamily& rows, const IndexFamily& cols);
std::uint32_t point_from_vector(const RatVector& x);  // x must be 0/1

/// One matrix (or vector) whose entries are indexed by cube pairs.
struct IndexedMatrix {
  IndexFamily rows;
  IndexFamily cols;
  RatMatrix entries;  // rows.size() x cols.size()
};

/// Measure consistency: is there one signed atom weighting of {0,1}^n giving
/// all entries of both matrices simultaneously? Self-application is (OMC).
bool check_consistency(const IndexedMatrix& y1, const IndexedMatrix& y2);
bool check_omc(const IndexedMatrix& y);
/// Every row and column of y satisfies (OMC) individually.
bool check_rcmc(const IndexedMatrix& y);

}  // namespace liftlab
