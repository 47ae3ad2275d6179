#include <random>

#include "doctest.h"
#include "liftlab/cube.hpp"

using namespace liftlab;

TEST_CASE("intersection basics") {
  int n = 3;
  GenCube one1 = GenCube::one(n, 0);
  GenCube zero1 = GenCube::zero(n, 0);
  CHECK(cube_intersect(one1, zero1).empty);

  GenCube f = GenCube::full(n);
  GenCube mixed = GenCube::fixed(n, {0, 2}, {1});
  CHECK(cube_intersect(mixed, f) == mixed);

  // (1|1) ∩ ({2,3}|<2): atoms {100, 110, 101} for n=3 (oracle: enumerate all 8 points)
  GenCube cap23 = GenCube::capped(n, {}, {}, {1, 2}, 2);
  GenCube got = cube_intersect(one1, cap23);
  AtomSet expect(n);
  for (std::uint32_t x = 0; x < 8; ++x) {
    bool in = ((x & 1) == 1) && (int((x >> 1) & 1) + int((x >> 2) & 1) <= 1);
    if (in) expect.set(x);
  }
  CHECK(cube_atoms(got) == expect);
  CHECK(expect.count() == 3);
}

TEST_CASE("emptiness") {
  CHECK(cube_is_empty(GenCube{2, {0}, {0}, {}, false}));
  // S={1,2} with cap ({1,2}, 2) forces sum = 2 <= 1 (oracle: enumeration).
  GenCube c{3, {0, 1}, {}, {CardCap{{0, 1}, 2}}, false};
  bool oracle_empty = true;
  for (std::uint32_t x = 0; x < 8; ++x) {
    GenCube raw{3, {0, 1}, {}, {CardCap{{0, 1}, 2}}, false};
    if (raw.contains_point(x)) oracle_empty = false;
  }
  CHECK(oracle_empty);
  CHECK(cube_is_empty(c));
  GenCube all_small{3, {}, {}, {CardCap{{0, 1, 2}, 1}}, false};
  CHECK_FALSE(cube_is_empty(all_small));  // the all-zeros point survives
  // A cap with r=1 is the same set as fixing to zero.
  CHECK(cube_key(normalize(all_small)) == cube_key(GenCube::fixed(3, {}, {0, 1, 2})));
}

TEST_CASE("random cubes: normalize-emptiness equals atom emptiness") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + int(rng() % 9);  // up to 10
    GenCube c;
    c.n = n;
    for (int i = 0; i < n; ++i) {
      int roll = int(rng() % 4);
      if (roll == 0) c.S.push_back(i);
      if (roll == 1) c.T.push_back(i);
    }
    int caps = int(rng() % 3);
    for (int k = 0; k < caps; ++k) {
      CardCap cap;
      for (int i = 0; i < n; ++i)
        if (rng() % 2) cap.U.push_back(i);
      cap.r = 1 + int(rng() % (n + 1));
      if (!cap.U.empty()) c.caps.push_back(cap);
    }
    GenCube nc = normalize(c);
    bool atom_empty = nc.empty || cube_atoms(nc).none();
    bool raw_empty = true;
    for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x)
      if (c.contains_point(x)) raw_empty = false;
    CHECK(cube_is_empty(c) == raw_empty);
    CHECK(atom_empty == raw_empty);
  }
}

TEST_CASE("families A_l and A_l+") {
  IndexFamily a1p = gen_A(2, 1, true);
  CHECK(a1p.size() == 3);  // {F, 1|1, 2|1}
  IndexFamily a1 = gen_A(2, 1);
  CHECK(a1.size() == 5);
  IndexFamily a2 = gen_A(3, 2);
  CHECK(a2.size() == 19);  // 1 + 6 + 12

  for (int n = 1; n <= 6; ++n) {
    for (int l = 0; l <= n; ++l) {
      long expect = 0, expect_plus = 0, binom = 1, pow2 = 1;
      for (int i = 0; i <= l; ++i) {
        expect += binom * pow2;
        expect_plus += binom;
        binom = binom * (n - i) / (i + 1);
        pow2 *= 2;
      }
      CHECK(gen_A(n, l).size() == expect);
      CHECK(gen_A(n, l, true).size() == expect_plus);
    }
  }
  CHECK(a2[0].is_full());
}

TEST_CASE("entry keys implement the identification rules") {
  int n = 3;
  GenCube f = GenCube::full(n);
  GenCube i1 = GenCube::one(n, 0);
  CHECK(entry_key(f, i1) == entry_key(i1, i1));
  CHECK(entry_key(i1, GenCube::zero(n, 0)).empty);
  CHECK(entry_key(GenCube::one(n, 0), GenCube::one(n, 1)) ==
        entry_key(GenCube::one(n, 1), GenCube::one(n, 0)));

  // Exhaustive on A_2 x A_2: equal keys iff equal atom sets of the intersection.
  IndexFamily a2 = gen_A(3, 2);
  for (int i = 0; i < a2.size(); ++i)
    for (int j = 0; j < a2.size(); ++j) {
      AtomSet ai = cube_atoms(a2[i]);
      AtomSet aj = cube_atoms(a2[j]);
      EntryKey k = entry_key(a2[i], a2[j]);
      AtomSet meet = ai & aj;
      CHECK(k.empty == meet.none());
      if (!k.empty) CHECK(k.atom_words == meet.words());
    }
}

TEST_CASE("cube algebra: commutative, associative, F identity, Empty absorbing") {
  IndexFamily a2 = gen_A(3, 2);
  for (int i = 0; i < a2.size(); ++i)
    for (int j = 0; j < a2.size(); ++j) {
      GenCube ij = cube_intersect(a2[i], a2[j]);
      GenCube ji = cube_intersect(a2[j], a2[i]);
      CHECK(cube_key(ij) == cube_key(ji));
      for (int k = 0; k < a2.size(); k += 5) {
        GenCube lhs = cube_intersect(ij, a2[k]);
        GenCube rhs = cube_intersect(a2[i], cube_intersect(a2[j], a2[k]));
        CHECK(cube_key(lhs) == cube_key(rhs));
      }
    }
  GenCube f = GenCube::full(3);
  for (int i = 0; i < a2.size(); ++i)
    CHECK(cube_key(cube_intersect(a2[i], f)) == cube_key(a2[i]));
  GenCube empty = cube_intersect(GenCube::one(3, 0), GenCube::zero(3, 0));
  for (int i = 0; i < a2.size(); ++i) CHECK(cube_intersect(empty, a2[i]).empty);
}

TEST_CASE("x_hat") {
  IndexFamily a1 = gen_A(2, 1);
  RatVector y(a1.size(), rat(0));
  y[*a1.find(GenCube::full(2))] = 1;
  y[*a1.find(GenCube::one(2, 0))] = rat(1, 3);
  y[*a1.find(GenCube::one(2, 1))] = rat(2, 3);
  RatVector x = x_hat(y, a1);
  CHECK(x == RatVector{rat(1), rat(1, 3), rat(2, 3)});
  RatVector zero(a1.size(), rat(0));
  RatVector xz = x_hat(zero, a1);
  CHECK(xz == RatVector(3, rat(0)));
  IndexFamily missing(2);
  missing.add(GenCube::full(2));
  CHECK_THROWS_AS(x_hat(RatVector(1, rat(1)), missing), Error);
}

TEST_CASE("integral certificates") {
  IndexFamily a1p = gen_A(2, 1, true);
  // x = e1: direct evaluation of the indicator outer product.
  RatMatrix m = integral_certificate(1u, a1p, a1p);
  RatMatrix expect(3, 3);
  expect.at(0, 0) = expect.at(0, 1) = expect.at(1, 0) = expect.at(1, 1) = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(m.at(i, j) == expect.at(i, j));

  IndexFamily a1 = gen_A(2, 1);
  RatMatrix z = integral_certificate(0u, a1, a1);
  for (int i = 0; i < a1.size(); ++i)
    for (int j = 0; j < a1.size(); ++j)
      CHECK(z.at(i, j) == (a1[i].contains_point(0) && a1[j].contains_point(0) ? 1 : 0));
}

TEST_CASE("measure consistency worked examples") {
  int n = 2;
  IndexFamily rows(n);
  rows.add(GenCube::full(n));
  rows.add(GenCube::one(n, 0));
  rows.add(GenCube::one(n, 1));
  RatMatrix y(3, 3);
  Rational v[3][3] = {{rat(1), rat(7, 10), rat(2, 5)},
                      {rat(7, 10), rat(7, 10), rat(1, 5)},
                      {rat(2, 5), rat(1, 5), rat(2, 5)}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y.at(i, j) = v[i][j];
  IndexedMatrix Y{rows, rows, y};

  IndexFamily two_cubes(n);
  two_cubes.add(GenCube::fixed(n, {0, 1}, {}));
  two_cubes.add(GenCube::fixed(n, {0}, {1}));
  two_cubes.add(GenCube::fixed(n, {1}, {0}));
  two_cubes.add(GenCube::fixed(n, {}, {0, 1}));
  IndexFamily just_f(n);
  just_f.add(GenCube::full(n));
  RatMatrix yv(4, 1);
  yv.at(0, 0) = rat(1, 5);
  yv.at(1, 0) = rat(1, 2);
  yv.at(2, 0) = rat(1, 5);
  yv.at(3, 0) = rat(1, 10);
  IndexedMatrix vec{two_cubes, just_f, yv};

  CHECK(check_omc(Y));
  CHECK(check_consistency(Y, vec));

  // RCMC-but-not-OMC example.
  IndexFamily cols5(n);
  cols5.add(GenCube::full(n));
  cols5.add(GenCube::one(n, 0));
  cols5.add(GenCube::one(n, 1));
  cols5.add(GenCube::zero(n, 0));
  cols5.add(GenCube::zero(n, 1));
  RatMatrix y2(3, 5);
  Rational w[3][5] = {{rat(1), rat(7, 10), rat(2, 5), rat(3, 10), rat(3, 5)},
                      {rat(7, 10), rat(7, 10), rat(1, 5), rat(0), rat(1, 2)},
                      {rat(2, 5), rat(3, 10), rat(2, 5), rat(1, 10), rat(0)}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j) y2.at(i, j) = w[i][j];
  IndexedMatrix Y2{rows, cols5, y2};
  CHECK_FALSE(check_omc(Y2));
  CHECK(check_rcmc(Y2));
}

TEST_CASE("omc accepts integral certificates and their mixtures") {
  std::mt19937_64 rng(4);
  IndexFamily a1 = gen_A(3, 1);
  for (int trial = 0; trial < 20; ++trial) {
    RatMatrix mix(a1.size(), a1.size());
    Rational total = 0;
    for (int pts = 0; pts < 3; ++pts) {
      std::uint32_t x = std::uint32_t(rng() % 8);
      Rational lambda = rat(1 + long(rng() % 5));
      total += lambda;
      RatMatrix c = integral_certificate(x, a1, a1);
      for (int i = 0; i < a1.size(); ++i)
        for (int j = 0; j < a1.size(); ++j) mix.at(i, j) += lambda * c.at(i, j);
    }
    for (int i = 0; i < a1.size(); ++i)
      for (int j = 0; j < a1.size(); ++j) mix.at(i, j) /= total;
    CHECK(check_omc(IndexedMatrix{a1, a1, mix}));
  }
}

TEST_CASE("canonical text form") {
  GenCube c = GenCube::capped(5, {2, 0}, {4}, {1, 3}, 2);
  CHECK(c.text() == "S={1,3} T={5} caps=[({2,4},2)]");
}
