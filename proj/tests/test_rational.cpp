#include "doctest.h"
#include "liftlab/eig.hpp"
#include "liftlab/rational.hpp"

using namespace liftlab;

TEST_CASE("exact arithmetic") {
  CHECK(rat(1, 3) + rat(1, 6) == rat(1, 2));
  CHECK(rat(19, 25) > rat(3, 10));
  CHECK(rat(35, 47) * rat(47, 35) == 1);
  CHECK(rat_div(rat(1), rat(4)) == rat(1, 4));
  CHECK_THROWS_AS(rat_div(rat(1), rat(0)), Error);
}

TEST_CASE("canonical form") {
  Rational r = rat(-6, -4);
  CHECK(r.get_num() == 3);
  CHECK(r.get_den() == 2);
  CHECK(rat_str(rat(19, 25)) == "19/25");
  CHECK(rat_str(rat(4, 2)) == "2");
  CHECK(rat_parse("0.76") == rat(19, 25));
  CHECK(rat_parse("-7/2") == rat(-7, 2));
  CHECK(rat_parse("3") == 3);
  CHECK_THROWS_AS(rat_parse("x"), Error);
}

TEST_CASE("psd via exact ldl") {
  RatMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = m.at(1, 0) = 1;
  m.at(1, 1) = 1;
  CHECK(m.is_psd());
  m.at(1, 1) = rat(1, 2);
  CHECK_FALSE(m.is_psd());
  RatMatrix z(3, 3);
  CHECK(z.is_psd());
  z.at(0, 1) = z.at(1, 0) = 1;
  CHECK_FALSE(z.is_psd());
}

TEST_CASE("min_eigenvalue basics") {
  CHECK(min_eigenvalue(FloatSymMatrix::identity(3)) == doctest::Approx(1.0).epsilon(1e-10));
  FloatSymMatrix ones(2);
  ones.set(0, 0, 1);
  ones.set(0, 1, 1);
  ones.set(1, 1, 1);
  CHECK(min_eigenvalue(ones) == doctest::Approx(0.0).epsilon(1e-10));
  FloatSymMatrix off(2);
  off.set(0, 1, 1);
  CHECK(min_eigenvalue(off) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("psd_nearest basics") {
  FloatSymMatrix off(2);
  off.set(0, 1, 1);
  FloatSymMatrix p = psd_nearest(off);
  CHECK(p.at(0, 0) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p.at(0, 1) == doctest::Approx(0.5).epsilon(1e-9));
  FloatSymMatrix d(2);
  d.set(0, 0, -1);
  d.set(1, 1, 2);
  FloatSymMatrix q = psd_nearest(d);
  CHECK(q.at(0, 0) == doctest::Approx(0.0));
  CHECK(q.at(1, 1) == doctest::Approx(2.0));

  // Idempotence and eigenvalue floor on random symmetric matrices.
  std::uint64_t s = 12345;
  auto rnd = [&s]() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return double(long((s >> 33) % 2001) - 1000) / 500.0;
  };
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + int(trial % 5);
    FloatSymMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.set(i, j, rnd());
    FloatSymMatrix p1 = psd_nearest(m);
    CHECK(min_eigenvalue(p1) >= -1e-12);
    FloatSymMatrix p2 = psd_nearest(p1);
    CHECK(frobenius_distance(p1, p2) <= 1e-12);
  }
}
