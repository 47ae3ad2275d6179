#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "liftlab/analysis.hpp"
#include "liftlab/bz.hpp"

using namespace liftlab;

namespace {

Rational opt(OperatorSpec spec, const HPolytope& p, const RatVector& c, BuildConfig bc = {}) {
  RelaxValue rv = relax_optimize(spec, p, c, bc);
  REQUIRE(rv.feasible);
  REQUIRE(rv.exact);
  return rv.value;
}

// Brute-force oracle for the obstruction definition.
std::vector<IndexSet> brute_obstructions(const HPolytope& p, int k) {
  std::set<IndexSet> found;
  for (int i = 0; i < p.m(); ++i) {
    IndexSet supp;
    for (int j = 0; j < p.n; ++j)
      if (p.A.at(i, j) > 0) supp.push_back(j);
    for (std::uint32_t mask = 1; mask < (1u << p.n); ++mask) {
      IndexSet o;
      bool inside = true;
      Rational sum = 0;
      for (int j = 0; j < p.n; ++j)
        if ((mask >> j) & 1) {
          o.push_back(j);
          if (p.A.at(i, j) <= 0) inside = false;
          sum += p.A.at(i, j);
        }
      if (!inside || sum <= p.b[i]) continue;
      int os = int(o.size());
      if (os <= k + 1 || os >= int(supp.size()) - (k + 1)) found.insert(o);
    }
  }
  return std::vector<IndexSet>(found.begin(), found.end());
}

}  // namespace

TEST_CASE("obstructions: FRAC(K4) k=1 is exactly the edge set") {
  HPolytope p = gen_instance("FRAC:K4").poly;
  auto obs = gen_obstructions(p, 1);
  CHECK(obs.size() == 6);
  for (const Obstruction& o : obs) CHECK(o.O.size() == 2);
  auto brute = brute_obstructions(p, 1);
  REQUIRE(obs.size() == brute.size());
  for (std::size_t i = 0; i < obs.size(); ++i) CHECK(std::count(brute.begin(), brute.end(), obs[i].O) == 1);
}

TEST_CASE("obstructions: BZ7 k=1 are the subsets of size >= 5") {
  HPolytope p = gen_instance("BZ7").poly;
  auto obs = gen_obstructions(p, 1);
  CHECK(obs.size() == 29);  // C(7,5)+C(7,6)+C(7,7)
  for (const Obstruction& o : obs) CHECK(o.O.size() >= 5);
}

TEST_CASE("obstructions: MT(K5) k=1 total 55 against the brute oracle") {
  HPolytope p = gen_instance("MT:K5").poly;
  auto obs = gen_obstructions(p, 1);
  auto brute = brute_obstructions(p, 1);
  CHECK(obs.size() == 55);
  CHECK(brute.size() == 55);
}

TEST_CASE("obstruction generation rejects non lower-comprehensive input") {
  HPolytope p = HPolytope::make(2, {{{rat(-1), rat(1)}, rat(1)}}, "bad");
  CHECK_THROWS_WITH_AS(gen_obstructions(p, 1), doctest::Contains("lower-comprehensive"), Error);
}

TEST_CASE("refinement") {
  // O_k(FRAC(G)) = FRAC(G) for all k: the cuts are the edge rows themselves.
  HPolytope p = gen_instance("FRAC:K4").poly;
  HPolytope o1 = refine_Ok(p, 1);
  CHECK(o1.m() == p.m());
  // O_1 of the BZ7 instance equals the instance as a set.
  HPolytope bz7 = gen_instance("BZ7").poly;
  HPolytope r = refine_Ok(bz7, 1);
  CHECK(r.m() == 1 + 29);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    RatVector c(7);
    for (int j = 0; j < 7; ++j) c[j] = rat(long(rng() % 11) - 5);
    CHECK(optimize(bz7, c).value == optimize(r, c).value);
  }
  // O_1(MT(K3)): the pair cuts are already implied; optima unchanged.
  HPolytope mt = gen_instance("MT:K3").poly;
  HPolytope omt = refine_Ok(mt, 1);
  for (int t = 0; t < 10; ++t) {
    RatVector c(3);
    for (int j = 0; j < 3; ++j) c[j] = rat(long(rng() % 11) - 5);
    CHECK(optimize(mt, c).value == optimize(omt, c).value);
  }
}

TEST_CASE("walls: FRAC(Kn) k=1 under the prime rule are all sets of size <= 2") {
  for (int m : {4, 5}) {
    HPolytope p = gen_instance("FRAC:K" + std::to_string(m)).poly;
    auto obs = gen_obstructions(p, 1);
    WallSet w = gen_walls(BZVariant::Prime, obs, 1, p.n);
    long expect = m + m * (m - 1) / 2;  // singletons and pairs
    CHECK(long(w.walls.size()) == expect);
    for (const IndexSet& s : w.walls) CHECK(s.size() <= 2);
  }
}

TEST_CASE("walls and tiers of the BZ7 instance") {
  HPolytope p = gen_instance("BZ7").poly;
  auto obs = gen_obstructions(p, 1);
  WallSet worig = gen_walls(BZVariant::Original, obs, 1, 7);
  CHECK(worig.walls.size() == 98);  // sizes 3..6
  for (const IndexSet& w : worig.walls) {
    CHECK(w.size() >= 3);
    CHECK(w.size() <= 6);
  }
  WallSet wpp = gen_walls(BZVariant::DoublePrime, obs, 1, 7);
  CHECK(wpp.walls.size() == 105);  // plus the singletons
  TierSet t = gen_tiers(BZVariant::Original, worig, 1, 200000);
  CHECK(t.tiers.size() == 99);  // the walls plus the empty set
}

TEST_CASE("BZ variable family of the BZ7 instance has 603 members") {
  HPolytope p = gen_instance("BZ7").poly;
  auto obs = gen_obstructions(p, 1);
  WallSet w = gen_walls(BZVariant::Original, obs, 1, 7);
  TierSet t = gen_tiers(BZVariant::Original, w, 1, 200000);
  BZFamily fam = gen_bz_variables(BZVariant::Original, t, w, 1, 7);
  CHECK(fam.family.size() == 603);
  // DoublePrime adds singleton walls whose variables already exist.
  WallSet w2 = gen_walls(BZVariant::DoublePrime, obs, 1, 7);
  TierSet t2 = gen_tiers(BZVariant::DoublePrime, w2, 1, 200000);
  BZFamily fam2 = gen_bz_variables(BZVariant::DoublePrime, t2, w2, 1, 7);
  CHECK(fam2.family.size() == 603);
}

TEST_CASE("BZ' tiers: FRAC(K5) k=1 are all sets of size <= 2") {
  HPolytope p = gen_instance("FRAC:K5").poly;
  auto obs = gen_obstructions(p, 1);
  WallSet w = gen_walls(BZVariant::Prime, obs, 1, 5);
  TierSet t = gen_tiers(BZVariant::Prime, w, 1, 200000);
  CHECK(t.tiers.size() == 16);  // empty + 5 + 10
  for (const IndexSet& s : t.tiers) CHECK(s.size() <= 2);
}

TEST_CASE("BZ'1 on MT(K3): 2^|S| complementations per tier") {
  HPolytope p = gen_instance("MT:K3").poly;
  auto obs = gen_obstructions(p, 1);
  CHECK(obs.size() == 3);
  WallSet w = gen_walls(BZVariant::Prime, obs, 1, 3);
  // Singletons plus the three stars themselves (repetition rule).
  CHECK(w.walls.size() == 6);
  TierSet t = gen_tiers(BZVariant::Prime, w, 1, 200000);
  BZFamily fam = gen_bz_variables(BZVariant::Prime, t, w, 1, 3);
  // F, e|1, e|0 plus per 2-tier: S|1, two mixed, S|0 (the remainder S|_{<1}).
  CHECK(fam.family.size() == 1 + 6 + 3 * 4);
}

TEST_CASE("BZ1 equals LS on FRAC(Fig5) directionally") {
  HPolytope p = gen_instance("FRAC:Fig5").poly;
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    RatVector c(6);
    for (int j = 0; j < 6; ++j) c[j] = rat(long(rng() % 11) - 5);
    CHECK(opt(OperatorSpec::parse("BZ:1"), p, c) == opt(OperatorSpec::parse("LS"), p, c));
  }
}

TEST_CASE("variant dominance BZ' <= BZ'' <= BZ on FRAC(K4) and MT(K3)") {
  std::mt19937_64 rng(37);
  for (const char* inst : {"FRAC:K4", "MT:K3"}) {
    HPolytope p = gen_instance(inst).poly;
    for (int t = 0; t < 10; ++t) {
      RatVector c(p.n);
      for (int j = 0; j < p.n; ++j) c[j] = rat(long(rng() % 9) - 4);
      Rational bz = opt(OperatorSpec::parse("BZ:1"), p, c);
      Rational bzpp = opt(OperatorSpec::parse("BZpp:1"), p, c);
      Rational bzp = opt(OperatorSpec::parse("BZp:1"), p, c);
      CHECK(bzp <= bzpp);
      CHECK(bzpp <= bz);
    }
  }
}

TEST_CASE("pruning preserves optima where nothing prunable exists") {
  std::mt19937_64 rng(41);
  for (const char* inst : {"FRAC:K4", "MT:K3"}) {
    HPolytope p = gen_instance(inst).poly;
    BuildConfig pruned;
    pruned.prune_tiers = true;
    for (int t = 0; t < 10; ++t) {
      RatVector c(p.n);
      for (int j = 0; j < p.n; ++j) c[j] = rat(long(rng() % 9) - 4);
      CHECK(opt(OperatorSpec::parse("BZp:1"), p, c) ==
            opt(OperatorSpec::parse("BZp:1"), p, c, pruned));
    }
  }
}

TEST_CASE("pruning drops the large tiers of MT(K5) and the box prunes nothing") {
  HPolytope p = gen_instance("MT:K5").poly;
  auto obs = gen_obstructions(p, 1);
  WallSet w = gen_walls(BZVariant::Prime, obs, 1, p.n);
  TierSet t = gen_tiers(BZVariant::Prime, w, 1, 200000);
  TierSet kept = prune_useless_tiers(BZVariant::Prime, t, 1, p);
  CHECK(kept.tiers.size() < t.tiers.size());
  for (const IndexSet& s : kept.tiers) {
    // Kept tiers satisfy max matching-fraction >= |S| - 1.
    RatVector c(p.n, rat(0));
    for (int i : s) c[i] = 1;
    if (int(s.size()) > 1) CHECK(optimize(p, c).value >= Rational(long(s.size()) - 1));
  }
  HPolytope box = HPolytope::make(3, {{RatVector(3, rat(1)), rat(4)}}, "roomy");
  auto obs2 = gen_obstructions(box, 1);
  CHECK(obs2.empty());
  WallSet w2 = gen_walls(BZVariant::Prime, obs2, 1, 3);
  TierSet t2 = gen_tiers(BZVariant::Prime, w2, 1, 200000);
  TierSet kept2 = prune_useless_tiers(BZVariant::Prime, t2, 1, box);
  CHECK(kept2.tiers.size() == t2.tiers.size());
}

TEST_CASE("Thm 5 probe: BZ'1 beats SA'4 of the refinement on FRAC(K4)") {
  HPolytope p = gen_instance("FRAC:K4").poly;
  HPolytope ok = refine_Ok(p, 1);
  // All BZ'^1 tiers have size <= 2, so l = 2 works and BZ'^1 >= SA'^{2l}(O_1(P)).
  auto obs = gen_obstructions(p, 1);
  WallSet w = gen_walls(BZVariant::Prime, obs, 1, 4);
  TierSet t = gen_tiers(BZVariant::Prime, w, 1, 200000);
  for (const IndexSet& s : t.tiers) REQUIRE(s.size() <= 2);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    RatVector c(4);
    for (int j = 0; j < 4; ++j) c[j] = rat(long(rng() % 9) - 4);
    Rational bzp = opt(OperatorSpec::parse("BZp:1"), p, c);
    Rational sap4 = opt(OperatorSpec::parse("SAp:4"), ok, c);
    CHECK(bzp >= sap4);
  }
}

TEST_CASE("every generated variable is nonempty unless pinned by the zero rule") {
  HPolytope p = gen_instance("FRAC:K4").poly;
  LiftedProblem prob = build_operator(OperatorSpec::parse("BZp:1"), p);
  for (int i = 0; i < prob.row_family.size(); ++i) CHECK_FALSE(prob.row_family[i].empty);
}

TEST_CASE("sizes report") {
  HPolytope p = gen_instance("FRAC:K4").poly;
  BZSizes s = bz_sizes(OperatorSpec::parse("BZp:1"), p);
  CHECK(s.obstructions == 6);
  CHECK(s.walls == 10);
  CHECK(s.tiers == 11);
  CHECK(s.variables > 0);
  CHECK(s.constraints > 0);
  CHECK(s.constraints_raw >= s.constraints);
}
