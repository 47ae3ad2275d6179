#include <random>

#include "doctest.h"
#include "liftlab/polytope.hpp"

using namespace liftlab;

namespace {

HPolytope unit_box(int n) { return HPolytope::make(n, {}, "box"); }

HPolytope frac_k3() {
  return HPolytope::make(3,
                         {{{rat(1), rat(1), rat(0)}, rat(1)},
                          {{rat(1), rat(0), rat(1)}, rat(1)},
                          {{rat(0), rat(1), rat(1)}, rat(1)}},
                         "FRAC(K3)");
}

HPolytope fig1() {
  return HPolytope::make(
      2, {{{rat(1), rat(0)}, rat(1)}, {{rat(0), rat(1)}, rat(1)}, {{rat(2), rat(3)}, rat(22, 5)}},
      "fig1");
}

}  // namespace

TEST_CASE("optimize over FRAC(K3)") {
  LPOutcome out = optimize(frac_k3(), {rat(1), rat(1), rat(1)});
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.value == rat(3, 2));
  CHECK(out.point == RatVector{rat(1, 2), rat(1, 2), rat(1, 2)});
}

TEST_CASE("empty polytope optimize") {
  HPolytope p = HPolytope::make(1, {{{rat(0)}, rat(-1)}}, "empty");
  LPOutcome out = optimize(p, {rat(1)});
  CHECK(out.status == LPStatus::Infeasible);
}

TEST_CASE("integer hull of the box") {
  IntegerHull h = integer_hull(unit_box(2));
  CHECK(h.points.size() == 4);
  REQUIRE(h.facets_available);
  CHECK(h.facets.facets.size() == 4);
  CHECK(h.facets.equalities.empty());
  for (const auto& [c, d] : h.facets.facets)
    for (const auto& pt : h.points) CHECK(dot(c, pt) <= d);
}

TEST_CASE("integer hull of FRAC(K4) carries the clique facet") {
  HPolytope p = HPolytope::make(4, {}, "FRAC(K4)");
  std::vector<std::pair<RatVector, Rational>> rows;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      RatVector r(4, rat(0));
      r[i] = 1;
      r[j] = 1;
      rows.push_back({r, rat(1)});
    }
  p = HPolytope::make(4, rows, "FRAC(K4)");
  IntegerHull h = integer_hull(p);
  CHECK(h.points.size() == 5);  // empty set + 4 singletons
  REQUIRE(h.facets_available);
  bool clique = false;
  for (const auto& [c, d] : h.facets.facets)
    if (c == RatVector{rat(1), rat(1), rat(1), rat(1)} && d == 1) clique = true;
  CHECK(clique);
  // Each facet is tight on >= n affinely independent points.
  for (const auto& [c, d] : h.facets.facets) {
    int tight = 0;
    for (const auto& pt : h.points)
      if (dot(c, pt) == d) ++tight;
    CHECK(tight >= 4);  // n points spanning the facet affinely
  }
}

TEST_CASE("empty integer hull flag") {
  // sum x >= 1 and sum x <= 1/2 has no integer points (and no points at all).
  HPolytope p = HPolytope::make(
      2, {{{rat(-1), rat(-1)}, rat(-1)}, {{rat(1), rat(1)}, rat(1, 2)}}, "void");
  IntegerHull h = integer_hull(p);
  CHECK(h.empty);
}

TEST_CASE("conv_meet_empty") {
  HPolytope mtk3 = frac_k3();  // MT(K3) has the same system
  // Two adjacent edges cannot both be one.
  GenCube both = GenCube::fixed(3, {0, 1}, {});
  CHECK(conv_meet_empty(both, GenCube::full(3), mtk3));
  CHECK_FALSE(conv_meet_empty(GenCube::full(3), GenCube::full(3), mtk3));
  CHECK(conv_meet_empty(GenCube::one(3, 0), GenCube::one(3, 1), mtk3));
  CHECK_FALSE(conv_meet_empty(GenCube::one(3, 0), GenCube::full(3), mtk3));
  // Infeasible P: even F meets emptily.
  HPolytope empty = HPolytope::make(2, {{{rat(0), rat(0)}, rat(-1)}}, "empty");
  CHECK(conv_meet_empty(GenCube::full(2), GenCube::full(2), empty));
}

TEST_CASE("projection of a box oracle") {
  HPolytope box = unit_box(2);
  SupportOracle oracle = [&box](const RatVector& c) -> std::optional<std::pair<Rational, RatVector>> {
    LPOutcome out = optimize(box, c);
    if (out.status != LPStatus::Optimal) return std::nullopt;
    return std::make_pair(out.value, out.point);
  };
  Projection pr = project_relaxation(oracle, 2);
  REQUIRE_FALSE(pr.empty);
  CHECK(pr.h.facets.size() == 4);
  CHECK(pr.h.equalities.empty());
}

TEST_CASE("projection agrees with oracle on random directions") {
  HPolytope p = fig1();
  SupportOracle oracle = [&p](const RatVector& c) -> std::optional<std::pair<Rational, RatVector>> {
    LPOutcome out = optimize(p, c);
    if (out.status != LPStatus::Optimal) return std::nullopt;
    return std::make_pair(out.value, out.point);
  };
  Projection pr = project_relaxation(oracle, 2);
  HPolytope back = projection_to_hpolytope(pr);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    RatVector c(2);
    for (int j = 0; j < 2; ++j) c[j] = rat(long(rng() % 21) - 10);
    LPOutcome a = optimize(p, c);
    LPOutcome b = optimize(back, c);
    REQUIRE(a.status == LPStatus::Optimal);
    REQUIRE(b.status == LPStatus::Optimal);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("lower-dimensional projection produces equalities") {
  // Segment {x0 + x1 = 1} within the box.
  HPolytope p = HPolytope::make(
      2, {{{rat(1), rat(1)}, rat(1)}, {{rat(-1), rat(-1)}, rat(-1)}}, "segment");
  SupportOracle oracle = [&p](const RatVector& c) -> std::optional<std::pair<Rational, RatVector>> {
    LPOutcome out = optimize(p, c);
    if (out.status != LPStatus::Optimal) return std::nullopt;
    return std::make_pair(out.value, out.point);
  };
  Projection pr = project_relaxation(oracle, 2);
  REQUIRE_FALSE(pr.empty);
  CHECK(pr.h.equalities.size() == 1);
  HPolytope back = projection_to_hpolytope(pr);
  LPOutcome out = optimize(back, {rat(1), rat(2)});
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.value == 2);
}

TEST_CASE("equals_integer_hull") {
  HPolytope p = frac_k3();
  IntegerHull h = integer_hull(p);
  SupportOracle frac = [&p](const RatVector& c) -> std::optional<std::pair<Rational, RatVector>> {
    LPOutcome out = optimize(p, c);
    if (out.status != LPStatus::Optimal) return std::nullopt;
    return std::make_pair(out.value, out.point);
  };
  CHECK_FALSE(equals_integer_hull(frac, h));  // the clique facet separates at 3/2
  HPolytope stab = HPolytope::make(3, {{{rat(1), rat(1), rat(1)}, rat(1)}}, "STAB(K3)");
  SupportOracle stab_oracle =
      [&stab](const RatVector& c) -> std::optional<std::pair<Rational, RatVector>> {
    LPOutcome out = optimize(stab, c);
    if (out.status != LPStatus::Optimal) return std::nullopt;
    return std::make_pair(out.value, out.point);
  };
  CHECK(equals_integer_hull(stab_oracle, h));
}

TEST_CASE("cone section at y0 = 1 equals P") {
  HPolytope p = frac_k3();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    RatVector x(3);
    for (int j = 0; j < 3; ++j) x[j] = rat(long(rng() % 5), 4);
    // Membership in K(P) at y0=1 via the emitted rows must match P membership.
    SimplexSolver lp(4);
    std::vector<int> xv = {0, 1, 2};
    emit_cone_rows(p, lp, 3, xv);
    lp.add_row(LinRow{{{3, rat(1)}}, Rel::EQ, rat(1)});
    for (int j = 0; j < 3; ++j) lp.add_row(LinRow{{{j, rat(1)}}, Rel::EQ, x[j]});
    bool in_cone = lp.solve().status == LPStatus::Optimal;
    CHECK(in_cone == p.contains(x));
  }
}
