#include <random>

#include "doctest.h"
#include "liftlab/lp.hpp"

using namespace liftlab;

namespace {

LinearProgram box_program(int n) {
  LinearProgram p;
  p.num_vars = n;
  p.bounds.assign(n, VarBounds{rat(0), rat(1)});
  return p;
}

// Brute-force oracle for 2-D polytopes: enumerate candidate vertices as
// intersections of constraint lines (and box lines), keep the feasible ones.
std::vector<RatVector> vertices_2d(const std::vector<std::pair<RatVector, Rational>>& rows) {
  std::vector<std::pair<RatVector, Rational>> all = rows;
  all.push_back({{rat(1), rat(0)}, rat(1)});
  all.push_back({{rat(-1), rat(0)}, rat(0)});
  all.push_back({{rat(0), rat(1)}, rat(1)});
  all.push_back({{rat(0), rat(-1)}, rat(0)});
  std::vector<RatVector> verts;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      Rational det = all[i].first[0] * all[j].first[1] - all[i].first[1] * all[j].first[0];
      if (det == 0) continue;
      Rational x = (all[i].second * all[j].first[1] - all[j].second * all[i].first[1]) / det;
      Rational y = (all[i].first[0] * all[j].second - all[j].first[0] * all[i].second) / det;
      bool ok = true;
      for (const auto& [a, b] : all)
        if (a[0] * x + a[1] * y > b) ok = false;
      if (ok) verts.push_back({x, y});
    }
  return verts;
}

}  // namespace

TEST_CASE("box maximum") {
  LinearProgram p = box_program(2);
  p.objective = {rat(1), rat(0)};
  LPOutcome out = lp_solve(p);
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.value == 1);
  CHECK(out.point[0] == 1);
}

TEST_CASE("fig1 polytope optimum matches vertex enumeration oracle") {
  // 2x1 + 3x2 <= 22/5 inside the unit box.
  std::vector<std::pair<RatVector, Rational>> rows = {{{rat(2), rat(3)}, rat(22, 5)}};
  auto verts = vertices_2d(rows);
  Rational best = 0;
  RatVector arg;
  for (const auto& v : verts) {
    Rational val = v[0] + v[1];
    if (val > best) {
      best = val;
      arg = v;
    }
  }
  CHECK(best == rat(9, 5));  // frozen from the oracle
  CHECK(arg == RatVector{rat(1), rat(4, 5)});

  LinearProgram p = box_program(2);
  p.objective = {rat(1), rat(1)};
  p.rows.push_back(LinRow{{{0, rat(2)}, {1, rat(3)}}, Rel::LE, rat(22, 5)});
  LPOutcome out = lp_solve(p);
  REQUIRE(out.status == LPStatus::Optimal);
  CHECK(out.value == rat(9, 5));
  CHECK(out.point == arg);
}

TEST_CASE("infeasible with verifiable farkas") {
  LinearProgram p;
  p.num_vars = 1;
  p.bounds = {VarBounds{std::nullopt, std::nullopt}};
  p.rows.push_back(LinRow{{{0, rat(1)}}, Rel::GE, rat(1)});
  p.rows.push_back(LinRow{{{0, rat(1)}}, Rel::LE, rat(0)});
  LPOutcome out = lp_solve(p);
  REQUIRE(out.status == LPStatus::Infeasible);
  REQUIRE(out.farkas.size() == 2);
  CHECK(out.farkas[0] <= 0);  // GE row
  CHECK(out.farkas[1] >= 0);  // LE row
  CHECK(rat_abs(out.farkas[0]) == rat_abs(out.farkas[1]));  // the (1,1) pair up to sign convention
  CHECK(lp_farkas_valid(p, out.farkas));
}

TEST_CASE("unbounded with improving ray") {
  LinearProgram p;
  p.num_vars = 2;
  p.bounds.assign(2, VarBounds{rat(0), std::nullopt});
  p.objective = {rat(1), rat(1)};
  p.rows.push_back(LinRow{{{0, rat(1)}, {1, rat(-1)}}, Rel::LE, rat(1)});
  LPOutcome out = lp_solve(p);
  REQUIRE(out.status == LPStatus::Unbounded);
  REQUIRE(out.ray.size() == 2);
  // Ray improves the objective and preserves feasibility directionally.
  CHECK(out.ray[0] + out.ray[1] > 0);
  CHECK(out.ray[0] - out.ray[1] <= 0);
  CHECK(out.ray[0] >= 0);
  CHECK(out.ray[1] >= 0);
}

TEST_CASE("equalities and free variables") {
  LinearProgram p;
  p.num_vars = 3;
  p.bounds = {VarBounds{std::nullopt, std::nullopt}, VarBounds{rat(0), std::nullopt},
              VarBounds{rat(0), rat(2)}};
  p.objective = {rat(1), rat(-1), rat(2)};
  p.rows.push_back(LinRow{{{0, rat(1)}, {1, rat(1)}, {2, rat(1)}}, Rel::EQ, rat(3)});
  p.rows.push_back(LinRow{{{0, rat(1)}}, Rel::LE, rat(1, 2)});
  LPOutcome out = lp_solve(p);
  REQUIRE(out.status == LPStatus::Optimal);
  // x0 = 1/2, x2 = 2, x1 = 1/2: value = 1/2 - 1/2 + 4 = 4.
  CHECK(out.value == rat(4));
  CHECK(lp_point_feasible(p, out.point));
}

TEST_CASE("random programs: optimum point feasible and max/min duality") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + int(rng() % 4);
    int m = 1 + int(rng() % 5);
    LinearProgram p = box_program(n);
    for (int i = 0; i < m; ++i) {
      LinRow r;
      for (int j = 0; j < n; ++j) {
        long c = long(rng() % 7) - 3;
        if (c != 0) r.terms.push_back({j, rat(c)});
      }
      r.rel = Rel::LE;
      r.rhs = rat(long(rng() % 9) - 1, 2);
      p.rows.push_back(std::move(r));
    }
    RatVector c(n);
    for (int j = 0; j < n; ++j) c[j] = rat(long(rng() % 11) - 5);
    p.objective = c;
    LPOutcome mx = lp_solve(p);
    if (mx.status == LPStatus::Infeasible) {
      CHECK(lp_farkas_valid(p, mx.farkas));
      continue;
    }
    REQUIRE(mx.status == LPStatus::Optimal);
    CHECK(lp_point_feasible(p, mx.point));
    LinearProgram q = p;
    for (int j = 0; j < n; ++j) q.objective[j] = -c[j];
    LPOutcome mn = lp_solve(q);
    REQUIRE(mn.status == LPStatus::Optimal);
    CHECK(lp_point_feasible(q, mn.point));
    // min c = -max(-c); the max must weakly dominate it and both optima must
    // be attained by their reported points exactly.
    Rational min_c = -mn.value;
    CHECK(mx.value >= min_c);
    Rational recomputed = 0;
    for (int j = 0; j < n; ++j) recomputed += c[j] * mx.point[j];
    CHECK(recomputed == mx.value);
    Rational recomputed_min = 0;
    for (int j = 0; j < n; ++j) recomputed_min += c[j] * mn.point[j];
    CHECK(recomputed_min == min_c);
  }
}

TEST_CASE("incremental rows with warm start") {
  SimplexSolver s(2, {VarBounds{rat(0), rat(1)}, VarBounds{rat(0), rat(1)}});
  s.set_objective({rat(1), rat(1)});
  LPOutcome o1 = s.solve();
  REQUIRE(o1.status == LPStatus::Optimal);
  CHECK(o1.value == 2);
  s.add_row(LinRow{{{0, rat(1)}, {1, rat(1)}}, Rel::LE, rat(1)});
  LPOutcome o2 = s.solve();
  REQUIRE(o2.status == LPStatus::Optimal);
  CHECK(o2.value == 1);
  s.add_row(LinRow{{{0, rat(2)}, {1, rat(1)}}, Rel::LE, rat(1, 2)});
  LPOutcome o3 = s.solve();
  REQUIRE(o3.status == LPStatus::Optimal);
  CHECK(o3.value == rat(1, 2));
}
