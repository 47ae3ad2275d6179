#include "liftlab/polytope.hpp"

#include <algorithm>

namespace liftlab {

bool HPolytope::row_satisfied(int i, const RatVector& x) const {
  Rational lhs = 0;
  for (int j = 0; j < n; ++j) lhs += A.at(i, j) * x[j];
  return lhs <= b[i];
}

bool HPolytope::contains(const RatVector& x) const {
  if (int(x.size()) != n) return false;
  for (int j = 0; j < n; ++j)
    if (x[j] < 0 || x[j] > 1) return false;
  for (int i = 0; i < m(); ++i)
    if (!row_satisfied(i, x)) return false;
  return true;
}

bool HPolytope::contains_point(std::uint32_t mask) const {
  RatVector x(n);
  for (int j = 0; j < n; ++j) x[j] = (mask >> j) & 1;
  return contains(x);
}

bool HPolytope::is_lower_comprehensive() const {
  for (int i = 0; i < m(); ++i) {
    if (b[i] <= 0) return false;
    for (int j = 0; j < n; ++j)
      if (A.at(i, j) < 0) return false;
  }
  return true;
}

HPolytope HPolytope::make(int n, std::vector<std::pair<RatVector, Rational>> rows,
                          std::string name) {
  HPolytope p;
  p.n = n;
  p.name = std::move(name);
  p.A = RatMatrix(int(rows.size()), n);
  p.b.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (int(rows[i].first.size()) != n) throw Error("HPolytope row dimension mismatch");
    for (int j = 0; j < n; ++j) p.A.at(int(i), j) = rows[i].first[j];
    p.b[i] = rows[i].second;
  }
  return p;
}

void emit_cone_rows(const HPolytope& p, SimplexSolver& lp, int y0_var,
                    const std::vector<int>& x_vars,
                    const std::vector<std::pair<RatVector, Rational>>* extra_eq_rows) {
  // y0 >= 0
  lp.add_row(LinRow{{{y0_var, Rational(1)}}, Rel::GE, Rational(0)});
  // A y_x - b y0 <= 0
  for (int i = 0; i < p.m(); ++i) {
    LinRow r;
    for (int j = 0; j < p.n; ++j)
      if (p.A.at(i, j) != 0) r.terms.push_back({x_vars[j], p.A.at(i, j)});
    r.terms.push_back({y0_var, -p.b[i]});
    r.rel = Rel::LE;
    r.rhs = 0;
    lp.add_row(r);
  }
  // 0 <= y_x <= y0
  for (int j = 0; j < p.n; ++j) {
    lp.add_row(LinRow{{{x_vars[j], Rational(1)}}, Rel::GE, Rational(0)});
    lp.add_row(LinRow{{{x_vars[j], Rational(1)}, {y0_var, Rational(-1)}}, Rel::LE, Rational(0)});
  }
  if (extra_eq_rows) {
    for (const auto& [coeffs, rhs] : *extra_eq_rows) {
      LinRow r;
      for (int j = 0; j < p.n; ++j)
        if (coeffs[j] != 0) r.terms.push_back({x_vars[j], coeffs[j]});
      r.terms.push_back({y0_var, -rhs});
      r.rel = Rel::EQ;
      r.rhs = 0;
      lp.add_row(r);
    }
  }
}

static LinearProgram box_lp(const HPolytope& p) {
  LinearProgram lp;
  lp.num_vars = p.n;
  lp.bounds.assign(p.n, VarBounds{Rational(0), Rational(1)});
  for (int i = 0; i < p.m(); ++i) {
    LinRow r;
    for (int j = 0; j < p.n; ++j)
      if (p.A.at(i, j) != 0) r.terms.push_back({j, p.A.at(i, j)});
    r.rel = Rel::LE;
    r.rhs = p.b[i];
    lp.rows.push_back(std::move(r));
  }
  return lp;
}

LPOutcome optimize(const HPolytope& p, const RatVector& c) {
  if (int(c.size()) != p.n) throw Error("optimize: direction dimension mismatch");
  LinearProgram lp = box_lp(p);
  lp.objective = c;
  return lp_solve(lp);
}

bool polytope_feasible(const HPolytope& p) {
  LinearProgram lp = box_lp(p);
  return lp_solve(lp).status == LPStatus::Optimal;
}

IntegerHull integer_hull(const HPolytope& p) {
  if (p.n > 21) throw Error("integer_hull: enumeration limited to n <= 21");
  IntegerHull h;
  h.n = p.n;
  // DFS over coordinates with exact row-interval pruning.
  const int m = p.m();
  RatVector lhs(m, Rational(0));
  // Suffix min contributions per row: sum of negative coefficients from j..n-1.
  std::vector<RatVector> suffix_min(m, RatVector(p.n + 1, Rational(0)));
  for (int i = 0; i < m; ++i)
    for (int j = p.n - 1; j >= 0; --j) {
      suffix_min[i][j] = suffix_min[i][j + 1];
      if (p.A.at(i, j) < 0) suffix_min[i][j] += p.A.at(i, j);
    }
  std::uint32_t mask = 0;
  std::function<void(int)> rec = [&](int j) {
    for (int i = 0; i < m; ++i)
      if (lhs[i] + suffix_min[i][j] > p.b[i]) return;  // no completion can satisfy row i
    if (j == p.n) {
      h.point_masks.push_back(mask);
      return;
    }
    rec(j + 1);  // x_j = 0
    for (int i = 0; i < m; ++i) lhs[i] += p.A.at(i, j);
    mask |= std::uint32_t(1) << j;
    rec(j + 1);  // x_j = 1
    mask &= ~(std::uint32_t(1) << j);
    for (int i = 0; i < m; ++i) lhs[i] -= p.A.at(i, j);
  };
  rec(0);
  std::sort(h.point_masks.begin(), h.point_masks.end());
  for (std::uint32_t pm : h.point_masks) {
    RatVector x(p.n);
    for (int j = 0; j < p.n; ++j) x[j] = (pm >> j) & 1;
    h.points.push_back(std::move(x));
  }
  h.empty = h.points.empty();
  if (!h.empty && p.n <= 10) {
    h.facets = dd_facets(h.points);
    h.facets_available = true;
  }
  return h;
}

bool conv_meet_empty(const GenCube& a, const GenCube& b, const HPolytope& p) {
  if (a.n != p.n || b.n != p.n) throw Error("conv_meet_empty: dimension mismatch");
  GenCube c = cube_intersect(a, b);
  if (c.empty) return true;
  LinearProgram lp = box_lp(p);
  for (int i : c.S) lp.bounds[i] = VarBounds{Rational(1), Rational(1)};
  for (int i : c.T) lp.bounds[i] = VarBounds{Rational(0), Rational(0)};
  for (const CardCap& cap : c.caps) {
    LinRow r;
    for (int i : cap.U) r.terms.push_back({i, Rational(1)});
    r.rel = Rel::LE;
    r.rhs = cap.r - 1;
    lp.rows.push_back(std::move(r));
  }
  return lp_solve(lp).status != LPStatus::Optimal;
}

namespace {

// Exact rank of the span of (points - points[0]).
int affine_rank(const std::vector<RatVector>& pts) {
  if (pts.size() <= 1) return 0;
  int n = int(pts[0].size());
  std::vector<RatVector> m;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVector d(n);
    for (int j = 0; j < n; ++j) d[j] = pts[i][j] - pts[0][j];
    m.push_back(std::move(d));
  }
  int rank = 0;
  for (int col = 0; col < n && rank < int(m.size()); ++col) {
    int piv = -1;
    for (int i = rank; i < int(m.size()); ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    for (int i = 0; i < int(m.size()); ++i) {
      if (i == rank || m[i][col] == 0) continue;
      Rational f = m[i][col] / m[rank][col];
      for (int j = col; j < n; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Projection project_relaxation(const SupportOracle& oracle, int n) {
  Projection pr;
  pr.n = n;
  // Seed with coordinate directions.
  std::vector<RatVector> pts;
  auto add_point = [&pts](const RatVector& p) {
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  };
  for (int j = 0; j < n; ++j) {
    for (int sgn : {1, -1}) {
      RatVector c(n, Rational(0));
      c[j] = sgn;
      auto r = oracle(c);
      if (!r) {
        pr.empty = true;
        return pr;
      }
      add_point(r->second);
    }
  }
  const int kMaxRounds = 10000;
  for (int round = 0; round < kMaxRounds; ++round) {
    HRep h = dd_facets(pts);
    bool grew = false;
    for (const auto& [c, d] : h.facets) {
      auto r = oracle(c);
      if (!r) throw Error("project_relaxation: oracle became infeasible");
      if (r->first > d) {
        add_point(r->second);
        grew = true;
      }
    }
    if (!grew) {
      for (const auto& [c, d] : h.equalities) {
        for (int sgn : {1, -1}) {
          RatVector cs(n);
          for (int j = 0; j < n; ++j) cs[j] = sgn * c[j];
          auto r = oracle(cs);
          if (!r) throw Error("project_relaxation: oracle became infeasible");
          if (r->first > Rational(sgn) * d) {
            add_point(r->second);
            grew = true;
          }
        }
      }
    }
    if (!grew) {
      pr.h = h;
      pr.points = pts;
      return pr;
    }
  }
  throw Error("project_relaxation: budget exceeded; partial output unusable");
}

HPolytope projection_to_hpolytope(const Projection& pr, const std::string& name) {
  if (pr.empty) {
    // An explicitly infeasible system: 0 <= -1.
    RatVector zero(pr.n, Rational(0));
    return HPolytope::make(pr.n, {{zero, Rational(-1)}}, name);
  }
  std::vector<std::pair<RatVector, Rational>> rows;
  for (const auto& [c, d] : pr.h.facets) rows.push_back({c, d});
  for (const auto& [c, d] : pr.h.equalities) {
    rows.push_back({c, d});
    RatVector neg(pr.n);
    for (int j = 0; j < pr.n; ++j) neg[j] = -c[j];
    rows.push_back({neg, -d});
  }
  return HPolytope::make(pr.n, std::move(rows), name);
}

bool equals_integer_hull(const SupportOracle& oracle, const IntegerHull& hull,
                         RatVector* witness_direction, Rational* witness_value,
                         Rational* witness_rhs) {
  if (hull.empty) {
    RatVector zero(hull.n, Rational(0));
    auto r = oracle(zero);
    if (r && witness_direction) {
      *witness_direction = zero;
      if (witness_value) *witness_value = 0;
      if (witness_rhs) *witness_rhs = 0;
    }
    return !r.has_value();
  }
  if (!hull.facets_available) throw Error("equals_integer_hull: facets unavailable");
  auto check = [&](const RatVector& c, const Rational& d) {
    auto r = oracle(c);
    if (!r) throw Error("equals_integer_hull: oracle infeasible on nonempty hull");
    if (r->first > d) {
      if (witness_direction) *witness_direction = c;
      if (witness_value) *witness_value = r->first;
      if (witness_rhs) *witness_rhs = d;
      return false;
    }
    return true;
  };
  for (const auto& [c, d] : hull.facets.facets)
    if (!check(c, d)) return false;
  for (const auto& [c, d] : hull.facets.equalities) {
    if (!check(c, d)) return false;
    RatVector neg(hull.n);
    for (int j = 0; j < hull.n; ++j) neg[j] = -c[j];
    if (!check(neg, -d)) return false;
  }
  return true;
}

}  // namespace liftlab
