#include "liftlab/analysis.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "liftlab/bz.hpp"

namespace liftlab {

namespace {

std::vector<std::pair<int, int>> complete_graph_edges(int m) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) e.push_back({i, j});
  return e;
}

HPolytope frac_of_edges(int nverts, const std::vector<std::pair<int, int>>& edges,
                        const std::string& name) {
  std::vector<std::pair<RatVector, Rational>> rows;
  for (auto [u, v] : edges) {
    RatVector r(nverts, Rational(0));
    r[u] = 1;
    r[v] = 1;
    rows.push_back({std::move(r), Rational(1)});
  }
  return HPolytope::make(nverts, std::move(rows), name);
}

std::vector<std::pair<int, int>> fig3_edges() {
  // 1-based in the source description.
  std::vector<std::pair<int, int>> e = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 3}, {2, 6}, {1, 4}};
  for (auto& [u, v] : e) {
    --u;
    --v;
  }
  return e;
}

std::vector<std::pair<int, int>> fig5_edges() {
  std::vector<std::pair<int, int>> e = {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6},
                                        {1, 3}, {2, 6}, {1, 4}, {1, 5}};
  for (auto& [u, v] : e) {
    --u;
    --v;
  }
  return e;
}

}  // namespace

HPolytope random_packing(std::uint64_t seed, int n, int m) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<RatVector, Rational>> rows;
  for (int i = 0; i < m; ++i) {
    RatVector r(n, Rational(0));
    bool any = false;
    while (!any) {
      for (int j = 0; j < n; ++j) {
        long c = long(rng() % 4);
        r[j] = c;
        if (c > 0) any = true;
      }
    }
    Rational sum = 0;
    for (int j = 0; j < n; ++j) sum += r[j];
    long pick = long(rng() % 3);  // 1/3, 1/2, 2/3 of the row sum
    Rational q = pick == 0 ? rat(1, 3) : pick == 1 ? rat(1, 2) : rat(2, 3);
    Rational b = sum * q;
    if (b <= 0) b = 1;
    rows.push_back({std::move(r), b});
  }
  std::ostringstream name;
  name << "RandomPacking:" << seed << "," << n << "," << m;
  return HPolytope::make(n, std::move(rows), name.str());
}

Instance gen_instance(const std::string& spec) {
  auto starts_with = [&spec](const char* p) { return spec.rfind(p, 0) == 0; };
  auto ints_after = [&spec](std::size_t at) {
    std::vector<long> out;
    std::string rest = spec.substr(at);
    std::stringstream ss(rest);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
    return out;
  };

  if (spec == "Fig1") {
    HPolytope p = HPolytope::make(2,
                                  {{{rat(1), rat(0)}, rat(1)},
                                   {{rat(0), rat(1)}, rat(1)},
                                   {{rat(2), rat(3)}, rat(22, 5)}},
                                  "Fig1");
    return Instance{p, std::nullopt};
  }
  if (spec == "BZ7") {
    RatVector r(7, rat(2));
    HPolytope p = HPolytope::make(7, {{r, rat(7)}}, "BZ7");
    SymmetryGroup g = SymmetryGroup::symmetric_blocks(7, {{0, 1, 2}, {3, 4, 5, 6}});
    return Instance{p, g};
  }
  if (starts_with("FRAC:K") && spec.size() > 6 && std::isdigit(spec[6])) {
    int m = std::stoi(spec.substr(6));
    HPolytope p = frac_of_edges(m, complete_graph_edges(m), spec);
    return Instance{p, SymmetryGroup::cyclic(m)};
  }
  if (spec == "FRAC:Fig3") return Instance{frac_of_edges(6, fig3_edges(), spec), std::nullopt};
  if (spec == "FRAC:Fig5") return Instance{frac_of_edges(6, fig5_edges(), spec), std::nullopt};
  if (spec == "Fig3cut") {
    HPolytope base = frac_of_edges(6, fig3_edges(), spec);
    std::vector<std::pair<RatVector, Rational>> rows;
    for (int i = 0; i < base.m(); ++i) rows.push_back({base.A.row(i), base.b[i]});
    rows.push_back({RatVector(6, rat(1)), rat(3)});
    return Instance{HPolytope::make(6, std::move(rows), spec), std::nullopt};
  }
  if (starts_with("FRAC:LK")) {
    int m = std::stoi(spec.substr(7));
    auto edges = complete_graph_edges(m);
    int ne = int(edges.size());
    std::vector<std::pair<int, int>> lg_edges;
    for (int a = 0; a < ne; ++a)
      for (int b = a + 1; b < ne; ++b) {
        auto [u1, v1] = edges[a];
        auto [u2, v2] = edges[b];
        if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) lg_edges.push_back({a, b});
      }
    return Instance{frac_of_edges(ne, lg_edges, spec), std::nullopt};
  }
  if (starts_with("MT:K")) {
    int m = std::stoi(spec.substr(4));
    auto edges = complete_graph_edges(m);
    int ne = int(edges.size());
    std::vector<std::pair<RatVector, Rational>> rows;
    for (int v = 0; v < m; ++v) {
      RatVector r(ne, Rational(0));
      for (int e = 0; e < ne; ++e)
        if (edges[e].first == v || edges[e].second == v) r[e] = 1;
      rows.push_back({std::move(r), rat(1)});
    }
    return Instance{HPolytope::make(ne, std::move(rows), spec), std::nullopt};
  }
  if (starts_with("Pfamily:")) {
    auto v = ints_after(8);
    if (v.size() != 2) throw Error("Pfamily wants p,n");
    long p = v[0];
    int n = int(v[1]);
    std::vector<std::pair<RatVector, Rational>> rows;
    for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
      RatVector r(n);
      Rational rhs = Rational(n) - rat(p + 1, 2);
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1) {
          r[i] = 1;
        } else {
          r[i] = -1;
          rhs -= 1;
        }
      }
      rows.push_back({std::move(r), rhs});
    }
    return Instance{HPolytope::make(n, std::move(rows), spec), SymmetryGroup::cyclic(n)};
  }
  if (starts_with("RandomPacking:")) {
    auto v = ints_after(14);
    if (v.size() != 3) throw Error("RandomPacking wants seed,n,m");
    return Instance{random_packing(std::uint64_t(v[0]), int(v[1]), int(v[2])), std::nullopt};
  }
  throw Error("unknown instance '" + spec + "'");
}

bool group_preserves(const HPolytope& p, const SymmetryGroup& g) {
  std::multiset<std::pair<RatVector, Rational>> rows;
  for (int i = 0; i < p.m(); ++i) rows.insert({p.A.row(i), p.b[i]});
  for (const Perm& perm : g.generators) {
    std::multiset<std::pair<RatVector, Rational>> mapped;
    for (int i = 0; i < p.m(); ++i) {
      RatVector r(p.n);
      for (int j = 0; j < p.n; ++j) r[perm[j]] = p.A.at(i, j);
      mapped.insert({std::move(r), p.b[i]});
    }
    if (mapped != rows) return false;
  }
  return true;
}

RelaxValue relax_optimize(OperatorSpec spec, const HPolytope& p, const RatVector& c,
                          const BuildConfig& bc, const SDPConfig& sc) {
  RelaxValue rv;
  if (!spec.is_psd()) {
    LiftedProblem prob = build_operator(spec, p, bc);
    LPOutcome out = lifted_optimize(prob, c);
    if (out.status == LPStatus::Infeasible) {
      rv.feasible = false;
      return rv;
    }
    if (out.status != LPStatus::Optimal) throw Error("relaxation optimum unbounded");
    rv.exact = true;
    rv.value = out.value;
    rv.value_f = to_double(out.value);
    return rv;
  }
  LiftedProblem prob = build_operator(spec, p, bc);
  SDPQuery q;
  q.prob = &prob;
  q.objective = c;
  q.cfg = sc;
  SDPSolveResult res = sdp_optimize(q);
  if (res.exact_infeasible) {
    rv.feasible = false;
    return rv;
  }
  rv.exact = res.closed_by_bounds;
  if (res.closed_by_bounds) {
    rv.value = res.exact_value;
    rv.value_f = to_double(res.exact_value);
  } else {
    rv.value_f = res.value;
  }
  if (res.lp_upper_valid) rv.lp_upper = res.lp_upper;
  return rv;
}

SupportOracle relaxation_oracle(OperatorSpec spec, const HPolytope& p, const BuildConfig& bc) {
  if (spec.is_psd()) throw Error("support oracle requires a polyhedral operator");
  auto prob = std::make_shared<LiftedProblem>(build_operator(spec, p, bc));
  return [prob](const RatVector& c) -> std::optional<std::pair<Rational, RatVector>> {
    LPOutcome out = lifted_solve(*prob, &c, nullptr, {});
    if (out.status == LPStatus::Infeasible) return std::nullopt;
    if (out.status != LPStatus::Optimal) throw Error("oracle: unbounded relaxation");
    RatVector x(prob->n);
    for (int i = 0; i < prob->n; ++i) {
      Rational xi = 0;
      for (const auto& [v, coef] : prob->xhat[i]) xi += coef * out.point[v];
      x[i] = xi;
    }
    return std::make_pair(out.value, x);
  };
}

RankReport rank(OpKind family, const HPolytope& p, int k_max, bool iterated,
                const std::string& instance_name) {
  RankReport rep;
  rep.family = family;
  rep.instance = instance_name.empty() ? p.name : instance_name;
  rep.iterated = iterated;
  OperatorSpec probe{family, 1};
  if (probe.is_psd()) throw Error("rank computation supports polyhedral kinds only");
  IntegerHull hull = integer_hull(p);

  if (iterated) {
    if (family != OpKind::LS0 && family != OpKind::LS)
      throw Error("iterated rank applies to LS0/LS only");
    if (p.n > 6) throw Error("iterated rank limited to n <= 6");
    HPolytope current = p;
    for (int k = 1; k <= k_max; ++k) {
      SupportOracle oracle = relaxation_oracle(OperatorSpec{family, 1}, current);
      Projection pr = project_relaxation(oracle, p.n);
      current = projection_to_hpolytope(pr, rep.instance + "^" + std::to_string(k));
      SupportOracle next = [&current](const RatVector& c)
          -> std::optional<std::pair<Rational, RatVector>> {
        LPOutcome out = optimize(current, c);
        if (out.status != LPStatus::Optimal) return std::nullopt;
        return std::make_pair(out.value, out.point);
      };
      LevelVerdict v;
      v.k = k;
      v.equals_hull =
          equals_integer_hull(next, hull, &v.witness_direction, &v.lifted_value, &v.hull_value);
      rep.levels.push_back(v);
      if (v.equals_hull) {
        rep.rank = k;
        return rep;
      }
    }
    rep.lower_bound_only = true;
    return rep;
  }

  for (int k = 1; k <= k_max; ++k) {
    SupportOracle oracle = relaxation_oracle(OperatorSpec{family, k}, p);
    LevelVerdict v;
    v.k = k;
    v.equals_hull =
        equals_integer_hull(oracle, hull, &v.witness_direction, &v.lifted_value, &v.hull_value);
    rep.levels.push_back(v);
    if (v.equals_hull) {
      rep.rank = k;
      return rep;
    }
  }
  rep.lower_bound_only = true;
  return rep;
}

GapReport integrality_gap(const HPolytope& p, const RatVector& c, OperatorSpec spec,
                          const std::string& instance_name) {
  GapReport rep;
  rep.op = spec;
  rep.instance = instance_name.empty() ? p.name : instance_name;
  rep.direction = c;
  IntegerHull hull = integer_hull(p);
  if (hull.empty) throw Error("integrality gap requires a nonempty integer hull");
  bool have = false;
  Rational best;
  for (const auto& pt : hull.points) {
    Rational v = dot(c, pt);
    if (!have || v > best) {
      have = true;
      best = v;
    }
  }
  rep.hull_value = best;
  if (best <= 0) throw Error("integrality gap requires a positive hull optimum");
  RelaxValue rv = relax_optimize(spec, p, c);
  if (!rv.feasible) throw Error("relaxation infeasible");
  rep.exact = rv.exact;
  if (rv.exact) {
    rep.relax_value = rv.value;
    rep.relax_value_f = to_double(rv.value);
    rep.gamma = rv.value / best;
    rep.gamma_f = to_double(rep.gamma);
  } else {
    rep.relax_value_f = rv.value_f;
    rep.gamma_f = rv.value_f / to_double(best);
  }
  return rep;
}

ScanResult symmetric_scan(const HPolytope& p, std::optional<OperatorSpec> spec,
                          const SymmetryGroup* group) {
  ScanResult res;
  if (group) {
    if (!group_preserves(p, *group)) throw Error("symmetric_scan: group does not fix the instance");
    res.thm18_hypothesis = group->has_full_cycle();
  }
  RatVector ones(p.n, rat(1));
  if (!spec) {
    // max lambda with lambda*e in P directly.
    LinearProgram lp;
    lp.num_vars = 1;
    lp.bounds = {VarBounds{rat(0), rat(1)}};
    lp.objective = {rat(1)};
    for (int i = 0; i < p.m(); ++i) {
      Rational rowsum = 0;
      for (int j = 0; j < p.n; ++j) rowsum += p.A.at(i, j);
      lp.rows.push_back(LinRow{{{0, rowsum}}, Rel::LE, p.b[i]});
    }
    LPOutcome out = lp_solve(lp);
    if (out.status != LPStatus::Optimal) throw Error("symmetric_scan: empty instance");
    res.exact = true;
    res.lambda = out.value;
    res.lambda_f = to_double(out.value);
    return res;
  }
  LiftedProblem prob = build_operator(*spec, p, {});
  // Equal-coordinate rows: x_i - x_0 = 0.
  std::vector<LinRow> ties;
  for (int i = 1; i < p.n; ++i) {
    LinRow r;
    r.terms = prob.xhat[i];
    for (const auto& [v, c] : prob.xhat[0]) r.terms.push_back({v, -c});
    r.rel = Rel::EQ;
    r.rhs = 0;
    ties.push_back(std::move(r));
  }
  if (!spec->is_psd()) {
    LiftedProblem tied = prob;
    for (const LinRow& r : ties) tied.rows.push_back(r);
    LPOutcome out = lifted_optimize(tied, ones);
    if (out.status == LPStatus::Infeasible) throw Error("symmetric_scan: relaxation infeasible");
    if (out.status != LPStatus::Optimal) throw Error("symmetric_scan: unbounded");
    res.exact = true;
    res.lambda = out.value / Rational(p.n);
    res.lambda_f = to_double(res.lambda);
    return res;
  }
  SDPQuery q;
  q.prob = &prob;
  q.objective = ones;
  q.extra_rows = ties;
  SDPSolveResult out = sdp_optimize(q);
  if (out.exact_infeasible) throw Error("symmetric_scan: relaxation infeasible");
  res.exact = out.closed_by_bounds;
  if (out.closed_by_bounds) {
    res.lambda = out.exact_value / Rational(p.n);
    res.lambda_f = to_double(res.lambda);
  } else {
    res.lambda_f = out.value / double(p.n);
  }
  return res;
}

LiftedProblem symmetry_reduce(OperatorSpec spec, const HPolytope& p, const SymmetryGroup& group,
                              BuildConfig cfg) {
  if (!group_preserves(p, group))
    throw Error("symmetry_reduce: the group does not map the instance to itself");
  cfg.group = &group;
  return build_operator(spec, p, cfg);
}

DominanceReport dominance_probe(OperatorSpec weaker, OperatorSpec stronger, const HPolytope& p,
                                const std::vector<RatVector>& directions, double psd_slack) {
  DominanceReport rep;
  rep.weaker_op = weaker;
  rep.stronger_op = stronger;
  rep.instance = p.name;
  for (const RatVector& c : directions) {
    DominanceRow row;
    row.direction = c;
    row.weaker = relax_optimize(weaker, p, c);
    row.stronger = relax_optimize(stronger, p, c);
    if (!row.weaker.feasible || !row.stronger.feasible) {
      // An infeasible stronger relaxation never exceeds a feasible weaker one.
      row.respected = !row.stronger.feasible;
    } else if (row.weaker.exact && row.stronger.exact) {
      row.respected = row.stronger.value <= row.weaker.value;
    } else {
      double wv = row.weaker.exact ? to_double(row.weaker.value) : row.weaker.value_f;
      double sv = row.stronger.exact ? to_double(row.stronger.value) : row.stronger.value_f;
      row.respected = sv <= wv + psd_slack;
    }
    rep.respected = rep.respected && row.respected;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::vector<RatVector> random_directions(std::uint64_t seed, int n, int count) {
  std::mt19937_64 rng(seed);
  std::vector<RatVector> out;
  for (int t = 0; t < count; ++t) {
    RatVector c(n);
    bool any = false;
    for (int j = 0; j < n; ++j) {
      long v = long(rng() % 21) - 10;
      c[j] = v;
      if (v != 0) any = true;
    }
    if (!any) c[0] = 1;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace liftlab
