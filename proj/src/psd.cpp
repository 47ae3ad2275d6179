#include "liftlab/psd.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "liftlab/polytope.hpp"

namespace liftlab {

// ---------------------------------------------------------------------------
// Builders

LiftedProblem build_psd_problem(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg) {
  const int n = p.n;
  if (spec.kind == OpKind::LSplus) return build_ls_family(spec, p, cfg);
  if (spec.kind != OpKind::SAplus && spec.kind != OpKind::SAplusPrime)
    throw Error("build_psd_problem: unsupported kind " + spec.text());
  const int k = spec.k;
  if (k < 1 || k > n) throw Error("SA+ level out of range");
  LiftedBuilder b(p, spec, cfg);
  IndexFamily fam = gen_A(n, k);
  GenCube f = GenCube::full(n);
  int vF = b.key_var(f, f);
  b.one_expr = {{vF, Rational(1)}};
  for (int i = 0; i < n; ++i) b.xhat[i] = {{b.key_var(GenCube::one(n, i), f), Rational(1)}};
  // (SA+2): x_hat of every column in K(P); entrywise nonnegativity comes from
  // the variable bounds plus the explicit box rows below.
  for (int ci : b.column_reps(fam)) {
    const GenCube& beta = fam[ci];
    int vbeta = b.key_var(f, beta);
    LinExpr y0 = {{vbeta, Rational(1)}};
    std::vector<LinExpr> xs(n);
    for (int j = 0; j < n; ++j) {
      int vj = b.key_var(GenCube::one(n, j), beta);
      if (vj >= 0) xs[j] = {{vj, Rational(1)}};
    }
    b.emit_cone_membership(p, y0, xs, "SA+2 col " + beta.text());
    // 0 <= Y[a, beta] <= Y[F, beta] for every row of the square family.
    for (int ai = 0; ai < fam.size(); ++ai) {
      int va = b.key_var(fam[ai], beta);
      if (va < 0 || va == vbeta) continue;
      b.add_expr_row({{va, Rational(1)}, {vbeta, Rational(-1)}}, Rel::LE, 0,
                     "SA+2 box col " + beta.text());
    }
  }
  // (SA+3): partition identities over all rows of the square family.
  IndexFamily lower = gen_A(n, k - 1);
  for (int ai = 0; ai < lower.size(); ++ai) {
    const GenCube& alpha = lower[ai];
    for (int j = 0; j < n; ++j) {
      if (std::binary_search(alpha.S.begin(), alpha.S.end(), j)) continue;
      if (std::binary_search(alpha.T.begin(), alpha.T.end(), j)) continue;
      GenCube a1 = cube_intersect(alpha, GenCube::one(n, j));
      GenCube a0 = cube_intersect(alpha, GenCube::zero(n, j));
      for (int ri = 0; ri < fam.size(); ++ri) {
        LinExpr e;
        int v1 = b.key_var(fam[ri], a1);
        int v0 = b.key_var(fam[ri], a0);
        int va = b.key_var(fam[ri], alpha);
        if (v1 >= 0) e.push_back({v1, Rational(1)});
        if (v0 >= 0) e.push_back({v0, Rational(1)});
        if (va >= 0) e.push_back({va, Rational(-1)});
        b.add_expr_row(e, Rel::EQ, 0,
                       "SA+3 " + alpha.text() + " j=" + std::to_string(j + 1) + " row " +
                           fam[ri].text());
      }
    }
  }
  if (spec.kind == OpKind::SAplusPrime) {
    for (int v = 0; v < b.num_vars(); ++v)
      if (conv_meet_empty(b.var_rep(v), f, p)) b.pin_zero(v);
  }
  return b.finish(fam, fam, true);
}

// ---------------------------------------------------------------------------
// The projection engine

namespace {

struct SDPSystem {
  int N = 0;            // family size
  int nmat = 0;         // N*N matrix slots
  int nv = 0;           // total vector length (matrix + aux)
  std::vector<int> clip_aux;                 // aux indices required >= 0
  Eigen::SparseMatrix<double> A;             // affine rows
  Eigen::VectorXd rhs;
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> chol;
  std::vector<int> rep_cell;                 // per problem var: matrix slot
  bool factored = false;

  int cell(int i, int j) const { return i * N + j; }
};

// Builds the affine system over the full matrix plus slack variables.
SDPSystem build_system(const LiftedProblem& p, const RatVector* objective, double obj_level,
                       const RatVector* pin_x, const std::vector<LinRow>& extra_rows) {
  if (!p.psd) throw Error("sdp engine: problem lacks the PSD flag");
  LiftedProblem& mp = const_cast<LiftedProblem&>(p);
  ensure_entry_grid(mp);
  if (p.row_family.size() != p.col_family.size())
    throw Error("sdp engine: family is not square");
  SDPSystem s;
  s.N = p.row_family.size();
  s.nmat = s.N * s.N;
  s.rep_cell.assign(p.num_vars, -1);
  std::vector<Eigen::Triplet<double>> trip;
  std::vector<double> rhs;
  auto add_row_done = [&](double b) { rhs.push_back(b); };
  int aux = s.nmat;

  // Identification ties and empty-cell pins.
  for (int i = 0; i < s.N; ++i)
    for (int j = 0; j < s.N; ++j) {
      int v = p.entry[i][j];
      int c = s.cell(i, j);
      if (v < 0) {
        trip.push_back({int(rhs.size()), c, 1.0});
        add_row_done(0.0);
        continue;
      }
      if (s.rep_cell[v] < 0) {
        s.rep_cell[v] = c;
        continue;
      }
      trip.push_back({int(rhs.size()), c, 1.0});
      trip.push_back({int(rhs.size()), s.rep_cell[v], -1.0});
      add_row_done(0.0);
    }
  for (int v = 0; v < p.num_vars; ++v)
    if (s.rep_cell[v] < 0) s.rep_cell[v] = -1;  // never on the grid: treated as aux below

  // Vars never on the grid get their own aux slots so rows can mention them.
  for (int v = 0; v < p.num_vars; ++v)
    if (s.rep_cell[v] < 0) s.rep_cell[v] = aux++;

  auto emit_bound_rows = [&](int v) {
    const VarBounds& vb = p.bounds[v];
    int c = s.rep_cell[v];
    bool pinned = vb.lo && vb.hi && *vb.lo == *vb.hi;
    if (pinned) {
      trip.push_back({int(rhs.size()), c, 1.0});
      add_row_done(to_double(*vb.lo));
      return;
    }
    if (vb.lo) {
      if (*vb.lo == 0) {
        int sv = aux++;
        s.clip_aux.push_back(sv);
        trip.push_back({int(rhs.size()), c, 1.0});
        trip.push_back({int(rhs.size()), sv, -1.0});
        add_row_done(0.0);
      } else {
        int sv = aux++;
        s.clip_aux.push_back(sv);
        trip.push_back({int(rhs.size()), c, 1.0});
        trip.push_back({int(rhs.size()), sv, -1.0});
        add_row_done(to_double(*vb.lo));
      }
    }
    if (vb.hi) {
      int sv = aux++;
      s.clip_aux.push_back(sv);
      trip.push_back({int(rhs.size()), c, 1.0});
      trip.push_back({int(rhs.size()), sv, 1.0});
      add_row_done(to_double(*vb.hi));
    }
  };
  for (int v = 0; v < p.num_vars; ++v) emit_bound_rows(v);

  auto emit_lin_row = [&](const LinRow& r) {
    int row = int(rhs.size());
    for (const auto& [v, coef] : r.terms) trip.push_back({row, s.rep_cell[v], to_double(coef)});
    if (r.rel == Rel::LE) {
      int sv = aux++;
      s.clip_aux.push_back(sv);
      trip.push_back({row, sv, 1.0});
    } else if (r.rel == Rel::GE) {
      int sv = aux++;
      s.clip_aux.push_back(sv);
      trip.push_back({row, sv, -1.0});
    }
    add_row_done(to_double(r.rhs));
  };
  for (const LinRow& r : p.rows) emit_lin_row(r);
  for (const LinRow& r : extra_rows) emit_lin_row(r);

  // one_expr == 1
  {
    int row = int(rhs.size());
    for (const auto& [v, coef] : p.one_expr) trip.push_back({row, s.rep_cell[v], to_double(coef)});
    add_row_done(1.0);
  }
  if (pin_x) {
    for (int i = 0; i < p.n; ++i) {
      int row = int(rhs.size());
      for (const auto& [v, coef] : p.xhat[i]) trip.push_back({row, s.rep_cell[v], to_double(coef)});
      add_row_done(to_double((*pin_x)[i]));
    }
  }
  if (objective) {
    // c . x >= level
    int row = int(rhs.size());
    for (int i = 0; i < p.n; ++i)
      for (const auto& [v, coef] : p.xhat[i])
        trip.push_back({row, s.rep_cell[v], to_double((*objective)[i] * coef)});
    int sv = aux++;
    s.clip_aux.push_back(sv);
    trip.push_back({row, sv, -1.0});
    add_row_done(obj_level);
  }

  s.nv = aux;
  s.A.resize(int(rhs.size()), s.nv);
  s.A.setFromTriplets(trip.begin(), trip.end());
  s.rhs = Eigen::Map<Eigen::VectorXd>(rhs.data(), long(rhs.size()));
  Eigen::SparseMatrix<double> ata = Eigen::SparseMatrix<double>(s.A * s.A.transpose());
  // Tiny Tikhonov term guards against dependent rows.
  Eigen::SparseMatrix<double> eye(ata.rows(), ata.cols());
  eye.setIdentity();
  ata = ata + 1e-12 * eye;
  s.chol = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
  s.chol->compute(ata);
  s.factored = s.chol->info() == Eigen::Success;
  return s;
}

struct DykstraResult {
  bool feasible = false;  // a witness passed both tolerance checks
  bool stalled = false;
  double residual = 0;
  double max_lin_violation = 0;
  double min_eig = 0;
  Eigen::VectorXd point;  // the witness (or the last iterate)
  long iters = 0;
};

namespace {

// Feasibility check for a candidate: linear violation and eigenvalue floor.
void assess(const SDPSystem& s, const Eigen::VectorXd& v, double& lin_viol, double& eig) {
  Eigen::VectorXd lin = s.A * v - s.rhs;
  lin_viol = lin.size() ? lin.lpNorm<Eigen::Infinity>() : 0.0;
  FloatSymMatrix m(s.N);
  for (int i = 0; i < s.N; ++i)
    for (int j = i; j < s.N; ++j) m.set(i, j, 0.5 * (v[i * s.N + j] + v[j * s.N + i]));
  eig = min_eigenvalue(m);
  for (int idx : s.clip_aux) eig = std::min(eig, v[idx]);
}

}  // namespace

DykstraResult run_dykstra(const SDPSystem& s, const SDPConfig& cfg, Eigen::VectorXd start,
                          std::vector<std::string>* trace) {
  DykstraResult res;
  if (!s.factored) return res;
  Eigen::VectorXd x = std::move(start);
  if (x.size() != s.nv) x = Eigen::VectorXd::Zero(s.nv);
  Eigen::VectorXd corr = Eigen::VectorXd::Zero(s.nv);
  const int N = s.N;
  double best_resid = 1e300;
  double checkpoint_resid = 1e300;
  Eigen::VectorXd a(s.nv), b(s.nv);
  for (long it = 0; it < cfg.max_iters; ++it) {
    res.iters = it;
    // Affine projection.
    Eigen::VectorXd r = s.A * x - s.rhs;
    Eigen::VectorXd lam = s.chol->solve(r);
    a = x - s.A.transpose() * lam;
    // Cone projection with the Dykstra correction.
    Eigen::VectorXd w = a + corr;
    b = w;
    FloatSymMatrix m(N);
    for (int i = 0; i < N; ++i)
      for (int j = i; j < N; ++j) m.set(i, j, 0.5 * (w[i * N + j] + w[j * N + i]));
    FloatSymMatrix mp = psd_nearest(m);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) b[i * N + j] = mp.at(i, j);
    for (int idx : s.clip_aux) b[idx] = std::max(0.0, b[idx]);
    corr = w - b;
    double resid = (a - b).lpNorm<Eigen::Infinity>();
    x = b;
    best_resid = std::min(best_resid, resid);
    if (trace && (it % 50 == 0)) {
      std::ostringstream os;
      os << it << "," << resid << "," << min_eigenvalue(mp);
      trace->push_back(os.str());
    }
    // Witness check from either side every few iterations.
    if (resid <= 64 * cfg.tol_lin || (it % 64) == 63) {
      double lv, ev;
      assess(s, b, lv, ev);
      if (lv <= cfg.tol_lin && ev >= -cfg.tol_psd) {
        res.feasible = true;
        res.point = b;
        res.max_lin_violation = lv;
        res.min_eig = ev;
        res.residual = resid;
        return res;
      }
      assess(s, a, lv, ev);
      if (lv <= cfg.tol_lin && ev >= -cfg.tol_psd) {
        res.feasible = true;
        res.point = a;
        res.max_lin_violation = lv;
        res.min_eig = ev;
        res.residual = resid;
        return res;
      }
    }
    if ((it + 1) % cfg.stall_window == 0) {
      // Plateau test: the residual settles above the decision band.
      if (best_resid > 10 * cfg.tol_lin && best_resid > (1.0 - 1e-3) * checkpoint_resid) {
        res.stalled = true;
        break;
      }
      checkpoint_resid = best_resid;
    }
  }
  res.point = x;
  assess(s, x, res.max_lin_violation, res.min_eig);
  res.residual = best_resid;
  return res;
}

std::vector<double> vars_from_point(const LiftedProblem& p, const SDPSystem& s,
                                    const Eigen::VectorXd& x) {
  std::vector<double> v(p.num_vars, 0.0);
  for (int i = 0; i < p.num_vars; ++i) v[i] = x[s.rep_cell[i]];
  return v;
}

}  // namespace

Certificate certificate_from_vars(const LiftedProblem& p, const std::vector<double>& vars) {
  RatVector rv(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) rv[i] = Rational(vars[i]);
  return extract_certificate(p, rv);
}

SDPSolveResult sdp_optimize(const SDPQuery& q) {
  const LiftedProblem& p = *q.prob;
  const SDPConfig& cfg = q.cfg;
  SDPSolveResult out;
  if (q.objective.empty()) throw Error("sdp_optimize: empty objective");

  // Exact upper bound from the linear part.
  LiftedProblem lp_part = p;
  lp_part.psd = false;
  LiftedSolveConfig scfg;
  LPOutcome ub;
  {
    SDPQuery dummy;
    (void)dummy;
    if (q.extra_rows.empty()) {
      ub = lifted_solve(lp_part, &q.objective, q.pin_x ? &*q.pin_x : nullptr, scfg);
    } else {
      LiftedProblem with_extra = lp_part;
      for (const LinRow& r : q.extra_rows) with_extra.rows.push_back(r);
      ub = lifted_solve(with_extra, &q.objective, q.pin_x ? &*q.pin_x : nullptr, scfg);
    }
  }
  if (ub.status == LPStatus::Infeasible) {
    out.exact_infeasible = true;
    out.status = SDPStatus::LikelyInfeasible;
    return out;
  }
  if (ub.status == LPStatus::Unbounded) throw Error("sdp_optimize: linear part unbounded");
  out.lp_upper_valid = true;
  out.lp_upper = ub.value;

  // Exact lower bound via integral certificates (when applicable).
  bool have_lb = false;
  Rational lb_exact;
  std::uint32_t lb_mask = 0;
  if (!q.pin_x && q.extra_rows.empty() && p.n <= 21) {
    IntegerHull hull = integer_hull(p.base);
    for (std::uint32_t mask : hull.point_masks) {
      Rational val = 0;
      for (int i = 0; i < p.n; ++i)
        if ((mask >> i) & 1) val += q.objective[i];
      if (!have_lb || val > lb_exact) {
        have_lb = true;
        lb_exact = val;
        lb_mask = mask;
      }
    }
  }
  if (have_lb && lb_exact == ub.value) {
    out.closed_by_bounds = true;
    out.exact_value = lb_exact;
    out.value = to_double(lb_exact);
    out.status = SDPStatus::FeasibleWithin;
    Certificate cert = integral_operator_certificate(p, lb_mask);
    out.vars.assign(p.num_vars, 0.0);
    // Recover variable values from the integral certificate grid.
    LiftedProblem& mp = const_cast<LiftedProblem&>(p);
    ensure_entry_grid(mp);
    for (int i = 0; i < p.row_family.size(); ++i)
      for (int j = 0; j < p.col_family.size(); ++j) {
        int v = p.entry[i][j];
        if (v >= 0) out.vars[v] = to_double(cert.Y.at(i, j));
      }
    return out;
  }

  double lo = have_lb ? to_double(lb_exact) : -1e18;
  double hi = to_double(ub.value);
  std::vector<double> best_vars;
  double best_violation = 0, best_eig = 0;

  // Establish a feasible starting value when no integral bound exists.
  Eigen::VectorXd warm;
  {
    SDPSystem s = build_system(p, nullptr, 0.0, q.pin_x ? &*q.pin_x : nullptr, q.extra_rows);
    DykstraResult r = run_dykstra(s, cfg, Eigen::VectorXd(), cfg.keep_trace ? &out.trace : nullptr);
    if (r.feasible) {
      std::vector<double> v = vars_from_point(p, s, r.point);
      double val = 0;
      for (int i = 0; i < p.n; ++i) {
        double xi = 0;
        for (const auto& [vv, c] : p.xhat[i]) xi += to_double(c) * v[vv];
        val += to_double(q.objective[i]) * xi;
      }
      if (val > lo) {
        lo = val;
        best_vars = v;
        best_violation = r.max_lin_violation;
        best_eig = r.min_eig;
      }
      warm = r.point;
    } else if (!have_lb) {
      out.status = r.stalled ? SDPStatus::LikelyInfeasible : SDPStatus::Inconclusive;
      out.max_lin_violation = r.max_lin_violation;
      out.min_eig = r.min_eig;
      return out;
    }
  }

  while (hi - lo > cfg.gap) {
    double mid = 0.5 * (lo + hi);
    SDPSystem s = build_system(p, &q.objective, mid, q.pin_x ? &*q.pin_x : nullptr, q.extra_rows);
    Eigen::VectorXd start = Eigen::VectorXd::Zero(s.nv);
    if (warm.size() >= s.nmat)
      for (int i = 0; i < s.nmat; ++i) start[i] = warm[i];
    DykstraResult r = run_dykstra(s, cfg, start, cfg.keep_trace ? &out.trace : nullptr);
    if (r.feasible) {
      lo = mid;
      best_vars = vars_from_point(p, s, r.point);
      best_violation = r.max_lin_violation;
      best_eig = r.min_eig;
      warm = r.point;
    } else {
      hi = mid;
    }
  }

  if (best_vars.empty()) {
    // Fall back to the exact integral witness if we have one.
    if (have_lb) {
      out.value = to_double(lb_exact);
      out.status = SDPStatus::FeasibleWithin;
      return out;
    }
    out.status = SDPStatus::Inconclusive;
    return out;
  }
  out.value = lo;
  out.vars = std::move(best_vars);
  out.max_lin_violation = best_violation;
  out.min_eig = best_eig;
  out.status = SDPStatus::FeasibleWithin;
  return out;
}

SDPSolveResult sdp_membership(const LiftedProblem& p, const RatVector& x, const SDPConfig& cfg) {
  SDPSolveResult out;
  // Exact pre-check of the linear part.
  LiftedProblem lp_part = p;
  lp_part.psd = false;
  LPOutcome lin = lifted_solve(lp_part, nullptr, &x, {});
  if (lin.status == LPStatus::Infeasible) {
    out.exact_infeasible = true;
    out.status = SDPStatus::LikelyInfeasible;
    return out;
  }
  SDPSystem s = build_system(p, nullptr, 0.0, &x, {});
  DykstraResult r = run_dykstra(s, cfg, Eigen::VectorXd(), cfg.keep_trace ? &out.trace : nullptr);
  out.max_lin_violation = r.max_lin_violation;
  out.min_eig = r.min_eig;
  if (r.feasible) {
    out.status = SDPStatus::FeasibleWithin;
    out.vars = vars_from_point(p, s, r.point);
  } else {
    out.status = r.stalled ? SDPStatus::LikelyInfeasible : SDPStatus::Inconclusive;
  }
  return out;
}

// ---------------------------------------------------------------------------
// l-established machinery

EstablishedProfile check_l_established(const Certificate& y, int level, double tol_psd) {
  EstablishedProfile prof;
  const int n = y.n;
  auto fail = [&prof](const std::string& w) {
    if (prof.witness.empty()) prof.witness = w;
  };
  auto fidx = y.rows.find(GenCube::full(n));
  prof.l1 = fidx && y.cols.find(GenCube::full(n)) &&
            y.Y.at(*fidx, *y.cols.find(GenCube::full(n))) == 1;
  if (!prof.l1) fail("(l1) Y[F,F] = 1");
  // (l2) PSD: exact when possible, else the eigenvalue floor.
  if (y.Y.rows() == y.Y.cols() && y.Y.is_symmetric()) {
    prof.l2 = y.Y.is_psd() || min_eigenvalue(FloatSymMatrix::from_rational(y.Y)) >= -tol_psd;
  } else {
    prof.l2 = false;
  }
  if (!prof.l2) fail("(l2) Y PSD");
  IndexFamily alp = gen_A(n, level, true);
  prof.l3 = true;
  for (int i = 0; i < alp.size(); ++i) {
    if (!y.rows.find(alp[i]) || !y.cols.find(alp[i])) {
      prof.l3 = false;
      fail("(l3) family lacks " + alp[i].text());
      break;
    }
  }
  prof.l4 = true;
  prof.l5 = true;
  if (prof.l3) {
    std::map<IndexSet, Rational> union_val;
    for (int a = 0; a < alp.size() && prof.l4; ++a)
      for (int b = 0; b < alp.size(); ++b) {
        IndexSet u;
        std::set_union(alp[a].S.begin(), alp[a].S.end(), alp[b].S.begin(), alp[b].S.end(),
                       std::back_inserter(u));
        Rational val = y.Y.at(*y.rows.find(alp[a]), *y.cols.find(alp[b]));
        auto it = union_val.find(u);
        if (it == union_val.end()) {
          union_val.emplace(u, val);
        } else if (it->second != val) {
          prof.l4 = false;
          fail("(l4) split invariance at Y[" + alp[a].text() + ", " + alp[b].text() + "]");
          break;
        }
      }
    auto fr = *y.rows.find(GenCube::full(n));
    for (int a = 0; a < alp.size() && prof.l5; ++a)
      for (int b = 0; b < alp.size(); ++b) {
        auto cb = *y.cols.find(alp[b]);
        if (y.Y.at(fr, cb) < y.Y.at(*y.rows.find(alp[a]), cb)) {
          prof.l5 = false;
          fail("(l5) Y[F,b] >= Y[a,b] at Y[" + alp[a].text() + ", " + alp[b].text() + "]");
          break;
        }
      }
  } else {
    prof.l4 = prof.l5 = false;
  }
  return prof;
}

RatVector z_vector(const Certificate& y, int level) {
  const int n = y.n;
  EstablishedProfile prof = check_l_established(y, level, 1e-6);
  if (!prof.l3) throw Error("z_vector: (l3) fails; " + prof.witness);
  if (!prof.l4) throw Error("z_vector: (l4) fails; " + prof.witness);
  // y_S = Y[S'|1, S''|1] for any split; invariance holds by (l4).
  RatVector z(2 * level + 1, Rational(0));
  std::function<void(IndexSet&, int)> rec = [&](IndexSet& cur, int start) {
    if (int(cur.size()) > 2 * level) return;
    if (!cur.empty() || true) {
      if (int(cur.size()) <= 2 * level) {
        // split into first half/second half
        IndexSet s1(cur.begin(), cur.begin() + (cur.size() + 1) / 2);
        IndexSet s2(cur.begin() + (cur.size() + 1) / 2, cur.end());
        if (int(s1.size()) <= level && int(s2.size()) <= level) {
          auto r = y.rows.find(GenCube::fixed(n, s1, {}));
          auto c = y.cols.find(GenCube::fixed(n, s2, {}));
          if (r && c) z[cur.size()] += y.Y.at(*r, *c);
        }
      }
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(cur, i + 1);
      cur.pop_back();
    }
  };
  IndexSet cur;
  rec(cur, 0);
  return z;
}

namespace {
Rational binom(long p, long i) {
  if (i < 0) return 0;
  Rational r = 1;
  for (long t = 0; t < i; ++t) r *= rat(p - t, t + 1);
  return r < 0 ? Rational(0) : r;
}
}  // namespace

ZiupResult ziup_check(const RatVector& z, long p, int level) {
  ZiupResult r;
  if (int(z.size()) != 2 * level + 1) throw Error("ziup_check: Z length must be 2l+1");
  if (p < level) throw Error("ziup_check: requires p >= l");
  r.hypothesis = true;
  for (int i = level; i <= 2 * level - 1; ++i) {
    if (z[i + 1] * Rational(i + 1) > Rational(p - i) * z[i]) {
      r.hypothesis = false;
      r.witness = "Z_" + std::to_string(i + 1) + " > ((p-i)/(i+1)) Z_" + std::to_string(i);
      break;
    }
  }
  r.implied_bounds.resize(2 * level + 1);
  for (int i = 0; i <= 2 * level; ++i) r.implied_bounds[i] = binom(p, i);
  r.bounds_hold = true;
  for (int i = 1; i <= 2 * level; ++i)
    if (z[i] > r.implied_bounds[i]) {
      r.bounds_hold = false;
      if (r.witness.empty()) r.witness = "Z_" + std::to_string(i) + " exceeds C(p,i)";
      break;
    }
  r.cor13_applies = true;
  for (int i = level + 1; i <= 2 * level; ++i)
    if (z[i] != 0) r.cor13_applies = false;
  if (r.cor13_applies) r.cor13_bound_ok = z[1] <= Rational(level);
  return r;
}

Certificate saplus_certificate(const RatVector& x, const HPolytope& p, int k) {
  const int n = p.n;
  if (int(x.size()) != n) throw Error("saplus_certificate: dimension mismatch");
  for (int i = 0; i < n; ++i)
    if (x[i] < 0 || x[i] > 1) throw Error("saplus_certificate: x outside the unit box");
  // Precondition: all switchings with |I| + |J| <= k stay in P.
  IndexFamily ak = gen_A(n, k);
  for (int c = 0; c < ak.size(); ++c) {
    const GenCube& cube = ak[c];
    RatVector sw = x;
    for (int i : cube.S) sw[i] = 1;
    for (int i : cube.T) sw[i] = 0;
    if (!p.contains(sw)) {
      std::string msg = "saplus_certificate: switching I={";
      for (std::size_t t = 0; t < cube.S.size(); ++t)
        msg += (t ? "," : "") + std::to_string(cube.S[t] + 1);
      msg += "} J={";
      for (std::size_t t = 0; t < cube.T.size(); ++t)
        msg += (t ? "," : "") + std::to_string(cube.T[t] + 1);
      msg += "} leaves P";
      throw Error(msg);
    }
  }
  Certificate cert;
  cert.spec = OperatorSpec{OpKind::SAplus, k};
  cert.n = n;
  cert.rows = ak;
  cert.cols = ak;
  cert.Y = RatMatrix(ak.size(), ak.size());
  for (int a = 0; a < ak.size(); ++a)
    for (int b = 0; b < ak.size(); ++b) {
      const GenCube& al = ak[a];
      const GenCube& be = ak[b];
      GenCube meet = cube_intersect(al, be);
      if (meet.empty) continue;
      Rational v = 1;
      IndexSet su, tu;
      std::set_union(al.S.begin(), al.S.end(), be.S.begin(), be.S.end(), std::back_inserter(su));
      std::set_union(al.T.begin(), al.T.end(), be.T.begin(), be.T.end(), std::back_inserter(tu));
      for (int i : su) v *= x[i];
      for (int i : tu) v *= (Rational(1) - x[i]);
      cert.Y.at(a, b) = v;
    }
  cert.xhat.resize(n + 1);
  cert.xhat[0] = 1;
  for (int i = 0; i < n; ++i) cert.xhat[i + 1] = x[i];
  return cert;
}

}  // namespace liftlab
