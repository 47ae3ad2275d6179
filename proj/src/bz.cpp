#include "liftlab/bz.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace liftlab {

BZVariant bz_variant_of(OpKind kind) {
  switch (kind) {
    case OpKind::BZ:
    case OpKind::BZplus:
      return BZVariant::Original;
    case OpKind::BZprime:
    case OpKind::BZprimePlus:
      return BZVariant::Prime;
    case OpKind::BZdoubleprime:
    case OpKind::BZdoubleprimePlus:
      return BZVariant::DoublePrime;
    default:
      throw Error("not a BZ-family operator");
  }
}

namespace {

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

void enum_subsets_of(const IndexSet& base, int max_size,
                     const std::function<void(const IndexSet&)>& fn) {
  IndexSet cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    fn(cur);
    if (int(cur.size()) == max_size) return;
    for (std::size_t i = start; i < base.size(); ++i) {
      cur.push_back(base[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::vector<Obstruction> gen_obstructions(const HPolytope& p, int k) {
  if (!p.is_lower_comprehensive())
    throw Error("obstruction generation requires the lower-comprehensive form A >= 0, b > 0");
  std::set<IndexSet> seen;
  std::vector<Obstruction> out;
  for (int i = 0; i < p.m(); ++i) {
    IndexSet supp;
    for (int j = 0; j < p.n; ++j)
      if (p.A.at(i, j) > 0) supp.push_back(j);
    const int s = int(supp.size());
    auto consider = [&](const IndexSet& o) {
      if (o.empty()) return;
      if (!(int(o.size()) <= k + 1 || int(o.size()) >= s - (k + 1))) return;
      Rational sum = 0;
      for (int j : o) sum += p.A.at(i, j);
      if (sum <= p.b[i]) return;
      if (seen.insert(o).second) out.push_back(Obstruction{o, i});
    };
    enum_subsets_of(supp, std::min(k + 1, s), consider);
    enum_subsets_of(supp, k + 1, [&](const IndexSet& removed) {
      IndexSet o = set_difference(supp, removed);
      if (int(o.size()) >= s - (k + 1)) consider(o);
    });
  }
  std::sort(out.begin(), out.end(), [](const Obstruction& a, const Obstruction& b) {
    if (a.O.size() != b.O.size()) return a.O.size() < b.O.size();
    return a.O < b.O;
  });
  return out;
}

HPolytope refine_Ok(const HPolytope& p, int k) {
  std::vector<Obstruction> obs = gen_obstructions(p, k);
  std::vector<std::pair<RatVector, Rational>> rows;
  std::set<std::pair<RatVector, Rational>> seen;
  for (int i = 0; i < p.m(); ++i) {
    auto row = std::make_pair(p.A.row(i), p.b[i]);
    if (seen.insert(row).second) rows.push_back(row);
  }
  for (const Obstruction& o : obs) {
    RatVector coeffs(p.n, Rational(0));
    for (int j : o.O) coeffs[j] = 1;
    auto row = std::make_pair(std::move(coeffs), Rational(long(o.O.size()) - 1));
    if (seen.insert(row).second) rows.push_back(row);
  }
  std::string name = "O" + std::to_string(k) + "(" + p.name + ")";
  return HPolytope::make(p.n, std::move(rows), name);
}

WallSet gen_walls(BZVariant v, const std::vector<Obstruction>& obs, int k, int n) {
  std::set<IndexSet> walls;
  const int m = int(obs.size());
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int start) {
    if (!chosen.empty()) {
      const int d = int(chosen.size());
      IndexSet base;
      for (int a = 0; a < d; ++a)
        for (int b2 = a + 1; b2 < d; ++b2)
          base = set_union(base, set_intersection(obs[chosen[a]].O, obs[chosen[b2]].O));
      if (v == BZVariant::Prime) {
        // Repetition allowed: repeating an obstruction contributes it whole.
        int budget = k + 1 - d;
        IndexSet chosen_ids(chosen.begin(), chosen.end());
        enum_subsets_of(chosen_ids, budget, [&](const IndexSet& rep) {
          IndexSet w = base;
          for (int r : rep) w = set_union(w, obs[r].O);
          if (!w.empty()) walls.insert(w);
        });
      } else {
        if (!base.empty()) walls.insert(base);
      }
    }
    if (int(chosen.size()) == k + 1) return;
    for (int i = start; i < m; ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  if (v == BZVariant::Prime || v == BZVariant::DoublePrime)
    for (int i = 0; i < n; ++i) walls.insert(IndexSet{i});
  WallSet out;
  out.walls.assign(walls.begin(), walls.end());
  std::sort(out.walls.begin(), out.walls.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

TierSet gen_tiers(BZVariant v, const WallSet& walls, int k, long cap) {
  std::set<IndexSet> tiers;
  tiers.insert(IndexSet{});
  const int w = int(walls.walls.size());
  std::set<IndexSet> unions;
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int start) {
    if (!chosen.empty()) {
      IndexSet u;
      for (int c : chosen) u = set_union(u, walls.walls[c]);
      unions.insert(std::move(u));
    }
    if (int(chosen.size()) == k) return;
    for (int i = start; i < w; ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  if (v == BZVariant::Prime) {
    std::vector<IndexSet> maximal;
    for (const IndexSet& u : unions) {
      bool dominated = false;
      for (const IndexSet& u2 : unions)
        if (u2.size() > u.size() && std::includes(u2.begin(), u2.end(), u.begin(), u.end())) {
          dominated = true;
          break;
        }
      if (!dominated) maximal.push_back(u);
    }
    for (const IndexSet& u : maximal) {
      enum_subsets_of(u, int(u.size()), [&](const IndexSet& s) {
        tiers.insert(s);
        if (long(tiers.size()) > cap)
          throw Error("tier enumeration cap exceeded (" + std::to_string(tiers.size()) + ")");
      });
    }
  } else {
    for (const IndexSet& u : unions) tiers.insert(u);
  }
  TierSet out;
  out.tiers.assign(tiers.begin(), tiers.end());
  std::sort(out.tiers.begin(), out.tiers.end(), [](const IndexSet& a, const IndexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

TierSet prune_useless_tiers(BZVariant, const TierSet& tiers, int k, const HPolytope& p) {
  TierSet out;
  for (const IndexSet& s : tiers.tiers) {
    if (int(s.size()) > k) {
      RatVector c(p.n, Rational(0));
      for (int i : s) c[i] = 1;
      LPOutcome r = optimize(p, c);
      if (r.status == LPStatus::Optimal && r.value < Rational(long(s.size()) - k)) continue;
    }
    out.tiers.push_back(s);
  }
  return out;
}

namespace {

struct VarForm {
  IndexSet S, T;
  bool capped = false;
  IndexSet U;
  int r = 0;
  int tier = -1;

  GenCube cube(int n) const {
    GenCube c;
    c.n = n;
    c.S = S;
    c.T = T;
    if (capped) c.caps.push_back(CardCap{U, r});
    return normalize(c);
  }
};

// The (17)/(18) wall-partition identities of the original BZ: one per choice
// of a distinguished last wall and a complementation of the rest.
struct SumDecomp {
  IndexSet rest_S;
  IndexSet rest_T;
  IndexSet last;
};

struct BZForms {
  std::vector<VarForm> forms;
  std::vector<SumDecomp> decomps;
};

BZForms generate_forms(BZVariant variant, const TierSet& tiers, const WallSet& walls, int k,
                       int usum_cap) {
  BZForms out;
  std::set<std::tuple<IndexSet, IndexSet, bool, IndexSet, int>> form_seen;
  auto add_form = [&](VarForm f) {
    auto key = std::make_tuple(f.S, f.T, f.capped, f.U, f.r);
    if (!form_seen.insert(key).second) return;
    out.forms.push_back(std::move(f));
  };

  if (variant == BZVariant::Prime) {
    for (std::size_t ti = 0; ti < tiers.tiers.size(); ++ti) {
      const IndexSet& S = tiers.tiers[ti];
      enum_subsets_of(S, std::min<int>(k, int(S.size())), [&](const IndexSet& T) {
        VarForm f;
        f.S = set_difference(S, T);
        f.T = T;
        f.tier = int(ti);
        add_form(std::move(f));
      });
      enum_subsets_of(S, std::min<int>(k - 1, int(S.size())), [&](const IndexSet& T) {
        IndexSet rest = set_difference(S, T);
        if (int(rest.size()) > 2 * usum_cap)
          throw Error("BZ' remainder enumeration cap exceeded");
        enum_subsets_of(rest, int(rest.size()), [&](const IndexSet& U) {
          if (int(U.size()) + int(T.size()) <= k) return;
          VarForm f;
          f.S = set_difference(rest, U);
          f.T = T;
          f.capped = true;
          f.U = U;
          f.r = int(U.size()) - (k - int(T.size()));
          f.tier = int(ti);
          add_form(std::move(f));
        });
      });
    }
    return out;
  }

  // Original / DoublePrime: walk the distinct wall subsets of size <= k.
  std::map<IndexSet, int> tier_index;
  for (std::size_t ti = 0; ti < tiers.tiers.size(); ++ti) tier_index[tiers.tiers[ti]] = int(ti);
  const int w = int(walls.walls.size());
  std::set<std::tuple<IndexSet, IndexSet, IndexSet>> decomp_seen;
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int start) {
    IndexSet S;
    for (int c : chosen) S = set_union(S, walls.walls[c]);
    auto it = tier_index.find(S);
    if (it != tier_index.end()) {
      const int ti = it->second;
      enum_subsets_of(S, std::min<int>(k, int(S.size())), [&](const IndexSet& T) {
        VarForm f;
        f.S = set_difference(S, T);
        f.T = T;
        f.tier = ti;
        add_form(std::move(f));
      });
      for (std::size_t li = 0; li < chosen.size(); ++li) {
        const IndexSet& last = walls.walls[chosen[li]];
        IndexSet rest_s;
        for (std::size_t o = 0; o < chosen.size(); ++o)
          if (o != li) rest_s = set_union(rest_s, walls.walls[chosen[o]]);
        enum_subsets_of(rest_s, std::min<int>(k, int(rest_s.size())), [&](const IndexSet& Tr) {
          if (decomp_seen.insert(std::make_tuple(rest_s, Tr, last)).second)
            out.decomps.push_back(SumDecomp{rest_s, Tr, last});
          if (int(last.size()) + int(Tr.size()) <= k) return;  // eq (17): no remainder form
          int tl = k - int(Tr.size());
          if (tl >= 0 && tl <= int(last.size()) - 1) {
            VarForm f;
            f.S = set_difference(rest_s, Tr);
            f.T = Tr;
            f.capped = true;
            f.U = last;
            f.r = int(last.size()) - tl;
            f.tier = ti;
            add_form(std::move(f));
          }
        });
      }
    }
    if (int(chosen.size()) == k) return;
    for (int i = start; i < w; ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

struct FamilyResult {
  IndexFamily family{0};
  std::vector<int> tier_of;
};

FamilyResult make_family(const BZForms& forms, int n) {
  FamilyResult r;
  r.family = IndexFamily(n);
  r.family.add(GenCube::full(n));
  r.tier_of.push_back(-1);
  for (int i = 0; i < n; ++i) {
    if (r.family.add(GenCube::one(n, i)) == int(r.tier_of.size())) r.tier_of.push_back(-1);
    if (r.family.add(GenCube::zero(n, i)) == int(r.tier_of.size())) r.tier_of.push_back(-1);
  }
  for (const VarForm& f : forms.forms) {
    GenCube c = f.cube(n);
    if (c.empty) continue;
    if (r.family.add(c) == int(r.tier_of.size())) r.tier_of.push_back(f.tier);
  }
  return r;
}

}  // namespace

BZFamily gen_bz_variables(BZVariant v, const TierSet& tiers, const WallSet& walls, int k, int n) {
  BZForms forms = generate_forms(v, tiers, walls, k, 12);
  FamilyResult fr = make_family(forms, n);
  return BZFamily{std::move(fr.family), std::move(fr.tier_of)};
}

LiftedProblem build_bz(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg) {
  const BZVariant variant = bz_variant_of(spec.kind);
  const int k = spec.k;
  const int n = p.n;
  if (k < 1) throw Error("BZ level must be at least 1");
  std::vector<Obstruction> obs = gen_obstructions(p, k);
  HPolytope ok = refine_Ok(p, k);
  WallSet walls = gen_walls(variant, obs, k, n);
  TierSet tiers = gen_tiers(variant, walls, k, cfg.cap_tiers);
  if (cfg.prune_tiers) tiers = prune_useless_tiers(variant, tiers, k, p);
  BZForms gen = generate_forms(variant, tiers, walls, k, cfg.cap_usum);
  FamilyResult famr = make_family(gen, n);
  const IndexFamily& fam = famr.family;

  LiftedBuilder b(p, spec, cfg);
  GenCube f = GenCube::full(n);
  int vF = b.key_var(f, f);
  b.one_expr = {{vF, Rational(1)}};
  for (int i = 0; i < n; ++i) b.xhat[i] = {{b.key_var(GenCube::one(n, i), f), Rational(1)}};

  const bool tags = cfg.want_tags;
  for (int ci : b.column_reps(fam)) {
    const GenCube& beta = fam[ci];
    int vbeta = b.key_var(f, beta);
    std::string ctag = tags ? " col " + beta.text() : std::string();
    auto T = [&](const char* s) { return tags ? std::string(s) + ctag : std::string(); };
    for (int ai = 0; ai < fam.size(); ++ai) {
      int va = b.key_var(fam[ai], beta);
      if (va < 0 || va == vbeta) continue;
      b.add_expr_row({{va, Rational(1)}, {vbeta, Rational(-1)}}, Rel::LE, 0, T("BZ2(i)"));
    }
    {
      LinExpr y0 = {{vbeta, Rational(1)}};
      std::vector<LinExpr> xs(n);
      for (int j = 0; j < n; ++j) {
        int vj = b.key_var(GenCube::one(n, j), beta);
        if (vj >= 0) xs[j] = {{vj, Rational(1)}};
      }
      b.emit_cone_membership(ok, y0, xs, T("BZ2(ii) x_hat in K(O_k(P))"));
    }
    for (int i = 0; i < n; ++i) {
      LinExpr e;
      int v1 = b.key_var(GenCube::one(n, i), beta);
      int v0 = b.key_var(GenCube::zero(n, i), beta);
      if (v1 >= 0) e.push_back({v1, Rational(1)});
      if (v0 >= 0) e.push_back({v0, Rational(1)});
      e.push_back({vbeta, Rational(-1)});
      b.add_expr_row(e, Rel::EQ, 0, T("BZ2(iii) y_i1 + y_i0 = y_F"));
    }
    for (const VarForm& vf : gen.forms) {
      GenCube alpha = vf.cube(n);
      if (alpha.empty) continue;
      int va = b.key_var(alpha, beta);
      if (va < 0) continue;
      for (int i : vf.S) {
        int vi = b.key_var(GenCube::one(n, i), beta);
        LinExpr e = {{va, Rational(1)}};
        if (vi >= 0) e.push_back({vi, Rational(-1)});
        b.add_expr_row(e, Rel::LE, 0, T("BZ2 y_i1 >= y_a"));
      }
      for (int i : vf.T) {
        int vi = b.key_var(GenCube::zero(n, i), beta);
        LinExpr e = {{va, Rational(1)}};
        if (vi >= 0) e.push_back({vi, Rational(-1)});
        b.add_expr_row(e, Rel::LE, 0, T("BZ2 y_i0 >= y_a"));
      }
      if (!vf.capped) {
        LinExpr e;
        for (int i : vf.S) {
          int vi = b.key_var(GenCube::one(n, i), beta);
          if (vi >= 0) e.push_back({vi, Rational(1)});
        }
        for (int i : vf.T) {
          int vi = b.key_var(GenCube::zero(n, i), beta);
          if (vi >= 0) e.push_back({vi, Rational(1)});
        }
        e.push_back({va, Rational(-1)});
        e.push_back({vbeta, Rational(-(long(vf.S.size()) + long(vf.T.size()) - 1))});
        b.add_expr_row(e, Rel::LE, 0, T("BZ2(iv) support span"));
        if (variant == BZVariant::Prime) {
          for (int i : vf.T) {
            IndexSet Ti = set_difference(vf.T, IndexSet{i});
            IndexSet Si = set_union(vf.S, IndexSet{i});
            LinExpr e2 = {{va, Rational(1)}};
            int vu = b.key_var(GenCube::fixed(n, Si, Ti), beta);
            int vb2 = b.key_var(GenCube::fixed(n, vf.S, Ti), beta);
            if (vu >= 0) e2.push_back({vu, Rational(1)});
            if (vb2 >= 0) e2.push_back({vb2, Rational(-1)});
            b.add_expr_row(e2, Rel::EQ, 0, T("BZ'2 complement pair sum"));
          }
        }
      } else {
        LinExpr e;
        for (int i : vf.U) {
          int vi = b.key_var(GenCube::zero(n, i), beta);
          if (vi >= 0) e.push_back({vi, Rational(1)});
        }
        e.push_back({va, Rational(-(long(vf.U.size()) - (vf.r - 1)))});
        b.add_expr_row(e, Rel::GE, 0, T("BZ2(v) cap lower bound"));
        if (variant == BZVariant::Prime) {
          if (int(vf.U.size()) > cfg.cap_usum)
            throw Error("BZ' partition sum cap exceeded: |U| = " + std::to_string(vf.U.size()));
          LinExpr e2 = {{va, Rational(1)}};
          int vbase = b.key_var(GenCube::fixed(n, vf.S, vf.T), beta);
          if (vbase >= 0) e2.push_back({vbase, Rational(-1)});
          enum_subsets_of(vf.U, int(vf.U.size()), [&](const IndexSet& up) {
            if (int(up.size()) < vf.r) return;
            GenCube cell = GenCube::fixed(n, set_union(vf.S, up),
                                          set_union(vf.T, set_difference(vf.U, up)));
            int vc = b.key_var(cell, beta);
            if (vc >= 0) e2.push_back({vc, Rational(1)});
          });
          b.add_expr_row(e2, Rel::EQ, 0, T("BZ'2(v) remainder partition"));
        }
      }
    }
    if (variant != BZVariant::Prime) {
      for (const auto& dc : gen.decomps) {
        IndexSet rest_ones = set_difference(dc.rest_S, dc.rest_T);
        int vrhs = b.key_var(GenCube::fixed(n, rest_ones, dc.rest_T), beta);
        LinExpr e;
        if (vrhs >= 0) e.push_back({vrhs, Rational(-1)});
        const bool full = int(dc.last.size()) + int(dc.rest_T.size()) <= k;
        const int r = k - int(dc.rest_T.size());
        if (int(dc.last.size()) > cfg.cap_usum)
          throw Error("BZ partition sum cap exceeded: |W| = " + std::to_string(dc.last.size()));
        enum_subsets_of(dc.last, int(dc.last.size()), [&](const IndexSet& u) {
          if (!full && int(u.size()) > r) return;
          GenCube cell = GenCube::fixed(n, set_union(rest_ones, set_difference(dc.last, u)),
                                        set_union(dc.rest_T, u));
          int vc = b.key_var(cell, beta);
          if (vc >= 0) e.push_back({vc, Rational(1)});
        });
        if (!full) {
          GenCube rem;
          rem.n = n;
          rem.S = rest_ones;
          rem.T = dc.rest_T;
          rem.caps.push_back(CardCap{dc.last, int(dc.last.size()) - r});
          rem = normalize(rem);
          if (!rem.empty) {
            int vr = b.key_var(rem, beta);
            if (vr >= 0) e.push_back({vr, Rational(1)});
          }
        }
        b.add_expr_row(e, Rel::EQ, 0, T("BZ2(vi) wall partition"));
      }
    }
  }

  // Zero rules.
  for (int v = 0; v < b.num_vars(); ++v) {
    const GenCube& rep = b.var_rep(v);
    if (rep.empty) continue;
    if (variant == BZVariant::Original) {
      // (BZ3): the intersection is contained in O|1 for some obstruction.
      for (const Obstruction& o : obs) {
        if (std::includes(rep.S.begin(), rep.S.end(), o.O.begin(), o.O.end())) {
          b.pin_zero(v);
          break;
        }
      }
    } else {
      // (BZ'3): conv(a) ∩ conv(b) ∩ P = ∅.
      if (conv_meet_empty(rep, f, p)) b.pin_zero(v);
    }
  }

  return b.finish(fam, fam, spec.is_psd());
}

BZSizes bz_sizes(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg) {
  BZVariant v = bz_variant_of(spec.kind);
  BZSizes s;
  std::vector<Obstruction> obs = gen_obstructions(p, spec.k);
  s.obstructions = long(obs.size());
  WallSet walls = gen_walls(v, obs, spec.k, p.n);
  s.walls = long(walls.walls.size());
  TierSet tiers = gen_tiers(v, walls, spec.k, cfg.cap_tiers);
  if (cfg.prune_tiers) tiers = prune_useless_tiers(v, tiers, spec.k, p);
  s.tiers = long(tiers.tiers.size());
  LiftedProblem prob = build_bz(spec, p, cfg);
  s.variables = prob.num_vars;
  s.constraints = long(prob.rows.size());
  s.constraints_raw = long(prob.raw_constraint_count);
  return s;
}

}  // namespace liftlab
