#include "liftlab/lifted.hpp"

#include <algorithm>
#include <sstream>

#include "liftlab/bz.hpp"
#include "liftlab/eig.hpp"
#include "liftlab/psd.hpp"

namespace liftlab {

std::string OperatorSpec::text() const {
  auto lvl = [this](const char* base) { return std::string(base) + ":" + std::to_string(k); };
  switch (kind) {
    case OpKind::BCC: return lvl("BCC");
    case OpKind::LS0: return "LS0";
    case OpKind::LS: return "LS";
    case OpKind::LSplus: return "LS+";
    case OpKind::SA: return lvl("SA");
    case OpKind::SAprime: return lvl("SAp");
    case OpKind::SAplus: return lvl("SA+");
    case OpKind::SAplusPrime: return lvl("SA+p");
    case OpKind::BZ: return lvl("BZ");
    case OpKind::BZprime: return lvl("BZp");
    case OpKind::BZdoubleprime: return lvl("BZpp");
    case OpKind::BZplus: return lvl("BZ+");
    case OpKind::BZprimePlus: return lvl("BZp+");
    case OpKind::BZdoubleprimePlus: return lvl("BZpp+");
    case OpKind::CardPartition: return "Card";
  }
  return "?";
}

OperatorSpec OperatorSpec::parse(const std::string& s) {
  std::string head = s;
  int k = 1;
  auto colon = s.find(':');
  if (colon != std::string::npos) {
    head = s.substr(0, colon);
    try {
      k = std::stoi(s.substr(colon + 1));
    } catch (...) {
      throw Error("bad operator level in '" + s + "'");
    }
  }
  auto mk = [k](OpKind kind) { return OperatorSpec{kind, k}; };
  if (head == "BCC") return mk(OpKind::BCC);
  if (head == "LS0") return mk(OpKind::LS0);
  if (head == "LS") return mk(OpKind::LS);
  if (head == "LS+" || head == "LSplus") return mk(OpKind::LSplus);
  if (head == "SA") return mk(OpKind::SA);
  if (head == "SAp" || head == "SAprime") return mk(OpKind::SAprime);
  if (head == "SA+" || head == "SAplus") return mk(OpKind::SAplus);
  if (head == "SA+p" || head == "SApp" || head == "SAplusprime") return mk(OpKind::SAplusPrime);
  if (head == "BZ") return mk(OpKind::BZ);
  if (head == "BZp" || head == "BZprime") return mk(OpKind::BZprime);
  if (head == "BZpp" || head == "BZdoubleprime") return mk(OpKind::BZdoubleprime);
  if (head == "BZ+" || head == "BZplus") return mk(OpKind::BZplus);
  if (head == "BZp+" || head == "BZ+p" || head == "BZprimeplus") return mk(OpKind::BZprimePlus);
  if (head == "BZpp+" || head == "BZ+pp" || head == "BZdoubleprimeplus")
    return mk(OpKind::BZdoubleprimePlus);
  if (head == "Card" || head == "CardPartition") return mk(OpKind::CardPartition);
  throw Error("unknown operator '" + s + "'");
}

// ---------------------------------------------------------------------------
// KeyIndex

EntryKey KeyIndex::canonical(EntryKey k) const {
  if (k.empty || elements.size() <= 1 || k.atom_words.empty()) return k;
  std::vector<std::uint64_t> best = k.atom_words;
  std::vector<std::uint64_t> buf(best.size());
  for (std::size_t e = 1; e < elements.size(); ++e) {  // element 0 is the identity
    std::fill(buf.begin(), buf.end(), 0);
    const auto& pm = atom_perm[e];
    for (std::size_t w = 0; w < k.atom_words.size(); ++w) {
      std::uint64_t word = k.atom_words[w];
      while (word) {
        int bit = __builtin_ctzll(word);
        word &= word - 1;
        std::uint32_t q = pm[(w << 6) | std::uint32_t(bit)];
        buf[q >> 6] |= std::uint64_t(1) << (q & 63);
      }
    }
    if (buf < best) best = buf;
  }
  if (best != k.atom_words) {
    k.atom_words = std::move(best);
    std::size_t h = 1469598103934665603ULL ^ std::size_t(n);
    for (auto w : k.atom_words) h = (h ^ w) * 1099511628211ULL;
    k.h = h;
  }
  return k;
}

int KeyIndex::find(const GenCube& a, const GenCube& b) const {
  EntryKey k = canonical(entry_key(a, b));
  if (k.empty) return -1;
  auto it = map.find(k);
  if (it == map.end()) throw Error("key lookup: unknown entry key");
  return it->second;
}

// ---------------------------------------------------------------------------
// LiftedBuilder

LiftedBuilder::LiftedBuilder(const HPolytope& p, OperatorSpec spec, const BuildConfig& cfg)
    : p_(p), spec_(spec), cfg_(cfg) {
  keys_ = std::make_shared<KeyIndex>();
  keys_->n = p.n;
  if (cfg_.group && !cfg_.group->generators.empty()) {
    if (p.n > kAtomLimit) throw Error("symmetry reduction requires atom keys (n <= 20)");
    keys_->elements = cfg_.group->elements();
    keys_->atom_perm.resize(keys_->elements.size());
    const std::uint32_t total = std::uint32_t(1) << p.n;
    for (std::size_t e = 0; e < keys_->elements.size(); ++e) {
      const Perm& g = keys_->elements[e];
      auto& pm = keys_->atom_perm[e];
      pm.resize(total);
      for (std::uint32_t x = 0; x < total; ++x) {
        std::uint32_t y = 0;
        for (int i = 0; i < p.n; ++i)
          if ((x >> i) & 1) y |= std::uint32_t(1) << g[i];
        pm[x] = y;
      }
    }
  }
  xhat.resize(p.n);
}

int LiftedBuilder::key_var(const GenCube& a, const GenCube& b) {
  EntryKey k = keys_->canonical(entry_key(a, b));
  if (k.empty) return -1;
  auto it = keys_->map.find(k);
  if (it != keys_->map.end()) return it->second;
  int id = int(bounds_.size());
  keys_->map.emplace(std::move(k), id);
  var_cube_.push_back(cube_intersect(a, b));
  bounds_.push_back(VarBounds{Rational(0), std::nullopt});
  return id;
}

int LiftedBuilder::cube_var(const GenCube& a) { return key_var(a, GenCube::full(p_.n)); }

int LiftedBuilder::add_raw_var(VarBounds b) {
  bounds_.push_back(std::move(b));
  var_cube_.push_back(GenCube{});
  return int(bounds_.size()) - 1;
}

void LiftedBuilder::pin_zero(int var) { bounds_[var] = VarBounds{Rational(0), Rational(0)}; }

bool LiftedBuilder::is_pinned_zero(int var) const {
  return bounds_[var].lo && bounds_[var].hi && *bounds_[var].lo == 0 && *bounds_[var].hi == 0;
}

namespace {

// Canonical form: merged sorted terms, primitive integer coefficients, GE
// turned into LE, EQ signed by its first coefficient.
void normalize_row(LinRow& r) {
  std::sort(r.terms.begin(), r.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, Rational>> merged;
  for (auto& [v, c] : r.terms) {
    if (!merged.empty() && merged.back().first == v)
      merged.back().second += c;
    else
      merged.push_back({v, c});
  }
  merged.erase(
      std::remove_if(merged.begin(), merged.end(), [](const auto& t) { return t.second == 0; }),
      merged.end());
  r.terms = std::move(merged);
  if (r.rel == Rel::GE) {
    for (auto& [v, c] : r.terms) c = -c;
    r.rhs = -r.rhs;
    r.rel = Rel::LE;
  }
  if (r.terms.empty()) return;
  mpz_class lcm = r.rhs.get_den();
  for (const auto& [v, c] : r.terms) {
    mpz_class d = c.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    lcm = lcm / g * d;
  }
  mpz_class gall = 0;
  {
    mpz_class t = r.rhs.get_num() * (lcm / r.rhs.get_den());
    t = abs(t);
    mpz_gcd(gall.get_mpz_t(), gall.get_mpz_t(), t.get_mpz_t());
  }
  for (const auto& [v, c] : r.terms) {
    mpz_class t = c.get_num() * (lcm / c.get_den());
    t = abs(t);
    mpz_gcd(gall.get_mpz_t(), gall.get_mpz_t(), t.get_mpz_t());
  }
  if (gall == 0) gall = 1;
  Rational scale(lcm, gall);
  scale.canonicalize();
  for (auto& [v, c] : r.terms) c *= scale;
  r.rhs *= scale;
  if (r.rel == Rel::EQ && r.terms[0].second < 0) {
    for (auto& [v, c] : r.terms) c = -c;
    r.rhs = -r.rhs;
  }
}

std::size_t row_hash(const LinRow& r) {
  std::size_t h = r.rel == Rel::EQ ? 77 : 13;
  for (const auto& [v, c] : r.terms) h = h * 1099511628211ULL ^ (std::size_t(v) * 31 + rat_hash(c));
  return h * 31 + rat_hash(r.rhs);
}

bool rows_equal(const LinRow& a, const LinRow& b) {
  return a.rel == b.rel && a.rhs == b.rhs && a.terms == b.terms;
}

LinExpr& expr_add(LinExpr& target, const Rational& coef, const LinExpr& e) {
  for (const auto& [v, c] : e) target.push_back({v, coef * c});
  return target;
}

}  // namespace

void LiftedBuilder::add_row(LinRow r, const std::string& tag) {
  ++raw_count_;
  normalize_row(r);
  if (r.terms.empty()) {
    bool trivially_true = (r.rel == Rel::LE && r.rhs >= 0) || (r.rel == Rel::EQ && r.rhs == 0);
    if (trivially_true) return;
  }
  std::size_t h = row_hash(r);
  auto& bucket = hash_rows_[h];
  for (int idx : bucket)
    if (rows_equal(rows_[idx], r)) return;
  bucket.push_back(int(rows_.size()));
  rows_.push_back(std::move(r));
  if (cfg_.want_tags) tags_.push_back(tag);
}

void LiftedBuilder::add_expr_row(const LinExpr& e, Rel rel, const Rational& rhs,
                                 const std::string& tag) {
  LinRow r;
  r.terms = e;
  r.rel = rel;
  r.rhs = rhs;
  add_row(std::move(r), tag);
}

void LiftedBuilder::emit_cone_membership(const HPolytope& q, const LinExpr& y0,
                                         const std::vector<LinExpr>& x, const std::string& tag) {
  if (int(x.size()) != q.n) throw Error("cone membership: dimension mismatch");
  auto single_nonneg_var = [this](const LinExpr& e) {
    return e.size() <= 1 &&
           (e.empty() || (e[0].second > 0 && bounds_[e[0].first].lo && *bounds_[e[0].first].lo >= 0));
  };
  if (!single_nonneg_var(y0)) add_expr_row(y0, Rel::GE, 0, tag + " y0>=0");
  for (int i = 0; i < q.m(); ++i) {
    LinExpr row;
    for (int j = 0; j < q.n; ++j)
      if (q.A.at(i, j) != 0) expr_add(row, q.A.at(i, j), x[j]);
    expr_add(row, -q.b[i], y0);
    add_expr_row(row, Rel::LE, 0, tag + " row" + std::to_string(i));
  }
  for (int j = 0; j < q.n; ++j) {
    if (!single_nonneg_var(x[j])) add_expr_row(x[j], Rel::GE, 0, tag + " x>=0");
    LinExpr diff = x[j];
    expr_add(diff, -1, y0);
    add_expr_row(diff, Rel::LE, 0, tag + " x<=y0");
  }
}

std::vector<int> LiftedBuilder::column_reps(const IndexFamily& fam) const {
  std::vector<int> reps;
  if (keys_->elements.size() <= 1) {
    reps.resize(fam.size());
    for (int i = 0; i < fam.size(); ++i) reps[i] = i;
    return reps;
  }
  std::unordered_set<EntryKey, EntryKeyHash> seen;
  for (int i = 0; i < fam.size(); ++i) {
    EntryKey k = keys_->canonical(cube_key(fam[i]));
    if (seen.insert(std::move(k)).second) reps.push_back(i);
  }
  return reps;
}

LiftedProblem LiftedBuilder::finish(IndexFamily row_fam, IndexFamily col_fam, bool psd) {
  LiftedProblem out;
  out.n = p_.n;
  out.spec = spec_;
  out.base = p_;
  out.keyed = true;
  out.row_family = std::move(row_fam);
  out.col_family = std::move(col_fam);
  out.num_vars = int(bounds_.size());
  out.bounds = std::move(bounds_);
  out.rows = std::move(rows_);
  out.row_tags = std::move(tags_);
  out.one_expr = one_expr;
  out.xhat = xhat;
  out.var_cube = std::move(var_cube_);
  out.keys = keys_;
  out.psd = psd;
  out.raw_constraint_count = raw_count_;
  out.coord_orbit.resize(out.n);
  for (int i = 0; i < out.n; ++i) out.coord_orbit[i] = i;
  if (keys_->elements.size() > 1) {
    std::vector<int> orbit(out.n, -1);
    int next = 0;
    for (int i = 0; i < out.n; ++i) {
      if (orbit[i] >= 0) continue;
      for (const Perm& g : keys_->elements) orbit[g[i]] = next;
      ++next;
    }
    out.coord_orbit = orbit;
  }
  std::size_t cells = std::size_t(out.row_family.size()) * out.col_family.size();
  if (psd || cells <= 200000) ensure_entry_grid(out);
  return out;
}

LiftedProblem LiftedBuilder::finish_raw() {
  LiftedProblem out;
  out.n = p_.n;
  out.spec = spec_;
  out.base = p_;
  out.keyed = false;
  out.num_vars = int(bounds_.size());
  out.bounds = std::move(bounds_);
  out.rows = std::move(rows_);
  out.row_tags = std::move(tags_);
  out.one_expr = one_expr;
  out.xhat = xhat;
  out.var_cube = std::move(var_cube_);
  out.raw_constraint_count = raw_count_;
  out.coord_orbit.resize(out.n);
  for (int i = 0; i < out.n; ++i) out.coord_orbit[i] = i;
  return out;
}

void ensure_entry_grid(LiftedProblem& p) {
  if (!p.entry.empty() || !p.keyed) return;
  p.entry.assign(p.row_family.size(), std::vector<int>(p.col_family.size(), -1));
  for (int i = 0; i < p.row_family.size(); ++i)
    for (int j = 0; j < p.col_family.size(); ++j)
      p.entry[i][j] = p.keys->find(p.row_family[i], p.col_family[j]);
}

// ---------------------------------------------------------------------------
// Builders

LiftedProblem build_ls_family(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg) {
  const int n = p.n;
  if (spec.kind == OpKind::LS || spec.kind == OpKind::LSplus) {
    LiftedBuilder b(p, spec, cfg);
    IndexFamily a1p = gen_A(n, 1, true);
    GenCube f = GenCube::full(n);
    int vF = b.key_var(f, f);
    b.one_expr = {{vF, Rational(1)}};
    for (int i = 0; i < n; ++i) b.xhat[i] = {{b.key_var(GenCube::one(n, i), f), Rational(1)}};
    for (int ci : b.column_reps(a1p)) {
      if (a1p[ci].is_full()) continue;
      const GenCube& col = a1p[ci];
      LinExpr y0 = {{b.key_var(f, col), Rational(1)}};
      LinExpr y0c = {{vF, Rational(1)}, {b.key_var(f, col), Rational(-1)}};
      std::vector<LinExpr> xs(n), xsc(n);
      for (int j = 0; j < n; ++j) {
        int vj = b.key_var(GenCube::one(n, j), col);
        int vjF = b.key_var(GenCube::one(n, j), f);
        if (vj >= 0) xs[j] = {{vj, Rational(1)}};
        LinExpr diff = {{vjF, Rational(1)}};
        if (vj >= 0) diff.push_back({vj, Rational(-1)});
        xsc[j] = diff;
      }
      b.emit_cone_membership(p, y0, xs, "LS Ye(" + col.text() + ") in K(P)");
      b.emit_cone_membership(p, y0c, xsc, "LS Y(e0-e_i) " + col.text());
    }
    return b.finish(a1p, a1p, spec.kind == OpKind::LSplus);
  }
  if (spec.kind == OpKind::LS0) {
    LiftedBuilder b(p, spec, cfg);
    std::vector<std::vector<int>> v(n + 1, std::vector<int>(n + 1));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) v[i][j] = b.add_raw_var(VarBounds{Rational(0), std::nullopt});
    b.one_expr = {{v[0][0], Rational(1)}};
    for (int j = 0; j < n; ++j) b.xhat[j] = {{v[j + 1][0], Rational(1)}};
    for (int j = 1; j <= n; ++j) {
      b.add_expr_row({{v[j][0], Rational(1)}, {v[0][j], Rational(-1)}}, Rel::EQ, 0,
                     "LS0 Ye0 = Y^T e0");
      b.add_expr_row({{v[j][0], Rational(1)}, {v[j][j], Rational(-1)}}, Rel::EQ, 0,
                     "LS0 diag(Y) = x_hat");
    }
    for (int i = 1; i <= n; ++i) {
      LinExpr y0 = {{v[0][i], Rational(1)}};
      LinExpr y0c = {{v[0][0], Rational(1)}, {v[0][i], Rational(-1)}};
      std::vector<LinExpr> xs(n), xsc(n);
      for (int j = 0; j < n; ++j) {
        xs[j] = {{v[j + 1][i], Rational(1)}};
        xsc[j] = {{v[j + 1][0], Rational(1)}, {v[j + 1][i], Rational(-1)}};
      }
      b.emit_cone_membership(p, y0, xs, "LS0 Ye" + std::to_string(i));
      b.emit_cone_membership(p, y0c, xsc, "LS0 Y(e0-e" + std::to_string(i) + ")");
    }
    LiftedProblem out = b.finish_raw();
    out.row_family = gen_A(n, 1, true);
    out.col_family = out.row_family;
    out.entry.assign(n + 1, std::vector<int>(n + 1));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) out.entry[i][j] = v[i][j];
    return out;
  }
  if (spec.kind == OpKind::BCC) {
    int i = spec.k;
    if (i < 0 || i >= n) throw Error("BCC index out of range");
    LiftedBuilder b(p, spec, cfg);
    int lam0 = b.add_raw_var(VarBounds{Rational(0), std::nullopt});
    int lam1 = b.add_raw_var(VarBounds{Rational(0), std::nullopt});
    std::vector<int> z0(n), z1(n);
    for (int j = 0; j < n; ++j) {
      z0[j] = b.add_raw_var(VarBounds{Rational(0), std::nullopt});
      z1[j] = b.add_raw_var(VarBounds{Rational(0), std::nullopt});
    }
    b.pin_zero(z0[i]);
    b.add_expr_row({{z1[i], Rational(1)}, {lam1, Rational(-1)}}, Rel::EQ, 0, "BCC x_i = 1 block");
    std::vector<LinExpr> xs0(n), xs1(n);
    for (int j = 0; j < n; ++j) {
      xs0[j] = {{z0[j], Rational(1)}};
      xs1[j] = {{z1[j], Rational(1)}};
    }
    b.emit_cone_membership(p, {{lam0, Rational(1)}}, xs0, "BCC block0");
    b.emit_cone_membership(p, {{lam1, Rational(1)}}, xs1, "BCC block1");
    b.one_expr = {{lam0, Rational(1)}, {lam1, Rational(1)}};
    for (int j = 0; j < n; ++j) b.xhat[j] = {{z0[j], Rational(1)}, {z1[j], Rational(1)}};
    return b.finish_raw();
  }
  throw Error("build_ls_family: unsupported operator " + spec.text());
}

LiftedProblem build_sa(int k, bool prime, const HPolytope& p, const BuildConfig& cfg) {
  const int n = p.n;
  if (k < 1 || k > n) throw Error("SA level out of range");
  OperatorSpec spec{prime ? OpKind::SAprime : OpKind::SA, k};
  LiftedBuilder b(p, spec, cfg);
  IndexFamily rows = gen_A(n, 1, true);
  IndexFamily cols = gen_A(n, k);
  GenCube f = GenCube::full(n);
  int vF = b.key_var(f, f);
  b.one_expr = {{vF, Rational(1)}};
  for (int i = 0; i < n; ++i) b.xhat[i] = {{b.key_var(GenCube::one(n, i), f), Rational(1)}};
  for (int ci : b.column_reps(cols)) {
    const GenCube& beta = cols[ci];
    LinExpr y0 = {{b.key_var(f, beta), Rational(1)}};
    std::vector<LinExpr> xs(n);
    for (int j = 0; j < n; ++j) {
      int vj = b.key_var(GenCube::one(n, j), beta);
      if (vj >= 0) xs[j] = {{vj, Rational(1)}};
    }
    b.emit_cone_membership(p, y0, xs, "SA2 col " + beta.text());
  }
  IndexFamily lower = gen_A(n, k - 1);
  for (int ai = 0; ai < lower.size(); ++ai) {
    const GenCube& alpha = lower[ai];
    for (int j = 0; j < n; ++j) {
      if (std::binary_search(alpha.S.begin(), alpha.S.end(), j)) continue;
      if (std::binary_search(alpha.T.begin(), alpha.T.end(), j)) continue;
      GenCube a1 = cube_intersect(alpha, GenCube::one(n, j));
      GenCube a0 = cube_intersect(alpha, GenCube::zero(n, j));
      for (int ri = 0; ri < rows.size(); ++ri) {
        LinExpr e;
        int v1 = b.key_var(rows[ri], a1);
        int v0 = b.key_var(rows[ri], a0);
        int va = b.key_var(rows[ri], alpha);
        if (v1 >= 0) e.push_back({v1, Rational(1)});
        if (v0 >= 0) e.push_back({v0, Rational(1)});
        if (va >= 0) e.push_back({va, Rational(-1)});
        b.add_expr_row(e, Rel::EQ, 0,
                       "SA3 " + alpha.text() + " j=" + std::to_string(j + 1) + " row " +
                           rows[ri].text());
      }
    }
  }
  if (prime) {
    for (int v = 0; v < b.num_vars(); ++v)
      if (conv_meet_empty(b.var_rep(v), f, p)) b.pin_zero(v);
  }
  return b.finish(std::move(rows), std::move(cols), false);
}

LiftedProblem build_card_partition(const HPolytope& p, const BuildConfig& cfg) {
  const int n = p.n;
  LiftedBuilder b(p, OperatorSpec{OpKind::CardPartition, 1}, cfg);
  std::vector<std::vector<int>> v(n + 1, std::vector<int>(n + 1));
  for (int g = 0; g <= n; ++g)
    for (int j = 0; j <= n; ++j) v[g][j] = b.add_raw_var(VarBounds{Rational(0), std::nullopt});
  b.one_expr.clear();
  for (int j = 0; j <= n; ++j) b.one_expr.push_back({v[0][j], Rational(1)});
  for (int i = 0; i < n; ++i) {
    b.xhat[i].clear();
    for (int j = 0; j <= n; ++j) b.xhat[i].push_back({v[i + 1][j], Rational(1)});
  }
  for (int j = 0; j <= n; ++j) {
    LinExpr y0 = {{v[0][j], Rational(1)}};
    std::vector<LinExpr> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = {{v[i + 1][j], Rational(1)}};
    b.emit_cone_membership(p, y0, xs, "Card col R" + std::to_string(j));
    LinExpr eq;
    for (int i = 0; i < n; ++i) eq.push_back({v[i + 1][j], Rational(1)});
    eq.push_back({v[0][j], Rational(-j)});
    b.add_expr_row(eq, Rel::EQ, 0, "Card slice sum R" + std::to_string(j));
  }
  return b.finish_raw();
}

LiftedProblem build_operator(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg) {
  switch (spec.kind) {
    case OpKind::BCC:
    case OpKind::LS0:
    case OpKind::LS:
      return build_ls_family(spec, p, cfg);
    case OpKind::SA:
      return build_sa(spec.k, false, p, cfg);
    case OpKind::SAprime:
      return build_sa(spec.k, true, p, cfg);
    case OpKind::CardPartition:
      return build_card_partition(p, cfg);
    case OpKind::BZ:
    case OpKind::BZprime:
    case OpKind::BZdoubleprime:
    case OpKind::BZplus:
    case OpKind::BZprimePlus:
    case OpKind::BZdoubleprimePlus:
      return build_bz(spec, p, cfg);
    case OpKind::LSplus:
    case OpKind::SAplus:
    case OpKind::SAplusPrime:
      return build_psd_problem(spec, p, cfg);
  }
  throw Error("build_operator: unsupported kind");
}

// ---------------------------------------------------------------------------
// Solving

LPOutcome lifted_solve(const LiftedProblem& p, const RatVector* objective, const RatVector* pin_x,
                       const LiftedSolveConfig& cfg) {
  if (p.psd) throw Error("lifted_solve: PSD problems route through the SDP engine");
  SimplexSolver s(p.num_vars, p.bounds);
  if (objective) {
    if (int(objective->size()) != p.n) throw Error("objective dimension mismatch");
    RatVector c(p.num_vars, Rational(0));
    for (int i = 0; i < p.n; ++i)
      for (const auto& [v, coef] : p.xhat[i]) c[v] += (*objective)[i] * coef;
    s.set_objective(c);
  }
  std::vector<int> solver_to_problem;
  const int pin_base = int(p.rows.size());
  {
    LinRow r;
    r.terms = p.one_expr;
    r.rel = Rel::EQ;
    r.rhs = 1;
    s.add_row(r);
    solver_to_problem.push_back(pin_base);
  }
  if (pin_x) {
    if (int(pin_x->size()) != p.n) throw Error("membership point dimension mismatch");
    for (int i = 0; i < p.n; ++i) {
      LinRow r;
      r.terms = p.xhat[i];
      r.rel = Rel::EQ;
      r.rhs = (*pin_x)[i];
      s.add_row(r);
      solver_to_problem.push_back(pin_base + 1 + i);
    }
  }
  const int total_pins = 1 + (pin_x ? p.n : 0);
  auto map_farkas = [&](const RatVector& active) {
    RatVector full(p.rows.size() + total_pins, Rational(0));
    for (std::size_t i = 0; i < active.size(); ++i) full[solver_to_problem[i]] = active[i];
    return full;
  };
  auto eval_terms = [](const LinRow& r, const RatVector& x) {
    Rational lhs = 0;
    for (const auto& [v, c] : r.terms) lhs += c * x[v];
    return lhs;
  };

  if (int(p.rows.size()) <= cfg.rowgen_threshold) {
    for (int i = 0; i < int(p.rows.size()); ++i) {
      s.add_row(p.rows[i]);
      solver_to_problem.push_back(i);
    }
    LPOutcome out = s.solve(cfg.lp);
    if (out.status == LPStatus::Infeasible) out.farkas = map_farkas(out.farkas);
    return out;
  }

  std::vector<bool> added(p.rows.size(), false);
  while (true) {
    LPOutcome out = s.solve(cfg.lp);
    if (out.status == LPStatus::Infeasible) {
      out.farkas = map_farkas(out.farkas);
      return out;
    }
    std::vector<std::pair<Rational, int>> viol;
    if (out.status == LPStatus::Unbounded) {
      // Add rows that cut the improving ray.
      for (int i = 0; i < int(p.rows.size()); ++i) {
        if (added[i]) continue;
        Rational along = eval_terms(p.rows[i], out.ray);
        bool cuts = (p.rows[i].rel == Rel::LE && along > 0) ||
                    (p.rows[i].rel == Rel::GE && along < 0) ||
                    (p.rows[i].rel == Rel::EQ && along != 0);
        if (cuts) viol.push_back({rat_abs(along), i});
      }
      if (viol.empty()) return out;  // genuinely unbounded
    } else {
      for (int i = 0; i < int(p.rows.size()); ++i) {
        if (added[i]) continue;
        Rational lhs = eval_terms(p.rows[i], out.point);
        bool bad = (p.rows[i].rel == Rel::LE && lhs > p.rows[i].rhs) ||
                   (p.rows[i].rel == Rel::GE && lhs < p.rows[i].rhs) ||
                   (p.rows[i].rel == Rel::EQ && lhs != p.rows[i].rhs);
        if (bad) viol.push_back({rat_abs(lhs - p.rows[i].rhs), i});
      }
      if (viol.empty()) return out;
    }
    std::sort(viol.begin(), viol.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    int take = std::min<int>(cfg.rowgen_batch, int(viol.size()));
    for (int t = 0; t < take; ++t) {
      int idx = viol[t].second;
      added[idx] = true;
      s.add_row(p.rows[idx]);
      solver_to_problem.push_back(idx);
    }
  }
}

LPOutcome lifted_optimize(const LiftedProblem& p, const RatVector& c,
                          const LiftedSolveConfig& cfg) {
  if (p.keys && p.keys->elements.size() > 1) {
    for (int i = 0; i < p.n; ++i)
      for (int j = i + 1; j < p.n; ++j)
        if (p.coord_orbit[i] == p.coord_orbit[j] && c[i] != c[j])
          throw Error("group-reduced problem requires an invariant objective");
  }
  return lifted_solve(p, &c, nullptr, cfg);
}

Certificate extract_certificate(const LiftedProblem& p, const RatVector& var_values) {
  if (!p.keyed && p.entry.empty()) throw Error("certificate extraction unsupported for this kind");
  ensure_entry_grid(const_cast<LiftedProblem&>(p));
  Certificate cert;
  cert.spec = p.spec;
  cert.n = p.n;
  cert.rows = p.row_family;
  cert.cols = p.col_family;
  cert.Y = RatMatrix(p.row_family.size(), p.col_family.size());
  for (int i = 0; i < p.row_family.size(); ++i)
    for (int j = 0; j < p.col_family.size(); ++j) {
      int v = p.entry[i][j];
      cert.Y.at(i, j) = v < 0 ? Rational(0) : var_values[v];
    }
  cert.xhat.resize(p.n + 1);
  cert.xhat[0] = 0;
  for (const auto& [v, c] : p.one_expr) cert.xhat[0] += c * var_values[v];
  for (int i = 0; i < p.n; ++i) {
    cert.xhat[i + 1] = 0;
    for (const auto& [v, c] : p.xhat[i]) cert.xhat[i + 1] += c * var_values[v];
  }
  return cert;
}

MembershipResult lifted_membership(const LiftedProblem& p, const RatVector& x,
                                   const LiftedSolveConfig& cfg) {
  MembershipResult res;
  res.point = x;
  if (p.keys && p.keys->elements.size() > 1) {
    for (int i = 0; i < p.n; ++i)
      for (int j = i + 1; j < p.n; ++j)
        if (p.coord_orbit[i] == p.coord_orbit[j] && x[i] != x[j])
          throw Error("group-reduced membership requires an invariant point");
  }
  LPOutcome out = lifted_solve(p, nullptr, &x, cfg);
  if (out.status == LPStatus::Optimal) {
    res.member = true;
    if (p.keyed || !p.entry.empty()) res.certificate = extract_certificate(p, out.point);
    return res;
  }
  if (out.status == LPStatus::Unbounded) throw Error("membership system unbounded");
  res.member = false;
  res.farkas = out.farkas;
  LinearProgram mirror;
  mirror.num_vars = p.num_vars;
  mirror.bounds = p.bounds;
  mirror.rows = p.rows;
  {
    LinRow r;
    r.terms = p.one_expr;
    r.rel = Rel::EQ;
    r.rhs = 1;
    mirror.rows.push_back(r);
  }
  for (int i = 0; i < p.n; ++i) {
    LinRow r;
    r.terms = p.xhat[i];
    r.rel = Rel::EQ;
    r.rhs = x[i];
    mirror.rows.push_back(r);
  }
  res.farkas_checked = lp_farkas_valid(mirror, res.farkas);
  return res;
}

Certificate integral_operator_certificate(const LiftedProblem& p, std::uint32_t point_mask) {
  if (!p.keyed && p.entry.empty()) throw Error("integral certificate needs families");
  Certificate cert;
  cert.spec = p.spec;
  cert.n = p.n;
  cert.rows = p.row_family;
  cert.cols = p.col_family;
  cert.Y = integral_certificate(point_mask, p.row_family, p.col_family);
  cert.xhat.resize(p.n + 1);
  cert.xhat[0] = 1;
  for (int i = 0; i < p.n; ++i) cert.xhat[i + 1] = (point_mask >> i) & 1;
  return cert;
}

// ---------------------------------------------------------------------------
// Verification

VerifyReport verify_certificate(OperatorSpec spec, const HPolytope& p, const Certificate& cert,
                                double tol_psd) {
  VerifyReport rep;
  if (spec.kind == OpKind::BCC || spec.kind == OpKind::CardPartition) {
    rep.first_violation = "verification not supported for this operator kind";
    return rep;
  }
  BuildConfig cfg;
  cfg.want_tags = true;
  LiftedProblem prob = build_operator(spec, p, cfg);
  ensure_entry_grid(prob);

  auto family_map = [&](const IndexFamily& from, const IndexFamily& to,
                        std::vector<int>& m) -> bool {
    if (from.size() != to.size()) return false;
    m.resize(from.size());
    for (int i = 0; i < from.size(); ++i) {
      auto idx = to.find(from[i]);
      if (!idx) return false;
      m[i] = *idx;
    }
    return true;
  };
  std::vector<int> rmap, cmap;
  if (!family_map(cert.rows, prob.row_family, rmap) ||
      !family_map(cert.cols, prob.col_family, cmap)) {
    rep.first_violation = "family shape mismatch";
    return rep;
  }
  if (cert.Y.rows() != cert.rows.size() || cert.Y.cols() != cert.cols.size()) {
    rep.first_violation = "matrix shape mismatch";
    return rep;
  }

  RatVector value(prob.num_vars, Rational(0));
  std::vector<bool> have(prob.num_vars, false);
  for (int i = 0; i < cert.rows.size(); ++i)
    for (int j = 0; j < cert.cols.size(); ++j) {
      int v = prob.entry[rmap[i]][cmap[j]];
      const Rational& e = cert.Y.at(i, j);
      if (v < 0) {
        if (e != 0) {
          rep.first_violation = "zero rule (empty intersection) at Y[" + cert.rows[i].text() +
                                ", " + cert.cols[j].text() + "]";
          return rep;
        }
        continue;
      }
      if (have[v]) {
        if (value[v] != e) {
          rep.first_violation = "identification rule at Y[" + cert.rows[i].text() + ", " +
                                cert.cols[j].text() + "]";
          return rep;
        }
      } else {
        have[v] = true;
        value[v] = e;
      }
    }
  for (int v = 0; v < prob.num_vars; ++v) {
    if (!have[v]) continue;
    if (prob.bounds[v].lo && value[v] < *prob.bounds[v].lo) {
      rep.first_violation = "nonnegativity at " + prob.var_cube[v].text();
      return rep;
    }
    if (prob.bounds[v].hi && value[v] > *prob.bounds[v].hi) {
      rep.first_violation = "zero rule (conv(a) and conv(b) miss P) at " + prob.var_cube[v].text();
      return rep;
    }
  }
  Rational one = 0;
  for (const auto& [v, c] : prob.one_expr) one += c * value[v];
  if (one != 1) {
    rep.first_violation = "Y[F,F] = 1";
    return rep;
  }
  for (std::size_t r = 0; r < prob.rows.size(); ++r) {
    Rational lhs = 0;
    for (const auto& [v, c] : prob.rows[r].terms) lhs += c * value[v];
    bool ok = (prob.rows[r].rel == Rel::LE && lhs <= prob.rows[r].rhs) ||
              (prob.rows[r].rel == Rel::GE && lhs >= prob.rows[r].rhs) ||
              (prob.rows[r].rel == Rel::EQ && lhs == prob.rows[r].rhs);
    if (!ok) {
      rep.first_violation = r < prob.row_tags.size() ? prob.row_tags[r] : "constraint row";
      return rep;
    }
  }
  if (spec.is_psd()) {
    RatMatrix full(cert.rows.size(), cert.cols.size());
    for (int i = 0; i < cert.rows.size(); ++i)
      for (int j = 0; j < cert.cols.size(); ++j) full.at(i, j) = cert.Y.at(i, j);
    rep.exact_psd = full.is_psd();
    rep.min_eig = min_eigenvalue(FloatSymMatrix::from_rational(full));
    if (!rep.exact_psd && rep.min_eig < -tol_psd) {
      rep.first_violation = "positive semidefiniteness";
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

}  // namespace liftlab
