#include "liftlab/lp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace liftlab {

int LinearProgram::add_var(std::optional<Rational> lo, std::optional<Rational> hi) {
  if (bounds.empty() && num_vars > 0) bounds.assign(num_vars, VarBounds{});
  ++num_vars;
  bounds.push_back(VarBounds{std::move(lo), std::move(hi)});
  return num_vars - 1;
}

namespace {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool pos(const Rational& x) { return x > 0; }
  static bool neg(const Rational& x) { return x < 0; }
  static bool lt(const Rational& a, const Rational& b) { return a < b; }
  static bool feas_lt(const Rational& a, const Rational& b) { return a < b; }
  static double mag(const Rational& x) { return std::fabs(x.get_d()); }
};

template <>
struct ScalarTraits<double> {
  static constexpr double kZero = 1e-11;
  static constexpr double kFeas = 1e-7;
  static bool is_zero(double x) { return std::fabs(x) <= kZero; }
  static bool pos(double x) { return x > kZero; }
  static bool neg(double x) { return x < -kZero; }
  static bool lt(double a, double b) { return a < b - kZero; }
  static bool feas_lt(double a, double b) { return a < b - kFeas; }
  static double mag(double x) { return std::fabs(x); }
};

enum class VKind { Structural, Slack, Artificial };
enum class VState { Basic, AtLo, AtUp, Free, Removed };

// Bounded-variable revised simplex over an exact or floating scalar.
template <class T>
class Core {
 public:
  using Tr = ScalarTraits<T>;

  struct Col {
    std::vector<std::pair<int, T>> entries;  // (row, coef)
    VKind kind = VKind::Structural;
    int row = -1;  // for slack/artificial
    bool has_lo = false, has_up = false;
    T lo{}, up{};
    T obj{};  // phase-2 objective
  };

  std::vector<Col> cols;
  std::vector<T> rhs;
  std::vector<int> basis;        // per row: column id
  std::vector<int> slack_col;    // per row: its slack's column id
  std::vector<VState> state;     // per column
  std::vector<T> value;          // per column: current value (basic or nonbasic)
  std::vector<T> binv;           // m*m row-major
  int m = 0;
  long pivots = 0;
  long max_pivots = 50'000'000;
  bool any_artificial = false;

  int add_structural(bool has_lo, T lo, bool has_up, T up) {
    Col c;
    c.kind = VKind::Structural;
    c.has_lo = has_lo;
    c.lo = lo;
    c.has_up = has_up;
    c.up = up;
    cols.push_back(std::move(c));
    int j = int(cols.size()) - 1;
    reset_nonbasic(j);
    return j;
  }

  void reset_nonbasic(int j) {
    Col& c = cols[j];
    if (c.has_lo) {
      state.resize(cols.size(), VState::AtLo);
      value.resize(cols.size(), T{});
      state[j] = VState::AtLo;
      value[j] = c.lo;
    } else if (c.has_up) {
      state.resize(cols.size(), VState::AtLo);
      value.resize(cols.size(), T{});
      state[j] = VState::AtUp;
      value[j] = c.up;
    } else {
      state.resize(cols.size(), VState::AtLo);
      value.resize(cols.size(), T{});
      state[j] = VState::Free;
      value[j] = T{};
    }
  }

  // Adds a row with its slack basic; updates binv incrementally.
  // Returns the slack column id.
  int add_row(const std::vector<std::pair<int, T>>& terms, Rel rel, const T& b) {
    int r = m;
    // Extend binv: new last row = [-a_B^T B^{-1}, 1].
    std::vector<T> newrow(r, T{});
    for (const auto& [j, a] : terms) {
      if (state[j] == VState::Basic) {
        int slot = basic_slot(j);
        for (int t = 0; t < r; ++t) newrow[t] -= a * binv[std::size_t(slot) * r + t];
      }
    }
    std::vector<T> nb(std::size_t(r + 1) * (r + 1), T{});
    for (int i = 0; i < r; ++i)
      for (int t = 0; t < r; ++t) nb[std::size_t(i) * (r + 1) + t] = binv[std::size_t(i) * r + t];
    for (int t = 0; t < r; ++t) nb[std::size_t(r) * (r + 1) + t] = newrow[t];
    nb[std::size_t(r) * (r + 1) + r] = T(1);
    binv = std::move(nb);

    for (const auto& [j, a] : terms) cols[j].entries.push_back({r, a});
    Col s;
    s.kind = VKind::Slack;
    s.row = r;
    s.entries.push_back({r, T(1)});
    if (rel == Rel::LE) {
      s.has_lo = true;
      s.lo = T{};
    } else if (rel == Rel::GE) {
      s.has_up = true;
      s.up = T{};
    } else {
      s.has_lo = s.has_up = true;
      s.lo = s.up = T{};
    }
    cols.push_back(std::move(s));
    int sj = int(cols.size()) - 1;
    state.resize(cols.size(), VState::Basic);
    value.resize(cols.size(), T{});
    state[sj] = VState::Basic;
    rhs.push_back(b);
    basis.push_back(sj);
    slack_col.push_back(sj);
    ++m;
    // Slack value = residual of the row at the current point.
    T v = b;
    for (const auto& [j, a] : terms) v -= a * value[j];
    value[sj] = v;
    // If out of bounds, swap in an artificial so phase 1 can run warm.
    const Col& sc = cols[sj];
    bool low_viol = sc.has_lo && Tr::feas_lt(v, sc.lo);
    bool up_viol = sc.has_up && Tr::feas_lt(sc.up, v);
    if (low_viol || up_viol) {
      T bound = low_viol ? sc.lo : sc.up;
      T resid = v - bound;  // negative if low_viol
      state[sj] = low_viol ? VState::AtLo : VState::AtUp;
      value[sj] = bound;
      T sigma = Tr::neg(resid) ? T(-1) : T(1);
      Col a;
      a.kind = VKind::Artificial;
      a.row = r;
      a.entries.push_back({r, sigma});
      a.has_lo = true;
      a.lo = T{};
      cols.push_back(std::move(a));
      int aj = int(cols.size()) - 1;
      state.resize(cols.size(), VState::Basic);
      value.resize(cols.size(), T{});
      state[aj] = VState::Basic;
      basis[r] = aj;
      // B column in slot r changes from e_r to sigma*e_r.
      if (Tr::neg(sigma))
        for (int t = 0; t <= r; ++t) binv[std::size_t(r) * (r + 1) + t] = -binv[std::size_t(r) * (r + 1) + t];
      value[aj] = Tr::neg(resid) ? T(-resid) : resid;
      any_artificial = true;
    }
    return sj;
  }

  int basic_slot(int j) const {
    for (int i = 0; i < m; ++i)
      if (basis[i] == j) return i;
    return -1;
  }

  T binv_at(int i, int t) const { return binv[std::size_t(i) * m + t]; }

  void recompute_values() {
    // x_B = B^{-1} (rhs - sum_{nonbasic} A_j x_j)
    std::vector<T> r = rhs;
    for (int j = 0; j < int(cols.size()); ++j) {
      if (state[j] == VState::Basic || state[j] == VState::Removed) continue;
      if (Tr::is_zero(value[j])) continue;
      for (const auto& [row, a] : cols[j].entries) r[row] -= a * value[j];
    }
    for (int i = 0; i < m; ++i) {
      T v{};
      for (int t = 0; t < m; ++t)
        if (!Tr::is_zero(binv_at(i, t))) v += binv_at(i, t) * r[t];
      value[basis[i]] = v;
    }
  }

  bool refactor() {
    // Rebuild B^{-1} from the basis columns by Gauss-Jordan.
    std::vector<T> B(std::size_t(m) * m, T{});
    for (int i = 0; i < m; ++i)
      for (const auto& [row, a] : cols[basis[i]].entries) B[std::size_t(row) * m + i] = a;
    std::vector<T> inv(std::size_t(m) * m, T{});
    for (int i = 0; i < m; ++i) inv[std::size_t(i) * m + i] = T(1);
    for (int k = 0; k < m; ++k) {
      int piv = -1;
      double best = 0;
      for (int i = k; i < m; ++i) {
        double mg = Tr::mag(B[std::size_t(i) * m + k]);
        if (mg > best && !Tr::is_zero(B[std::size_t(i) * m + k])) {
          best = mg;
          piv = i;
          if constexpr (std::is_same_v<T, Rational>) break;  // first nonzero is fine exactly
        }
      }
      if (piv < 0) return false;
      if (piv != k) {
        for (int t = 0; t < m; ++t) {
          std::swap(B[std::size_t(piv) * m + t], B[std::size_t(k) * m + t]);
          std::swap(inv[std::size_t(piv) * m + t], inv[std::size_t(k) * m + t]);
        }
      }
      T d = B[std::size_t(k) * m + k];
      for (int t = 0; t < m; ++t) {
        B[std::size_t(k) * m + t] = B[std::size_t(k) * m + t] / d;
        inv[std::size_t(k) * m + t] = inv[std::size_t(k) * m + t] / d;
      }
      for (int i = 0; i < m; ++i) {
        if (i == k) continue;
        T f = B[std::size_t(i) * m + k];
        if (Tr::is_zero(f)) continue;
        for (int t = 0; t < m; ++t) {
          B[std::size_t(i) * m + t] -= f * B[std::size_t(k) * m + t];
          inv[std::size_t(i) * m + t] -= f * inv[std::size_t(k) * m + t];
        }
      }
    }
    // inv now holds B^{-1} in permuted row order matching elimination; since we
    // did full Gauss-Jordan with row swaps applied to both, inv == B^{-1}.
    binv = std::move(inv);
    recompute_values();
    return true;
  }

  std::vector<T> btran(const std::vector<T>& cB) const {
    // y = cB^T B^{-1}
    std::vector<T> y(m, T{});
    for (int i = 0; i < m; ++i) {
      if (Tr::is_zero(cB[i])) continue;
      for (int t = 0; t < m; ++t) {
        const T& b = binv[std::size_t(i) * m + t];
        if (!Tr::is_zero(b)) y[t] += cB[i] * b;
      }
    }
    return y;
  }

  std::vector<T> ftran(int j) const {
    // w = B^{-1} A_j
    std::vector<T> w(m, T{});
    for (const auto& [row, a] : cols[j].entries) {
      if (Tr::is_zero(a)) continue;
      for (int i = 0; i < m; ++i) {
        const T& b = binv[std::size_t(i) * m + row];
        if (!Tr::is_zero(b)) w[i] += a * b;
      }
    }
    return w;
  }

  T reduced_cost(int j, const std::vector<T>& y, bool phase1) const {
    T d = phase1 ? (cols[j].kind == VKind::Artificial ? T(-1) : T{}) : cols[j].obj;
    for (const auto& [row, a] : cols[j].entries) d -= y[row] * a;
    return d;
  }

  struct StepResult {
    bool progressed = false;
    bool unbounded = false;
    int entering = -1;
  };

  // One pricing + pivot step. Maximizes the phase objective.
  StepResult step(bool phase1, bool bland) {
    std::vector<T> cB(m);
    for (int i = 0; i < m; ++i)
      cB[i] = phase1 ? (cols[basis[i]].kind == VKind::Artificial ? T(-1) : T{}) : cols[basis[i]].obj;
    std::vector<T> y = btran(cB);

    int enter = -1;
    int dir = 0;
    double best_mag = 0;
    for (int j = 0; j < int(cols.size()); ++j) {
      VState st = state[j];
      if (st == VState::Basic || st == VState::Removed) continue;
      const Col& c = cols[j];
      if (c.has_lo && c.has_up && !Tr::lt(c.lo, c.up)) continue;  // fixed
      if (!phase1 && c.kind == VKind::Artificial) continue;
      T d = reduced_cost(j, y, phase1);
      int sigma = 0;
      if (st == VState::AtLo && Tr::pos(d)) sigma = 1;
      else if (st == VState::AtUp && Tr::neg(d)) sigma = -1;
      else if (st == VState::Free && Tr::pos(d)) sigma = 1;
      else if (st == VState::Free && Tr::neg(d)) sigma = -1;
      if (sigma == 0) continue;
      if (bland) {
        enter = j;
        dir = sigma;
        break;
      }
      double mg = Tr::mag(d);
      if (enter < 0 || mg > best_mag) {
        enter = j;
        dir = sigma;
        best_mag = mg;
      }
    }
    if (enter < 0) return {};  // optimal for this phase

    std::vector<T> w = ftran(enter);
    // Ratio test.
    bool have_t = false;
    T tbest{};
    int leave_slot = -1;
    int leave_dir = 0;  // +1: leaving var hits its lower bound, -1: upper
    for (int i = 0; i < m; ++i) {
      T delta = (dir > 0) ? w[i] : T(-w[i]);
      const Col& bc = cols[basis[i]];
      if (Tr::pos(delta) && bc.has_lo) {
        T t = (value[basis[i]] - bc.lo) / delta;
        if (Tr::neg(t)) t = T{};
        if (!have_t || Tr::lt(t, tbest) ||
            (!Tr::lt(tbest, t) && leave_slot >= 0 && basis[i] < basis[leave_slot])) {
          have_t = true;
          tbest = t;
          leave_slot = i;
          leave_dir = 1;
        }
      } else if (Tr::neg(delta) && bc.has_up) {
        T t = (bc.up - value[basis[i]]) / T(-delta);
        if (Tr::neg(t)) t = T{};
        if (!have_t || Tr::lt(t, tbest) ||
            (!Tr::lt(tbest, t) && leave_slot >= 0 && basis[i] < basis[leave_slot])) {
          have_t = true;
          tbest = t;
          leave_slot = i;
          leave_dir = -1;
        }
      }
    }
    // Entering variable's own opposite bound.
    bool own = false;
    T town{};
    const Col& ec = cols[enter];
    if (dir > 0 && ec.has_up) {
      town = ec.up - value[enter];
      own = true;
    } else if (dir < 0 && ec.has_lo) {
      town = value[enter] - ec.lo;
      own = true;
    }
    if (own && (!have_t || !Tr::lt(tbest, town))) {
      // Bound flip.
      T t = town;
      for (int i = 0; i < m; ++i)
        if (!Tr::is_zero(w[i])) value[basis[i]] -= (dir > 0 ? t * w[i] : T(-(t * w[i])));
      value[enter] = (dir > 0) ? ec.up : ec.lo;
      state[enter] = (dir > 0) ? VState::AtUp : VState::AtLo;
      ++pivots;
      return {true, false, enter};
    }
    if (!have_t) return {false, true, enter};  // unbounded in this direction

    // Pivot.
    int lv = basis[leave_slot];
    T t = tbest;
    for (int i = 0; i < m; ++i)
      if (!Tr::is_zero(w[i])) value[basis[i]] -= (dir > 0 ? t * w[i] : T(-(t * w[i])));
    T enter_val = value[enter] + (dir > 0 ? t : T(-t));
    value[lv] = (leave_dir > 0) ? cols[lv].lo : cols[lv].up;
    state[lv] = (leave_dir > 0) ? VState::AtLo : VState::AtUp;
    if (cols[lv].kind == VKind::Artificial) state[lv] = VState::Removed;
    state[enter] = VState::Basic;
    basis[leave_slot] = enter;
    value[enter] = enter_val;
    // Update B^{-1}: row ops making column `enter` unit at leave_slot.
    T piv = w[leave_slot];
    for (int tcol = 0; tcol < m; ++tcol) binv[std::size_t(leave_slot) * m + tcol] = binv[std::size_t(leave_slot) * m + tcol] / piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave_slot || Tr::is_zero(w[i])) continue;
      T f = w[i];
      for (int tcol = 0; tcol < m; ++tcol)
        binv[std::size_t(i) * m + tcol] -= f * binv[std::size_t(leave_slot) * m + tcol];
    }
    ++pivots;
    if ((pivots & 1023) == 0 && std::is_same_v<T, double>) refactor();
    return {true, false, enter};
  }

  T phase1_objective() const {
    T z{};
    for (int j = 0; j < int(cols.size()); ++j)
      if (cols[j].kind == VKind::Artificial && state[j] != VState::Removed) z += value[j];
    return z;
  }

  // Runs a phase to optimality. Returns false if unbounded (phase 2 only).
  bool run_phase(bool phase1) {
    long degen = 0;
    bool bland = false;
    T last_obj{};
    bool have_last = false;
    while (true) {
      if (pivots > max_pivots) throw Error("simplex pivot budget exhausted");
      if (phase1 && !Tr::pos(phase1_objective())) return true;
      StepResult sr = step(phase1, bland);
      if (sr.unbounded) return false;
      if (!sr.progressed) return true;
      T obj = phase1 ? T(-phase1_objective()) : current_objective();
      if (have_last && !Tr::lt(last_obj, obj)) {
        if (++degen > 40) bland = true;
      } else {
        degen = 0;
        bland = false;
      }
      last_obj = obj;
      have_last = true;
    }
  }

  T current_objective() const {
    T z{};
    for (int j = 0; j < int(cols.size()); ++j)
      if (state[j] != VState::Removed && !Tr::is_zero(cols[j].obj) && !Tr::is_zero(value[j]))
        z += cols[j].obj * value[j];
    return z;
  }

  bool basics_feasible() const {
    for (int i = 0; i < m; ++i) {
      const Col& c = cols[basis[i]];
      const T& v = value[basis[i]];
      if (c.has_lo && Tr::feas_lt(v, c.lo)) return false;
      if (c.has_up && Tr::feas_lt(c.up, v)) return false;
    }
    return true;
  }

  // After phase 1 reached 0: drop artificials from the basis where possible.
  void cleanup_artificials() {
    for (int i = 0; i < m; ++i) {
      int j = basis[i];
      if (cols[j].kind != VKind::Artificial) continue;
      // Try to pivot a non-artificial column in.
      int found = -1;
      for (int cj = 0; cj < int(cols.size()); ++cj) {
        if (state[cj] != VState::AtLo && state[cj] != VState::AtUp && state[cj] != VState::Free) continue;
        if (cols[cj].kind == VKind::Artificial) continue;
        // w_i = (B^{-1} A_cj)_i
        T wi{};
        for (const auto& [row, a] : cols[cj].entries) wi += binv_at(i, row) * a;
        if (!Tr::is_zero(wi)) {
          found = cj;
          // Degenerate pivot: artificial leaves at value 0.
          std::vector<T> w = ftran(cj);
          T piv = w[i];
          state[j] = VState::Removed;
          value[j] = T{};
          state[cj] = VState::Basic;
          T newval = value[cj];  // entering stays at its current value (t = 0)
          basis[i] = cj;
          value[cj] = newval;
          for (int tcol = 0; tcol < m; ++tcol) binv[std::size_t(i) * m + tcol] = binv[std::size_t(i) * m + tcol] / piv;
          for (int r2 = 0; r2 < m; ++r2) {
            if (r2 == i || Tr::is_zero(w[r2])) continue;
            T f = w[r2];
            for (int tcol = 0; tcol < m; ++tcol)
              binv[std::size_t(r2) * m + tcol] -= f * binv[std::size_t(i) * m + tcol];
          }
          recompute_values();
          break;
        }
      }
      if (found < 0) {
        // Dependent row: freeze the artificial at zero.
        cols[j].has_lo = cols[j].has_up = true;
        cols[j].lo = cols[j].up = T{};
      }
    }
    for (int j = 0; j < int(cols.size()); ++j)
      if (cols[j].kind == VKind::Artificial && state[j] != VState::Basic) state[j] = VState::Removed;
    any_artificial = false;
    for (int i = 0; i < m; ++i)
      if (cols[basis[i]].kind == VKind::Artificial) any_artificial = true;
  }
};

}  // namespace

struct SimplexSolver::Impl {
  int nvars;
  std::vector<VarBounds> bounds;
  RatVector objective;
  std::vector<LinRow> all_rows;
  Core<Rational> core;
  bool core_started = false;
  bool objective_dirty = true;

  explicit Impl(int n, std::vector<VarBounds> b) : nvars(n), bounds(std::move(b)) {
    if (bounds.empty()) bounds.assign(n, VarBounds{});
    objective.assign(n, Rational(0));
  }

  void start_core() {
    if (core_started) return;
    for (int j = 0; j < nvars; ++j) {
      const VarBounds& vb = bounds[j];
      core.add_structural(vb.lo.has_value(), vb.lo.value_or(Rational(0)), vb.hi.has_value(),
                          vb.hi.value_or(Rational(0)));
    }
    core_started = true;
    for (const LinRow& r : all_rows) push_row(r);
  }

  void push_row(const LinRow& r) {
    std::vector<std::pair<int, Rational>> terms(r.terms.begin(), r.terms.end());
    core.add_row(terms, r.rel, r.rhs);
  }

  void sync_objective() {
    for (int j = 0; j < nvars; ++j) core.cols[j].obj = objective[j];
    objective_dirty = false;
  }

  // Canonical id: structural j -> j, slack of row r -> nvars + r, artificial -> -1.
  template <class T>
  static int canon_id(const Core<T>& c, int col, int nvars) {
    if (c.cols[col].kind == VKind::Structural) return col;
    if (c.cols[col].kind == VKind::Slack) return nvars + c.cols[col].row;
    return -1;
  }

  // Attempt a warm start of the exact core from a float solve of the same data.
  void float_probe() {
    Core<double> fc;
    fc.max_pivots = 4'000'000;
    for (int j = 0; j < nvars; ++j) {
      const VarBounds& vb = bounds[j];
      fc.add_structural(vb.lo.has_value(), vb.lo ? vb.lo->get_d() : 0.0, vb.hi.has_value(),
                        vb.hi ? vb.hi->get_d() : 0.0);
    }
    for (const LinRow& r : all_rows) {
      std::vector<std::pair<int, double>> terms;
      terms.reserve(r.terms.size());
      for (const auto& [v, c] : r.terms) terms.push_back({v, c.get_d()});
      fc.add_row(terms, r.rel, r.rhs.get_d());
    }
    for (int j = 0; j < nvars; ++j) fc.cols[j].obj = objective[j].get_d();
    try {
      if (fc.any_artificial) {
        if (!fc.run_phase(true)) return;
        if (ScalarTraits<double>::pos(fc.phase1_objective())) return;  // looks infeasible: let exact decide
        fc.cleanup_artificials();
        if (fc.any_artificial) return;
      }
      fc.refactor();
      if (!fc.basics_feasible()) return;
      fc.run_phase(false);
    } catch (const Error&) {
      return;
    }
    // Transplant basis and nonbasic states, matching columns by canonical id.
    int n_canon = nvars + int(all_rows.size());
    std::vector<int> exact_by_canon(n_canon, -1);
    for (int j = 0; j < int(core.cols.size()); ++j) {
      int c = canon_id(core, j, nvars);
      if (c >= 0) exact_by_canon[c] = j;
    }
    std::vector<int> new_basis(core.m, -1);
    for (int i = 0; i < fc.m; ++i) {
      int c = canon_id(fc, fc.basis[i], nvars);
      if (c < 0 || exact_by_canon[c] < 0) return;  // unusable basis
      new_basis[i] = exact_by_canon[c];
    }
    std::vector<VState> new_state(core.cols.size(), VState::Removed);
    std::vector<bool> seen(core.cols.size(), false);
    for (int j = 0; j < int(fc.cols.size()); ++j) {
      int c = canon_id(fc, j, nvars);
      if (c < 0) continue;
      int ej = exact_by_canon[c];
      VState st = fc.state[j];
      if (st == VState::Removed) return;
      new_state[ej] = st;
      seen[ej] = true;
    }
    for (int j = 0; j < int(core.cols.size()); ++j) {
      if (core.cols[j].kind != VKind::Artificial && !seen[j]) return;
      if (core.cols[j].kind == VKind::Artificial) new_state[j] = VState::Removed;
    }
    auto saved_basis = core.basis;
    auto saved_state = core.state;
    auto saved_value = core.value;
    core.basis = new_basis;
    core.state = new_state;
    for (int j = 0; j < int(core.cols.size()); ++j) {
      const auto& c = core.cols[j];
      if (core.state[j] == VState::AtLo)
        core.value[j] = c.has_lo ? c.lo : Rational(0);
      else if (core.state[j] == VState::AtUp)
        core.value[j] = c.has_up ? c.up : Rational(0);
      else if (core.state[j] == VState::Free)
        core.value[j] = Rational(0);
    }
    if (!core.refactor() || !core.basics_feasible()) {
      core.basis = saved_basis;
      core.state = saved_state;
      core.value = saved_value;
      core.refactor();
      return;
    }
    core.any_artificial = false;
  }

  LPOutcome solve(const SolveOptions& opts) {
    start_core();
    core.max_pivots = opts.max_pivots;
    sync_objective();
    if (opts.float_probe && core.m >= 200) float_probe();

    if (core.any_artificial) {
      core.run_phase(true);
      if (ScalarTraits<Rational>::pos(core.phase1_objective())) return make_infeasible();
      core.cleanup_artificials();
    }
    if (!core.basics_feasible()) {
      // Warm basis went stale (should not happen); rebuild from scratch.
      throw Error("simplex internal error: infeasible basis after phase 1");
    }
    bool bounded = core.run_phase(false);
    if (!bounded) return make_unbounded();
    LPOutcome out;
    out.status = LPStatus::Optimal;
    out.point.resize(nvars);
    for (int j = 0; j < nvars; ++j) out.point[j] = core.value[j];
    out.value = 0;
    for (int j = 0; j < nvars; ++j) out.value += objective[j] * out.point[j];
    return out;
  }

  LPOutcome make_infeasible() {
    LPOutcome out;
    out.status = LPStatus::Infeasible;
    // y = cB B^{-1} with phase-1 costs; farkas_i = y_i.
    std::vector<Rational> cB(core.m, Rational(0));
    for (int i = 0; i < core.m; ++i)
      if (core.cols[core.basis[i]].kind == VKind::Artificial) cB[i] = -1;
    std::vector<Rational> y = core.btran(cB);
    out.farkas.assign(all_rows.size(), Rational(0));
    for (std::size_t i = 0; i < all_rows.size(); ++i) out.farkas[i] = y[i];
    return out;
  }

  LPOutcome make_unbounded() {
    LPOutcome out;
    out.status = LPStatus::Unbounded;
    out.point.resize(nvars);
    for (int j = 0; j < nvars; ++j) out.point[j] = core.value[j];
    // Recover the improving direction from one more pricing pass.
    std::vector<Rational> cB(core.m);
    for (int i = 0; i < core.m; ++i) cB[i] = core.cols[core.basis[i]].obj;
    std::vector<Rational> y = core.btran(cB);
    int enter = -1;
    int dir = 0;
    for (int j = 0; j < int(core.cols.size()); ++j) {
      VState st = core.state[j];
      if (st == VState::Basic || st == VState::Removed) continue;
      if (core.cols[j].kind == VKind::Artificial) continue;
      const auto& c = core.cols[j];
      if (c.has_lo && c.has_up && !(c.lo < c.up)) continue;
      Rational d = core.reduced_cost(j, y, false);
      int sigma = 0;
      if (st == VState::AtLo && d > 0) sigma = 1;
      else if (st == VState::AtUp && d < 0) sigma = -1;
      else if (st == VState::Free && d != 0) sigma = d > 0 ? 1 : -1;
      if (sigma == 0) continue;
      std::vector<Rational> w = core.ftran(j);
      bool blocked = false;
      if (sigma > 0 && c.has_up) blocked = true;
      if (sigma < 0 && c.has_lo) blocked = true;
      if (!blocked) {
        for (int i = 0; i < core.m && !blocked; ++i) {
          Rational delta = sigma > 0 ? w[i] : Rational(-w[i]);
          const auto& bc = core.cols[core.basis[i]];
          if (delta > 0 && bc.has_lo) blocked = true;
          if (delta < 0 && bc.has_up) blocked = true;
        }
      }
      if (!blocked) {
        enter = j;
        dir = sigma;
        out.ray.assign(nvars, Rational(0));
        if (j < nvars) out.ray[j] = dir;
        for (int i = 0; i < core.m; ++i)
          if (core.basis[i] < nvars) out.ray[core.basis[i]] = -Rational(dir) * w[i];
        break;
      }
    }
    if (enter < 0) throw Error("simplex internal error: lost unbounded direction");
    return out;
  }
};

SimplexSolver::SimplexSolver(int num_vars, std::vector<VarBounds> bounds)
    : impl_(std::make_unique<Impl>(num_vars, std::move(bounds))) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

void SimplexSolver::set_objective(const RatVector& c) {
  if (int(c.size()) != impl_->nvars) throw Error("objective dimension mismatch");
  impl_->objective = c;
  impl_->objective_dirty = true;
}

int SimplexSolver::add_row(const LinRow& r) {
  for (const auto& [v, coef] : r.terms) {
    (void)coef;
    if (v < 0 || v >= impl_->nvars) throw Error("row references unknown variable");
  }
  impl_->all_rows.push_back(r);
  if (impl_->core_started) impl_->push_row(r);
  return int(impl_->all_rows.size()) - 1;
}

int SimplexSolver::num_rows() const { return int(impl_->all_rows.size()); }

LPOutcome SimplexSolver::solve(const SolveOptions& opts) { return impl_->solve(opts); }

LPOutcome lp_solve(const LinearProgram& p, const SolveOptions& opts) {
  if (!p.bounds.empty() && int(p.bounds.size()) != p.num_vars)
    throw Error("lp_solve: bounds dimension mismatch");
  if (!p.objective.empty() && int(p.objective.size()) != p.num_vars)
    throw Error("lp_solve: objective dimension mismatch");
  for (const LinRow& r : p.rows)
    for (const auto& [v, c] : r.terms) {
      (void)c;
      if (v < 0 || v >= p.num_vars) throw Error("lp_solve: row references unknown variable");
    }
  SimplexSolver s(p.num_vars, p.bounds);
  if (!p.objective.empty()) s.set_objective(p.objective);
  for (const LinRow& r : p.rows) s.add_row(r);
  return s.solve(opts);
}

bool lp_point_feasible(const LinearProgram& p, const RatVector& point) {
  if (int(point.size()) != p.num_vars) return false;
  if (!p.bounds.empty()) {
    for (int j = 0; j < p.num_vars; ++j) {
      if (p.bounds[j].lo && point[j] < *p.bounds[j].lo) return false;
      if (p.bounds[j].hi && point[j] > *p.bounds[j].hi) return false;
    }
  } else {
    for (int j = 0; j < p.num_vars; ++j)
      if (point[j] < 0) return false;
  }
  for (const LinRow& r : p.rows) {
    Rational lhs = 0;
    for (const auto& [v, c] : r.terms) lhs += c * point[v];
    if (r.rel == Rel::LE && lhs > r.rhs) return false;
    if (r.rel == Rel::GE && lhs < r.rhs) return false;
    if (r.rel == Rel::EQ && lhs != r.rhs) return false;
  }
  return true;
}

bool lp_farkas_valid(const LinearProgram& p, const RatVector& farkas) {
  if (farkas.size() != p.rows.size()) return false;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (p.rows[i].rel == Rel::LE && farkas[i] < 0) return false;
    if (p.rows[i].rel == Rel::GE && farkas[i] > 0) return false;
  }
  RatVector q(p.num_vars, Rational(0));
  Rational rhs = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (farkas[i] == 0) continue;
    for (const auto& [v, c] : p.rows[i].terms) q[v] += farkas[i] * c;
    rhs += farkas[i] * p.rows[i].rhs;
  }
  // min over the variable box of q^T x must strictly exceed rhs.
  Rational lo_sum = 0;
  for (int j = 0; j < p.num_vars; ++j) {
    if (q[j] == 0) continue;
    std::optional<Rational> lo = Rational(0), hi;
    if (!p.bounds.empty()) {
      lo = p.bounds[j].lo;
      hi = p.bounds[j].hi;
    }
    if (q[j] > 0) {
      if (!lo) return false;
      lo_sum += q[j] * *lo;
    } else {
      if (!hi) return false;
      lo_sum += q[j] * *hi;
    }
  }
  return lo_sum > rhs;
}

}  // namespace liftlab
