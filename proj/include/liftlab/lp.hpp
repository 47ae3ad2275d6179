#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "liftlab/rational.hpp"

namespace liftlab {

enum class Rel { LE, EQ, GE };

struct LinRow {
  std::vector<std::pair<int, Rational>> terms;  // (var, coefficient), vars unique
  Rel rel = Rel::LE;
  Rational rhs = 0;
};

struct VarBounds {
  std::optional<Rational> lo = Rational(0);
  std::optional<Rational> hi;  // none = +infinity
};

struct LinearProgram {
  int num_vars = 0;
  RatVector objective;  // maximize; empty = all zero (feasibility)
  std::vector<LinRow> rows;
  std::vector<VarBounds> bounds;  // empty = default [0, inf) for all

  int add_var(std::optional<Rational> lo = Rational(0), std::optional<Rational> hi = std::nullopt);
  void add_row(LinRow r) { rows.push_back(std::move(r)); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  RatVector point;   // Optimal: optimizer; Unbounded: feasible start point
  RatVector farkas;  // Infeasible: per-row multipliers, >= 0 for LE, <= 0 for GE, free for EQ;
                     // sum_i farkas_i * row_i is valid for the feasible set yet violated by
                     // the variable box alone.
  RatVector ray;     // Unbounded: improving feasible direction
};

struct SolveOptions {
  bool float_probe = true;   // solve in binary64 first, then certify/repair exactly
  long max_pivots = 50'000'000;
};

/// Exact rational simplex (Bland anti-cycling, bounded variables, two phases
/// with artificials). Supports incremental row addition with warm starts so
/// large lifted systems can be solved by row generation.
class SimplexSolver {
 public:
  explicit SimplexSolver(int num_vars, std::vector<VarBounds> bounds = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  void set_objective(const RatVector& c);  // maximize
  int add_row(const LinRow& r);
  int num_rows() const;

  LPOutcome solve(const SolveOptions& opts = {});

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

LPOutcome lp_solve(const LinearProgram& p, const SolveOptions& opts = {});

/// Exact check that `point` satisfies every row and bound of `p`.
bool lp_point_feasible(const LinearProgram& p, const RatVector& point);

/// Exact check of an infeasibility certificate as described in LPOutcome.
bool lp_farkas_valid(const LinearProgram& p, const RatVector& farkas);

}  // namespace liftlab
