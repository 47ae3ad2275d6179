#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liftlab/cube.hpp"
#include "liftlab/dd.hpp"
#include "liftlab/lp.hpp"
#include "liftlab/rational.hpp"

namespace liftlab {

/// Rational H-polytope {x : Ax <= b} inside the implicit box 0 <= x <= 1.
struct HPolytope {
  int n = 0;
  RatMatrix A;  // m x n
  RatVector b;  // m
  std::string name;

  int m() const { return A.rows(); }
  bool row_satisfied(int i, const RatVector& x) const;
  bool contains(const RatVector& x) const;
  bool contains_point(std::uint32_t mask) const;

  /// Lower-comprehensive input form required by the BZ family: A >= 0, b > 0.
  bool is_lower_comprehensive() const;

  static HPolytope make(int n, std::vector<std::pair<RatVector, Rational>> rows,
                        std::string name = "");
};

/// Append the rows of "y in K(P)": y0 >= 0, A y_x <= y0 b, 0 <= y_x <= y0,
/// where y0 and y_x are existing LP variables.
void emit_cone_rows(const HPolytope& p, SimplexSolver& lp, int y0_var,
                    const std::vector<int>& x_vars,
                    const std::vector<std::pair<RatVector, Rational>>* extra_eq_rows = nullptr);

LPOutcome optimize(const HPolytope& p, const RatVector& c);
bool polytope_feasible(const HPolytope& p);

struct IntegerHull {
  int n = 0;
  std::vector<std::uint32_t> point_masks;
  std::vector<RatVector> points;
  HRep facets;  // populated when n <= 10 and the hull is nonempty
  bool empty = true;
  bool facets_available = false;
};

IntegerHull integer_hull(const HPolytope& p);

/// conv(a) ∩ conv(b) ∩ P = ∅ decided by exact LP feasibility.
bool conv_meet_empty(const GenCube& a, const GenCube& b, const HPolytope& p);

/// Exact support-function oracle: direction -> (optimum, optimizer), or
/// nullopt when the underlying relaxation is infeasible.
using SupportOracle =
    std::function<std::optional<std::pair<Rational, RatVector>>(const RatVector&)>;

struct Projection {
  int n = 0;
  bool empty = false;
  HRep h;                         // facets + equalities of the projection
  std::vector<RatVector> points;  // the supporting points found
};

/// Exact H-representation of the set described by an exact support oracle
/// (supporting-hyperplane convex hull method). Intended for n <= 6.
Projection project_relaxation(const SupportOracle& oracle, int n);

HPolytope projection_to_hpolytope(const Projection& pr, const std::string& name = "");

/// True iff the oracle's set equals the hull: the oracle value never exceeds
/// any hull facet's rhs; an empty hull means the oracle must be infeasible.
bool equals_integer_hull(const SupportOracle& oracle, const IntegerHull& hull,
                         RatVector* witness_direction = nullptr, Rational* witness_value = nullptr,
                         Rational* witness_rhs = nullptr);

}  // namespace liftlab
