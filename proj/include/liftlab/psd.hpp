#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/eig.hpp"
#include "liftlab/lifted.hpp"

namespace liftlab {

/// Square-family systems for the PSD kinds: LS+ over A_1^+, SA+(')^k over
/// A_k x A_k, with the PSD flag set (BZ+ kinds come straight from build_bz).
LiftedProblem build_psd_problem(OperatorSpec spec, const HPolytope& p,
                                const BuildConfig& cfg = {});

struct SDPConfig {
  double tol_lin = 1e-8;
  double tol_psd = 1e-9;
  double gap = 1e-6;
  long max_iters = 400000;
  int stall_window = 20000;
  bool keep_trace = false;
};

enum class SDPStatus { FeasibleWithin, LikelyInfeasible, Inconclusive };

struct SDPSolveResult {
  SDPStatus status = SDPStatus::Inconclusive;
  bool exact_infeasible = false;  // the linear part alone is infeasible (exact)
  double value = 0;               // witness objective value
  bool lp_upper_valid = false;
  Rational lp_upper;              // exact optimum of the linear part
  bool closed_by_bounds = false;  // integral witness met the exact LP bound
  Rational exact_value;           // when closed_by_bounds
  std::vector<double> vars;       // witness values per problem variable
  double max_lin_violation = 0;
  double min_eig = 0;
  std::vector<std::string> trace;  // "iter,residual,min_eig" lines
};

struct SDPQuery {
  const LiftedProblem* prob = nullptr;
  RatVector objective;                 // maximized; empty = feasibility
  std::optional<RatVector> pin_x;      // membership point
  std::vector<LinRow> extra_rows;      // additional rows over problem variables
  SDPConfig cfg;
};

/// Bisection on the objective level over Dykstra-corrected alternating
/// projections (affine part by sparse least squares, cone part by eigenvalue
/// clipping). FeasibleWithin is witness-backed; infeasibility is advisory.
SDPSolveResult sdp_optimize(const SDPQuery& q);

SDPSolveResult sdp_membership(const LiftedProblem& p, const RatVector& x,
                              const SDPConfig& cfg = {});

/// Witness matrix as a rational certificate (entries are exact conversions of
/// the binary64 witness).
Certificate certificate_from_vars(const LiftedProblem& p, const std::vector<double>& vars);

struct EstablishedProfile {
  bool l1 = false, l2 = false, l3 = false, l4 = false, l5 = false;
  std::string witness;  // first violation
  bool all() const { return l1 && l2 && l3 && l4 && l5; }
};

EstablishedProfile check_l_established(const Certificate& y, int level, double tol_psd = 1e-9);

/// Z_i = sum of y_S over |S| = i, for i = 0..2*level; y_S extracted from
/// Y[S'|1, S''|1] with verified split invariance.
RatVector z_vector(const Certificate& y, int level);

struct ZiupResult {
  bool hypothesis = false;        // Z_{i+1} <= ((p-i)/(i+1)) Z_i on the window
  std::string witness;
  std::vector<Rational> implied_bounds;  // C(p, i) for i = 0..2l
  bool bounds_hold = false;       // Z_i <= C(p, i) checked directly
  bool cor13_applies = false;     // Z_i = 0 for all i > l
  bool cor13_bound_ok = false;    // then Z_1 <= l
};

ZiupResult ziup_check(const RatVector& z, long p, int level);

/// The switching-based constructive SA+^k certificate for x; requires
/// x^I_J in P for all disjoint I, J with |I|+|J| <= k.
Certificate saplus_certificate(const RatVector& x, const HPolytope& p, int k);

}  // namespace liftlab
