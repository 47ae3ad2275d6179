#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftlab/lifted.hpp"
#include "liftlab/psd.hpp"
#include "liftlab/sym.hpp"

namespace liftlab {

struct Instance {
  HPolytope poly;
  std::optional<SymmetryGroup> group;  // canonical symmetry when one is known
};

/// Named instances: FRAC:Km, FRAC:Fig3, FRAC:Fig5, FRAC:LKm (line graph of
/// Km), MT:Km, Pfamily:p,n, BZ7, Fig1, Fig3cut, RandomPacking:seed,n,m.
Instance gen_instance(const std::string& spec);

HPolytope random_packing(std::uint64_t seed, int n, int m);

/// True iff every generator maps the row multiset of P to itself.
bool group_preserves(const HPolytope& p, const SymmetryGroup& g);

/// Exact relaxation value in one direction; PSD kinds report the engine value
/// plus the exact linear-part upper bound.
struct RelaxValue {
  bool exact = true;
  Rational value;      // exact kinds
  double value_f = 0;  // PSD kinds (witness-backed)
  Rational lp_upper;   // PSD kinds: exact bound from the linear part
  bool feasible = true;
};

RelaxValue relax_optimize(OperatorSpec spec, const HPolytope& p, const RatVector& c,
                          const BuildConfig& bc = {}, const SDPConfig& sc = {});

/// Support oracle of a polyhedral relaxation (value and projected optimizer).
SupportOracle relaxation_oracle(OperatorSpec spec, const HPolytope& p, const BuildConfig& bc = {});

struct LevelVerdict {
  int k = 0;
  bool equals_hull = false;
  RatVector witness_direction;  // separating direction when not equal
  Rational lifted_value;
  Rational hull_value;
};

struct RankReport {
  OpKind family{};
  std::string instance;
  bool iterated = false;
  int rank = -1;  // smallest k with equality; -1 when k_max was reached first
  bool lower_bound_only = false;
  std::vector<LevelVerdict> levels;
};

/// Smallest k <= k_max with Gamma^k(P) = P_I; parameterized mode for SA/BZ
/// families, iterated mode (via projection) for LS0/LS only.
RankReport rank(OpKind family, const HPolytope& p, int k_max, bool iterated = false,
                const std::string& instance_name = "");

struct GapReport {
  OperatorSpec op;
  std::string instance;
  RatVector direction;
  bool exact = true;
  Rational relax_value;
  double relax_value_f = 0;
  Rational hull_value;
  Rational gamma;      // exact kinds
  double gamma_f = 0;  // PSD kinds
};

GapReport integrality_gap(const HPolytope& p, const RatVector& c, OperatorSpec spec,
                          const std::string& instance_name = "");

struct ScanResult {
  bool exact = true;
  Rational lambda;
  double lambda_f = 0;
  bool thm18_hypothesis = false;  // the group has a full n-cycle
};

/// Largest lambda with lambda*e in Gamma(P) (Gamma = identity when no spec).
ScanResult symmetric_scan(const HPolytope& p, std::optional<OperatorSpec> spec,
                          const SymmetryGroup* group);

/// Builds Gamma(P) with one variable per entry-key orbit; the group must map
/// the instance to itself.
LiftedProblem symmetry_reduce(OperatorSpec spec, const HPolytope& p, const SymmetryGroup& group,
                              BuildConfig cfg = {});

struct DominanceRow {
  RatVector direction;
  RelaxValue weaker;
  RelaxValue stronger;
  bool respected = false;
};

struct DominanceReport {
  OperatorSpec weaker_op;
  OperatorSpec stronger_op;
  std::string instance;
  std::vector<DominanceRow> rows;
  bool respected = true;
  std::string note = "directional evidence only; no set-containment claim";
};

/// Necessary test for "stronger dominates weaker": per-direction optima of the
/// stronger operator never exceed the weaker one's (with slack for PSD pairs).
DominanceReport dominance_probe(OperatorSpec weaker, OperatorSpec stronger, const HPolytope& p,
                                const std::vector<RatVector>& directions, double psd_slack = 1e-5);

std::vector<RatVector> random_directions(std::uint64_t seed, int n, int count);

}  // namespace liftlab
