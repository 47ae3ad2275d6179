#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "liftlab/cube.hpp"
#include "liftlab/lp.hpp"
#include "liftlab/polytope.hpp"
#include "liftlab/sym.hpp"

namespace liftlab {

enum class OpKind {
  BCC,
  LS0,
  LS,
  LSplus,
  SA,
  SAprime,
  SAplus,
  SAplusPrime,
  BZ,
  BZprime,
  BZdoubleprime,
  BZplus,
  BZprimePlus,
  BZdoubleprimePlus,
  CardPartition,
};

struct OperatorSpec {
  OpKind kind = OpKind::SA;
  int k = 1;  // level; coordinate index for BCC

  bool is_psd() const {
    return kind == OpKind::LSplus || kind == OpKind::SAplus || kind == OpKind::SAplusPrime ||
           kind == OpKind::BZplus || kind == OpKind::BZprimePlus ||
           kind == OpKind::BZdoubleprimePlus;
  }
  bool is_bz_family() const {
    return kind == OpKind::BZ || kind == OpKind::BZprime || kind == OpKind::BZdoubleprime ||
           kind == OpKind::BZplus || kind == OpKind::BZprimePlus ||
           kind == OpKind::BZdoubleprimePlus;
  }
  std::string text() const;
  static OperatorSpec parse(const std::string& s);

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

using LinExpr = std::vector<std::pair<int, Rational>>;

/// Canonical-key lookup shared by a built problem and its certificates; under
/// a symmetry group, keys are canonicalized over the group orbit.
struct KeyIndex {
  int n = 0;
  std::vector<Perm> elements;                          // empty = no group
  std::vector<std::vector<std::uint32_t>> atom_perm;   // per element: point map
  std::unordered_map<EntryKey, int, EntryKeyHash> map; // canonical key -> var

  EntryKey canonical(EntryKey k) const;
  /// Var of key(a, b): -1 for the empty set; throws if the key was never
  /// created by the builder.
  int find(const GenCube& a, const GenCube& b) const;
};

struct BuildConfig {
  const SymmetryGroup* group = nullptr;  // reduce to orbit variables / rep columns
  bool want_tags = false;
  long cap_tiers = 200000;  // BZ' tier enumeration guard
  int cap_usum = 12;        // |U| cap for the 2^|U| partition sums
  bool prune_tiers = false; // apply the P-useless tier pruning rule
};

/// A generated LP/SDP over entry variables keyed by canonical cube
/// intersections (or raw grid variables for the operators that need them).
struct LiftedProblem {
  int n = 0;
  OperatorSpec spec;
  HPolytope base;  // the input system (kept for verification paths)

  int num_vars = 0;
  std::vector<VarBounds> bounds;
  std::vector<LinRow> rows;
  std::vector<std::string> row_tags;  // parallel to rows when built with tags

  LinExpr one_expr;            // constrained to equal 1
  std::vector<LinExpr> xhat;   // n expressions giving the projected point

  bool keyed = false;
  IndexFamily row_family{0};
  IndexFamily col_family{0};
  std::vector<std::vector<int>> entry;  // var id per (row, col); -1 = empty key
  std::vector<GenCube> var_cube;        // representative cube per keyed var
  std::shared_ptr<KeyIndex> keys;       // keyed problems

  bool psd = false;  // square family with a PSD requirement on the full matrix

  std::vector<int> coord_orbit;  // group mode: orbit id per coordinate (else 0..n-1)

  std::size_t raw_constraint_count = 0;  // before deduplication
};

/// Populates p.entry from the key index (no-op when already present).
void ensure_entry_grid(LiftedProblem& p);

/// Shared assembly helper for all keyed builders (SA, BZ families, PSD kinds).
class LiftedBuilder {
 public:
  LiftedBuilder(const HPolytope& p, OperatorSpec spec, const BuildConfig& cfg);

  int n() const { return p_.n; }
  const HPolytope& base() const { return p_; }
  const BuildConfig& config() const { return cfg_; }

  /// Variable of the canonical key of a ∩ b (group-canonicalized when a group
  /// is present); -1 when the intersection is empty.
  int key_var(const GenCube& a, const GenCube& b);
  int cube_var(const GenCube& a);
  const GenCube& var_rep(int var) const { return var_cube_[var]; }
  void pin_zero(int var);
  bool is_pinned_zero(int var) const;

  void add_row(LinRow r, const std::string& tag);
  void add_expr_row(const LinExpr& e, Rel rel, const Rational& rhs, const std::string& tag);

  /// Rows of "(y0, x) in K(Q)" where y0 and x are expressions.
  void emit_cone_membership(const HPolytope& q, const LinExpr& y0,
                            const std::vector<LinExpr>& x, const std::string& tag);

  /// Column indices of `fam` to emit constraints for: all of them, or orbit
  /// representatives when a group is present.
  std::vector<int> column_reps(const IndexFamily& fam) const;

  /// Raw (non-keyed) variable for the grid-style builders.
  int add_raw_var(VarBounds b);

  int num_vars() const { return int(bounds_.size()); }

  /// Keyed finish: stores the families (entry grid filled when small or psd).
  LiftedProblem finish(IndexFamily row_fam, IndexFamily col_fam, bool psd);
  /// Raw finish: no key semantics; the caller sets families/entry if any.
  LiftedProblem finish_raw();

  LinExpr one_expr;
  std::vector<LinExpr> xhat;

 private:
  const HPolytope& p_;
  OperatorSpec spec_;
  BuildConfig cfg_;
  std::shared_ptr<KeyIndex> keys_;

  std::vector<GenCube> var_cube_;
  std::vector<VarBounds> bounds_;
  std::vector<LinRow> rows_;
  std::vector<std::string> tags_;
  std::unordered_map<std::size_t, std::vector<int>> hash_rows_;
  std::size_t raw_count_ = 0;
};

LiftedProblem build_ls_family(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg = {});
LiftedProblem build_sa(int k, bool prime, const HPolytope& p, const BuildConfig& cfg = {});
LiftedProblem build_card_partition(const HPolytope& p, const BuildConfig& cfg = {});

/// Builder dispatch for every polyhedral kind (PSD kinds get their polyhedral
/// part too, with the PSD flag set; the SDP engine adds the cone).
LiftedProblem build_operator(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg = {});

struct LiftedSolveConfig {
  int rowgen_threshold = 200;  // larger systems solve by row generation
  int rowgen_batch = 512;
  SolveOptions lp;
};

/// max c . x over the projection; pin_x fixes the projected point instead
/// (feasibility). Exactly one of obj/pin modes is used by the callers below.
LPOutcome lifted_solve(const LiftedProblem& p, const RatVector* objective, const RatVector* pin_x,
                       const LiftedSolveConfig& cfg = {});

LPOutcome lifted_optimize(const LiftedProblem& p, const RatVector& c,
                          const LiftedSolveConfig& cfg = {});

struct Certificate {
  OperatorSpec spec;
  int n = 0;
  IndexFamily rows{0};
  IndexFamily cols{0};
  RatMatrix Y;
  RatVector xhat;  // (1, x)
};

struct MembershipResult {
  bool member = false;
  std::optional<Certificate> certificate;  // keyed kinds when member
  RatVector point;                          // the queried point
  RatVector farkas;  // aligned with problem rows then the pin rows, when non-member
  bool farkas_checked = false;
};

MembershipResult lifted_membership(const LiftedProblem& p, const RatVector& x,
                                   const LiftedSolveConfig& cfg = {});

/// Builds the dense certificate matrix from a solved variable assignment.
Certificate extract_certificate(const LiftedProblem& p, const RatVector& var_values);

struct VerifyReport {
  bool pass = false;
  std::string first_violation;  // named condition when pass == false
  double min_eig = 0.0;         // PSD kinds
  bool exact_psd = false;       // PSD kinds: exact LDL^T verdict
};

/// Replays every condition of the operator against the certificate entries,
/// exactly; PSD checked both exactly and within tol_psd.
VerifyReport verify_certificate(OperatorSpec spec, const HPolytope& p, const Certificate& cert,
                                double tol_psd = 1e-9);

/// Integral certificate over the operator's own families.
Certificate integral_operator_certificate(const LiftedProblem& p, std::uint32_t point_mask);

}  // namespace liftlab
