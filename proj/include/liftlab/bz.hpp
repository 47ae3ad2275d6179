#pragma once

#include <vector>

#include "liftlab/lifted.hpp"
#include "liftlab/polytope.hpp"

namespace liftlab {

enum class BZVariant { Original, Prime, DoublePrime };

BZVariant bz_variant_of(OpKind kind);

struct Obstruction {
  IndexSet O;
  int source_row = -1;
};

struct WallSet {
  std::vector<IndexSet> walls;  // deduplicated, nonempty, sorted
};

struct TierSet {
  std::vector<IndexSet> tiers;  // deduplicated, sorted by (size, lex)
};

/// k-small obstructions of the system Ax <= b (lower-comprehensive required).
std::vector<Obstruction> gen_obstructions(const HPolytope& p, int k);

/// P plus the cut sum_{i in O} x_i <= |O|-1 per obstruction, duplicate rows removed.
HPolytope refine_Ok(const HPolytope& p, int k);

/// Wall rule: union of pairwise intersections of up to k+1 obstructions.
/// Prime draws the obstructions with repetition (each obstruction is a wall)
/// and adds all singletons; Original uses distinct obstructions only;
/// DoublePrime is Original plus the singletons.
WallSet gen_walls(BZVariant v, const std::vector<Obstruction>& obs, int k, int n);

/// Prime: all subsets of unions of up to k walls (capped). Original and
/// DoublePrime: the exact unions of up to k walls.
TierSet gen_tiers(BZVariant v, const WallSet& walls, int k, long cap);

/// Drops tier S when max{sum_{i in S} x_i : x in P} < |S| - k.
TierSet prune_useless_tiers(BZVariant v, const TierSet& tiers, int k, const HPolytope& p);

struct BZFamily {
  IndexFamily family;         // A': F, i|1, i|0 first, then tier variables
  std::vector<int> tier_of;   // generating tier index per member (-1 for the base part)
};

/// Step-1 variable family of the chosen variant. Original/DoublePrime derive
/// their tuple forms from the wall decompositions, hence the wall argument.
BZFamily gen_bz_variables(BZVariant v, const TierSet& tiers, const WallSet& walls, int k, int n);

struct BZSizes {
  long obstructions = 0;
  long walls = 0;
  long tiers = 0;
  long variables = 0;
  long constraints = 0;      // after deduplication
  long constraints_raw = 0;  // as generated
};

LiftedProblem build_bz(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg = {});
BZSizes bz_sizes(OperatorSpec spec, const HPolytope& p, const BuildConfig& cfg = {});

}  // namespace liftlab
