#pragma once

#include <vector>

#include "liftlab/rational.hpp"

namespace liftlab {

struct HRep {
  // Inequalities a.x <= b and equalities a.x == b describing a convex hull.
  std::vector<std::pair<RatVector, Rational>> facets;
  std::vector<std::pair<RatVector, Rational>> equalities;
};

/// Facet enumeration for conv(points) by the double description method on the
/// polar of the homogenization cone. Lineality shows up as equalities.
HRep dd_facets(const std::vector<RatVector>& points);

}  // namespace liftlab
