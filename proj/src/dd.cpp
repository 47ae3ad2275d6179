#include "liftlab/dd.hpp"

#include <algorithm>

namespace liftlab {

namespace {

// Scale to a primitive integer vector (clears denominators, divides by gcd).
RatVector primitive(const RatVector& v) {
  mpz_class lcm = 1;
  for (const Rational& x : v) {
    mpz_class d = x.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
    lcm = lcm / g * d;
  }
  std::vector<mpz_class> w(v.size());
  mpz_class gall = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = mpz_class(v[i].get_num() * (lcm / v[i].get_den()));
    mpz_gcd(gall.get_mpz_t(), gall.get_mpz_t(), w[i].get_mpz_t());
  }
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = gall == 0 ? Rational(0) : Rational(w[i] / gall);
  return out;
}

struct Ray {
  RatVector v;
  std::vector<bool> zero;  // per processed row: a_i . v == 0
};

}  // namespace

HRep dd_facets(const std::vector<RatVector>& points) {
  HRep out;
  if (points.empty()) return out;
  const int d = int(points.size() ? points[0].size() : 0) + 1;  // homogenized dim

  // Rows of the polar system: (1, p_i) . y >= 0.
  std::vector<RatVector> rows;
  rows.reserve(points.size());
  for (const RatVector& p : points) {
    RatVector r(d);
    r[0] = 1;
    for (int j = 1; j < d; ++j) r[j] = p[j - 1];
    rows.push_back(std::move(r));
  }

  // Start from the whole space: lineality basis = unit vectors, no rays.
  std::vector<RatVector> lin;
  for (int j = 0; j < d; ++j) {
    RatVector e(d, Rational(0));
    e[j] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  auto dotv = [](const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };

  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    const RatVector& a = rows[ri];
    int piv = -1;
    for (std::size_t l = 0; l < lin.size(); ++l)
      if (dotv(a, lin[l]) != 0) {
        piv = int(l);
        break;
      }
    if (piv >= 0) {
      // Reduce lineality by one; the pivot becomes a boundary ray.
      RatVector lp = lin[piv];
      Rational alp = dotv(a, lp);
      std::vector<RatVector> nl;
      for (std::size_t l = 0; l < lin.size(); ++l) {
        if (int(l) == piv) continue;
        Rational f = dotv(a, lin[l]) / alp;
        RatVector w = lin[l];
        for (int j = 0; j < d; ++j) w[j] -= f * lp[j];
        nl.push_back(std::move(w));
      }
      lin = std::move(nl);
      for (Ray& r : rays) {
        Rational f = dotv(a, r.v) / alp;
        if (f != 0)
          for (int j = 0; j < d; ++j) r.v[j] -= f * lp[j];
        r.zero.push_back(true);
      }
      Ray r0;
      r0.v = lp;
      if (alp < 0)
        for (int j = 0; j < d; ++j) r0.v[j] = -r0.v[j];
      r0.zero.assign(ri, false);  // earlier zero pattern recomputed below
      for (std::size_t q = 0; q < ri; ++q) r0.zero[q] = dotv(rows[q], r0.v) == 0;
      r0.zero.push_back(false);  // a . r0 = |alp| > 0
      rays.push_back(std::move(r0));
      continue;
    }
    // Lineality orthogonal to a: split rays.
    std::vector<Ray> plus, minus, zero;
    for (Ray& r : rays) {
      Rational s = dotv(a, r.v);
      if (s > 0) {
        r.zero.push_back(false);
        plus.push_back(std::move(r));
      } else if (s < 0) {
        r.zero.push_back(false);
        minus.push_back(std::move(r));
      } else {
        r.zero.push_back(true);
        zero.push_back(std::move(r));
      }
    }
    std::vector<Ray> next = plus;
    next.insert(next.end(), zero.begin(), zero.end());
    for (const Ray& p : plus) {
      for (const Ray& m : minus) {
        // Adjacency: no third ray's zero set contains zero(p) & zero(m).
        std::vector<bool> common(ri, false);
        for (std::size_t q = 0; q < ri; ++q) common[q] = p.zero[q] && m.zero[q];
        bool adjacent = true;
        auto dominated_by = [&](const Ray& r2) {
          for (std::size_t q = 0; q < ri; ++q)
            if (common[q] && !r2.zero[q]) return false;
          return true;
        };
        for (const Ray& r2 : plus)
          if (&r2 != &p && dominated_by(r2)) {
            adjacent = false;
            break;
          }
        if (adjacent)
          for (const Ray& r2 : minus)
            if (&r2 != &m && dominated_by(r2)) {
              adjacent = false;
              break;
            }
        if (adjacent)
          for (const Ray& r2 : zero)
            if (dominated_by(r2)) {
              adjacent = false;
              break;
            }
        if (!adjacent) continue;
        Rational sp = dotv(a, p.v);
        Rational sm = dotv(a, m.v);
        Ray nr;
        nr.v.assign(d, Rational(0));
        for (int j = 0; j < d; ++j) nr.v[j] = sp * m.v[j] - sm * p.v[j];
        nr.v = primitive(nr.v);
        nr.zero.assign(ri + 1, false);
        for (std::size_t q = 0; q <= ri; ++q) nr.zero[q] = dotv(rows[q], nr.v) == 0;
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }

  // Final extremality filter: a surviving ray is a facet iff its tight-row
  // system has corank dim(lineality) + 1. This also drops any redundant rays
  // the combinatorial adjacency pre-filter let through.
  auto rank_of = [&](const std::vector<int>& row_ids) {
    std::vector<RatVector> m;
    for (int q : row_ids) m.push_back(rows[q]);
    int rank = 0;
    for (int col = 0; col < d && rank < int(m.size()); ++col) {
      int piv = -1;
      for (int i = rank; i < int(m.size()); ++i)
        if (m[i][col] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[rank], m[piv]);
      for (int i = 0; i < int(m.size()); ++i) {
        if (i == rank || m[i][col] == 0) continue;
        Rational f = m[i][col] / m[rank][col];
        for (int j = col; j < d; ++j) m[i][j] -= f * m[rank][j];
      }
      ++rank;
    }
    return rank;
  };
  const int lin_dim = int(lin.size());
  std::vector<std::pair<RatVector, Rational>> seen;
  for (const Ray& r : rays) {
    bool nonzero = false;
    for (int j = 1; j < d; ++j)
      if (r.v[j] != 0) nonzero = true;
    if (!nonzero) continue;  // the trivial 0 <= a0 ray
    std::vector<int> tight;
    for (std::size_t q = 0; q < rows.size(); ++q)
      if (r.zero[q]) tight.push_back(int(q));
    if (rank_of(tight) != d - lin_dim - 1) continue;
    RatVector a(d - 1);
    for (int j = 1; j < d; ++j) a[j - 1] = -r.v[j];
    RatVector pa = primitive(a);
    Rational s = 0;
    for (int j = 1; j < d; ++j)
      if (r.v[j] != 0) {
        s = pa[j - 1] / Rational(-r.v[j]);
        break;
      }
    std::pair<RatVector, Rational> facet{pa, s * r.v[0]};
    if (std::find(seen.begin(), seen.end(), facet) == seen.end()) {
      seen.push_back(facet);
      out.facets.push_back(std::move(facet));
    }
  }
  for (const RatVector& l : lin) {
    bool nonzero = false;
    for (int j = 1; j < d; ++j)
      if (l[j] != 0) nonzero = true;
    if (!nonzero) continue;
    RatVector a(d - 1);
    for (int j = 1; j < d; ++j) a[j - 1] = l[j];
    RatVector pa = primitive(a);
    Rational s = 0;
    for (int j = 1; j < d; ++j)
      if (l[j] != 0) {
        s = pa[j - 1] / l[j];
        break;
      }
    out.equalities.push_back({pa, -s * l[0]});
  }
  return out;
}

}  // namespace liftlab
