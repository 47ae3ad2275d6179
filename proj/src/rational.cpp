#include "liftlab/rational.hpp"

namespace liftlab {

Rational rat_parse(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  // Accept "p", "p/q" and plain decimal forms like "0.76".
  auto dot_pos = s.find('.');
  if (dot_pos != std::string::npos) {
    std::string digits = s.substr(0, dot_pos) + s.substr(dot_pos + 1);
    std::size_t frac_len = s.size() - dot_pos - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw Error("bad rational literal: " + s);
    try {
      mpz_class num(digits, 10);
      mpz_class den = 1;
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      Rational r(num, den);
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw Error("bad rational literal: " + s);
    }
  }
  try {
    Rational r;
    if (r.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    if (r.get_den() == 0) throw Error("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error("bad rational literal: " + s);
  }
}

std::string rat_str(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

static std::size_t mpz_hash(const mpz_class& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = std::size_t(mpz_sgn(p)) * 0x9e3779b97f4a7c15ULL;
  int n = std::abs(p->_mp_size);
  for (int i = 0; i < n; ++i) h = h * 1099511628211ULL ^ std::size_t(p->_mp_d[i]);
  return h;
}

std::size_t rat_hash(const Rational& r) {
  return mpz_hash(r.get_num()) * 31 + mpz_hash(r.get_den());
}

RatVector rat_vec(std::initializer_list<long> entries) {
  RatVector v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return v;
}

bool RatMatrix::is_psd() const {
  if (!is_symmetric()) return false;
  RatMatrix a = *this;
  int n = rows_;
  for (int k = 0; k < n; ++k) {
    if (a.at(k, k) < 0) return false;
    if (a.at(k, k) == 0) {
      // PSD requires the whole row/column to vanish once the diagonal does.
      for (int j = k + 1; j < n; ++j)
        if (a.at(k, j) != 0) return false;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      if (a.at(i, k) == 0) continue;
      Rational f = a.at(i, k) / a.at(k, k);
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return true;
}

}  // namespace liftlab
