#pragma once

/**
 * @file cover.hpp
 * @brief Invariants of the cyclic cover w^m = prod_k (z_k - zeta)^{d_k}.
 *
 * Everything here is exact rational counting: eigenspace dimensions of the
 * holomorphic differentials under the deck character, the genus, and the
 * arithmeticity test built on them.
 */

#include <numeric>
#include <vector>

#include "lauricella/weights.hpp"

namespace lauricella {

struct CoverProfile {
  long m = 1;
  std::vector<long> ramification;  ///< m_k over z_k, k = 0..n+1
  std::vector<long> eigendims;     ///< r = 0..m-1
  long genus = 0;
};

struct ArithmeticityWitness {
  long r = 0;
  Rational sum;           ///< sum_k frac(r mu_k)
  Rational opposite_sum;  ///< sum_k frac(-r mu_k)
  friend bool operator==(const ArithmeticityWitness&, const ArithmeticityWitness&) = default;
};

struct ArithmeticityReport {
  bool arithmetic = true;
  std::vector<ArithmeticityWitness> witnesses;
};

/// sum_{k=0}^{n} frac(r mu_k).
inline Rational fractional_sum(const WeightSystem& ws, long r) {
  Rational s(0);
  for (std::size_t k = 0; k <= ws.n(); ++k) s += (ws.weight(k) * Rational(r)).frac();
  return s;
}

/// Largest integer strictly below s.
inline long largest_integer_below(const Rational& s) {
  mpz_class c = s.ceil();
  return c.get_si() - 1;
}

inline std::vector<long> eigenspace_dims(const WeightSystem& ws) {
  require_hyperbolic(ws, "eigenspace_dims");
  const long m = ws.common_denominator();
  std::vector<long> dims(static_cast<std::size_t>(m), 0);
  for (long r = 1; r < m; ++r) dims[r] = std::max(0L, largest_integer_below(fractional_sum(ws, r)));
  return dims;
}

/// From 2 - 2g = -m n + sum_{k=0}^{n+1} m / m_k.
inline long genus(const WeightSystem& ws) {
  require_hyperbolic(ws, "genus");
  const long m = ws.common_denominator();
  long chi = -m * static_cast<long>(ws.n());
  for (long mk : ws.denominators()) chi += m / mk;
  if ((2 - chi) % 2 != 0 || 2 - chi < 0)
    throw Error(ErrorKind::Numerical, "genus: inconsistent ramification data");
  return (2 - chi) / 2;
}

inline CoverProfile cover_profile(const WeightSystem& ws) {
  CoverProfile p;
  p.m = ws.common_denominator();
  p.ramification = ws.denominators();
  p.eigendims = eigenspace_dims(ws);
  p.genus = genus(ws);
  return p;
}

/// (p, q) = (eigendims[r], eigendims[m - r]).
inline std::pair<long, long> eigenspace_signature(const WeightSystem& ws, long r) {
  require_hyperbolic(ws, "eigenspace_signature");
  const long m = ws.common_denominator();
  const long rr = ((r % m) + m) % m;
  if (rr == 0) throw Error(ErrorKind::Validation, "eigenspace_signature: r must be nonzero mod m");
  auto dims = eigenspace_dims(ws);
  return {dims[rr], dims[m - rr]};
}

/// Arithmetic iff every eigenspace for r in (Z/m)^x other than +-1 is definite.
inline ArithmeticityReport is_arithmetic(const WeightSystem& ws) {
  require_hyperbolic(ws, "is_arithmetic");
  const long m = ws.common_denominator();
  auto dims = eigenspace_dims(ws);
  ArithmeticityReport rep;
  for (long r = 2; r < m - 1; ++r) {
    if (std::gcd(r, m) != 1) continue;
    if (dims[r] > 0 && dims[m - r] > 0) {
      rep.arithmetic = false;
      rep.witnesses.push_back({r, fractional_sum(ws, r), fractional_sum(ws, m - r)});
    }
  }
  return rep;
}

}  // namespace lauricella
