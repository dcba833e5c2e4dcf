#pragma once

/**
 * @file weights.hpp
 * @brief Weight systems and their combinatorial predicates.
 *
 * A weight system is a tuple mu_0..mu_n of rationals in (0, 1), n >= 1.
 * Its complement mu_{n+1} = 2 - |mu| is the weight carried by the point at
 * infinity; it is a genuine weight in (0, 1) exactly in the hyperbolic case.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lauricella/error.hpp"
#include "lauricella/rational.hpp"

namespace lauricella {

enum class CaseLabel { Elliptic, Parabolic, Hyperbolic, OutOfRange };

inline std::string to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::Elliptic: return "Elliptic";
    case CaseLabel::Parabolic: return "Parabolic";
    case CaseLabel::Hyperbolic: return "Hyperbolic";
    case CaseLabel::OutOfRange: return "OutOfRange";
  }
  return "?";
}

inline char case_letter(CaseLabel c) {
  switch (c) {
    case CaseLabel::Elliptic: return 'E';
    case CaseLabel::Parabolic: return 'P';
    case CaseLabel::Hyperbolic: return 'H';
    case CaseLabel::OutOfRange: return 'O';
  }
  return '?';
}

class WeightSystem {
 public:
  explicit WeightSystem(std::vector<Rational> weights) : weights_(std::move(weights)) {
    if (weights_.size() < 2)
      throw Error(ErrorKind::Validation, "a weight system needs at least two weights (n >= 1)");
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (weights_[k] <= Rational(0) || weights_[k] >= Rational(1))
        throw Error(ErrorKind::Validation, "weight mu_" + std::to_string(k) + " = " +
                                               weights_[k].str() + " is not in (0,1)");
    }
    total_ = Rational(0);
    for (const auto& w : weights_) total_ += w;
    mpz_class m = 1;
    for (const auto& w : weights_) m = lauricella::lcm(m, w.denominator());
    m = lauricella::lcm(m, complement().denominator());
    if (!m.fits_slong_p()) throw Error(ErrorKind::Validation, "common denominator too large");
    m_ = m.get_si();
  }

  /// Comma-separated rationals, e.g. "3/12,3/12,3/12,7/12".
  static WeightSystem parse(std::string_view text) {
    std::vector<Rational> ws;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = text.find(',', start);
      std::string_view piece =
          text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      if (piece.empty()) throw ParseError("empty weight", start);
      ws.push_back(Rational::parse(piece, start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return WeightSystem(std::move(ws));
  }

  /// Number n: the system has n + 1 finite weights.
  std::size_t n() const { return weights_.size() - 1; }
  const std::vector<Rational>& weights() const { return weights_; }

  /// mu_k for k in 0..n+1 (k = n+1 is the complement).
  Rational weight(std::size_t k) const {
    if (k <= n()) return weights_[k];
    if (k == n() + 1) return complement();
    throw Error(ErrorKind::Validation, "weight index out of range");
  }

  const Rational& total() const { return total_; }
  Rational complement() const { return Rational(2) - total_; }
  bool complement_admissible() const {
    Rational c = complement();
    return c > Rational(0) && c < Rational(1);
  }

  /// m: lcm of the denominators of mu_0..mu_{n+1}.
  long common_denominator() const { return m_; }

  /// d_k with mu_k = d_k / m, k = 0..n+1.
  std::vector<long> numerators() const {
    std::vector<long> d;
    for (std::size_t k = 0; k <= n() + 1; ++k) d.push_back((weight(k) * Rational(m_)).numerator().get_si());
    return d;
  }

  /// m_k, the denominator of mu_k, k = 0..n+1.
  std::vector<long> denominators() const {
    std::vector<long> out;
    for (std::size_t k = 0; k <= n() + 1; ++k) out.push_back(weight(k).denominator().get_si());
    return out;
  }

  /// Sorted weight multiset; the representative used for deduplication.
  WeightSystem canonical() const {
    std::vector<Rational> w = weights_;
    std::sort(w.begin(), w.end());
    return WeightSystem(std::move(w));
  }

  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
      if (k) s += ",";
      s += weights_[k].str();
    }
    return s;
  }

  friend bool operator==(const WeightSystem& a, const WeightSystem& b) {
    return a.weights_ == b.weights_;
  }

 private:
  std::vector<Rational> weights_;
  Rational total_;
  long m_ = 1;
};

inline CaseLabel classify(const WeightSystem& ws) {
  const Rational& t = ws.total();
  if (t < Rational(1)) return CaseLabel::Elliptic;
  if (t == Rational(1)) return CaseLabel::Parabolic;
  if (t < Rational(2)) return CaseLabel::Hyperbolic;
  return CaseLabel::OutOfRange;
}

inline void require_hyperbolic(const WeightSystem& ws, const char* what) {
  if (classify(ws) != CaseLabel::Hyperbolic)
    throw Error(ErrorKind::Validation, std::string(what) + " requires a hyperbolic weight system (1 < |mu| < 2); got " +
                                           to_string(classify(ws)));
}

inline void require_in_range(const WeightSystem& ws, const char* what) {
  if (classify(ws) == CaseLabel::OutOfRange)
    throw Error(ErrorKind::Validation, std::string(what) + ": total weight |mu| = " + ws.total().str() +
                                           " is not below 2");
}

// ---------------------------------------------------------------------------
// INT and half-INT conditions

enum class IndexRange { FiniteOnly, IncludeInfinity };

struct PairRecord {
  std::size_t k = 0;
  std::size_t l = 0;
  Rational pair_sum;
  bool applicable = false;            ///< mu_k + mu_l < 1
  std::optional<Rational> reciprocal; ///< (1 - mu_k - mu_l)^{-1} when applicable
  bool passes_int = true;
  bool passes_half_int = true;        ///< integer, or half-integer with mu_k == mu_l
};

struct ConditionReport {
  IndexRange range = IndexRange::FiniteOnly;
  std::vector<PairRecord> pairs;
  bool int_ok = true;
  bool half_int_ok = true;
};

/// Pairs k < l over 0..n (FiniteOnly) or 0..n+1 (IncludeInfinity).
inline ConditionReport check_conditions(const WeightSystem& ws, IndexRange range) {
  if (range == IndexRange::IncludeInfinity && !ws.complement_admissible())
    throw Error(ErrorKind::Validation,
                "include-infinity requires the hyperbolic case (mu_{n+1} in (0,1))");
  ConditionReport rep;
  rep.range = range;
  const std::size_t last = ws.n() + (range == IndexRange::IncludeInfinity ? 1 : 0);
  for (std::size_t k = 0; k <= last; ++k) {
    for (std::size_t l = k + 1; l <= last; ++l) {
      PairRecord p;
      p.k = k;
      p.l = l;
      Rational mk = ws.weight(k), ml = ws.weight(l);
      p.pair_sum = mk + ml;
      p.applicable = p.pair_sum < Rational(1);
      if (p.applicable) {
        Rational r = Rational(1) / (Rational(1) - p.pair_sum);
        p.reciprocal = r;
        p.passes_int = r.is_integer();
        p.passes_half_int = p.passes_int || (mk == ml && (r * Rational(2)).is_integer());
      }
      rep.int_ok = rep.int_ok && p.passes_int;
      rep.half_int_ok = rep.half_int_ok && p.passes_half_int;
      rep.pairs.push_back(std::move(p));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Stability

enum class Stability { Stable, StrictlySemistable, Unstable };

inline std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable: return "Stable";
    case Stability::StrictlySemistable: return "StrictlySemistable";
    case Stability::Unstable: return "Unstable";
  }
  return "?";
}

/**
 * Classifies a coalescence pattern: each part of the partition is a set of
 * indices whose points collide. Covers 0..n+1 by default; with `affine` the
 * point at infinity is left out and the partition covers 0..n.
 */
inline Stability stability_of_partition(const WeightSystem& ws,
                                        const std::vector<std::vector<std::size_t>>& partition,
                                        bool affine = false) {
  const std::size_t size = ws.n() + (affine ? 1 : 2);
  std::vector<int> seen(size, 0);
  Rational worst(0);
  for (const auto& part : partition) {
    if (part.empty()) throw Error(ErrorKind::Validation, "malformed partition: empty part");
    Rational w(0);
    for (std::size_t idx : part) {
      if (idx >= size || seen[idx]++)
        throw Error(ErrorKind::Validation, "malformed partition: index " + std::to_string(idx) +
                                               " out of range or repeated");
      w += ws.weight(idx);
    }
    worst = std::max(worst, w);
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorKind::Validation, "malformed partition: does not cover every index");
  if (worst < Rational(1)) return Stability::Stable;
  if (worst == Rational(1)) return Stability::StrictlySemistable;
  return Stability::Unstable;
}

/**
 * Every subset S of {0..n+1} of total weight exactly 1, normalized to
 * contain index 0 (its complement also has weight 1), in sorted order.
 * An empty result means no cusps.
 */
inline std::vector<std::vector<std::size_t>> cusp_splittings(const WeightSystem& ws) {
  require_hyperbolic(ws, "cusp_splittings");
  const std::size_t size = ws.n() + 2;
  if (size > 30) throw Error(ErrorKind::ResourceCap, "cusp enumeration limited to n <= 28");
  const long m = ws.common_denominator();
  std::vector<long> d = ws.numerators();
  std::vector<std::vector<std::size_t>> out;
  const unsigned long rest = 1ul << (size - 1);
  for (unsigned long mask = 0; mask < rest; ++mask) {
    long sum = d[0];
    for (std::size_t j = 1; j < size; ++j)
      if (mask & (1ul << (j - 1))) sum += d[j];
    if (sum != m) continue;
    std::vector<std::size_t> s{0};
    for (std::size_t j = 1; j < size; ++j)
      if (mask & (1ul << (j - 1))) s.push_back(j);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lauricella
