#pragma once

/**
 * @file hermitian.hpp
 * @brief Exact invariant Hermitian forms attached to a weight system.
 *
 * Two forms live here. The canonical one is written on period coordinates
 * (F_1, ..., F_n): it is the restriction of
 *
 *     H~(F, F) = sum_{1 <= j < k <= n+1} Im(w_j conj(w_k)) conj(F_j) F_k
 *
 * to the hyperplane sum_k Im(w_k) F_k = 0, where w_k = exp(i pi (mu_0 + ...
 * + mu_{k-1})) are the cumulative phases. The coefficients are real, and on
 * that hyperplane the antisymmetric part of H~ vanishes identically, so the
 * Gram matrix is the symmetrization with entries Im(w_j conj(w_k)) / 2.
 *
 * The second is the tridiagonal Gram on the epsilon basis of the cyclic
 * cover's homology, built from denominators alone, under either diagonal
 * convention (cot + cot, or cot - cot).
 */

#include <Eigen/Dense>

#include <complex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "lauricella/cyclotomic.hpp"
#include "lauricella/cyclotomic_matrix.hpp"
#include "lauricella/weights.hpp"

namespace lauricella {

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t null = 0;

  std::size_t dimension() const { return positive + negative + null; }
  friend bool operator==(const Signature&, const Signature&) = default;
  std::string str() const {
    return "(" + std::to_string(positive) + "," + std::to_string(negative) + "," +
           std::to_string(null) + ")";
  }
};

/// Conjugate-symmetric square matrix over Q(zeta_N).
class HermitianGram {
 public:
  /// `basis`, when present, is an n x d matrix whose columns span the
  /// subspace of C^n on which this d x d Gram is written.
  explicit HermitianGram(CycMatrix entries, std::optional<CycMatrix> basis = std::nullopt)
      : entries_(std::move(entries)), basis_(std::move(basis)) {
    if (entries_.rows() != entries_.cols())
      throw Error(ErrorKind::Validation, "Gram matrix must be square");
    for (std::size_t k = 0; k < dimension(); ++k)
      for (std::size_t l = k; l < dimension(); ++l)
        if (!(entries_(k, l) == entries_(l, k).conj()))
          throw Error(ErrorKind::Validation, "Gram matrix is not conjugate-symmetric");
    if (basis_ && basis_->cols() != dimension())
      throw Error(ErrorKind::Validation, "hyperplane basis does not match Gram dimension");
  }

  std::size_t dimension() const { return entries_.rows(); }
  int conductor() const { return entries_.order(); }
  const CyclotomicNumber& entry(std::size_t k, std::size_t l) const { return entries_(k, l); }
  const CycMatrix& matrix() const { return entries_; }
  const std::optional<CycMatrix>& basis() const { return basis_; }

  Eigen::MatrixXcd embed() const { return entries_.embed(); }

 private:
  CycMatrix entries_;
  std::optional<CycMatrix> basis_;
};

/// N = lcm(4, 2m): contains i, zeta_m, zeta_2m and every zeta_{2 m_k}.
inline int ambient_conductor(const WeightSystem& ws) {
  long n = std::lcm(4L, 2 * ws.common_denominator());
  detail::check_conductor(n);
  return static_cast<int>(n);
}

/// Cumulative phases w_1..w_{n+1}, w_k = exp(i pi (mu_0 + ... + mu_{k-1})).
inline std::vector<CyclotomicNumber> cumulative_phases(const WeightSystem& ws) {
  const int order = ambient_conductor(ws);
  std::vector<CyclotomicNumber> w;
  Rational theta(0);
  for (std::size_t k = 1; k <= ws.n() + 1; ++k) {
    theta += ws.weight(k - 1);
    w.push_back(exp_i_pi(theta, order));
  }
  return w;
}

/// The (n+1) x (n+1) real symmetric Gram of H~ on (F_1, ..., F_{n+1}).
inline CycMatrix extended_period_form(const WeightSystem& ws) {
  const int order = ambient_conductor(ws);
  auto w = cumulative_phases(ws);
  const std::size_t dim = ws.n() + 1;
  CycMatrix s(dim, dim, order);
  const auto half = CyclotomicNumber::from_rational(Rational(1, 2), order);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = j + 1; k < dim; ++k) {
      auto c = half * (w[j] * w[k].conj()).imag_part();
      s(j, k) = c;
      s(k, j) = c;
    }
  }
  return s;
}

/**
 * Canonical invariant form on period coordinates.
 *
 * Non-integral |mu|: F_{n+1} is eliminated through sum Im(w_k) F_k = 0 and
 * the result is n x n. Parabolic: the (n-1) x (n-1) Gram on the hyperplane
 * sum_{k<=n} Im(w_k) F_k = 0 in the basis b_k = e_k - (Im w_k / Im w_e) e_e,
 * where e is the last index with Im(w_e) != 0 (normally e = n).
 */
inline HermitianGram form_on_period_coordinates(const WeightSystem& ws) {
  require_in_range(ws, "form_on_period_coordinates");
  const int order = ambient_conductor(ws);
  const std::size_t n = ws.n();
  CycMatrix s = extended_period_form(ws);
  auto w = cumulative_phases(ws);
  std::vector<CyclotomicNumber> im;
  for (const auto& x : w) im.push_back(x.imag_part());

  if (!ws.total().is_integer()) {
    CycMatrix p(n + 1, n, order);
    const auto inv_last = im[n].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      p(k, k) = CyclotomicNumber::one(order);
      p(n, k) = -(im[k] * inv_last);
    }
    return HermitianGram(p.transpose() * s * p);
  }

  // Parabolic: Im(w_{n+1}) = 0 and e_{n+1} lies in the radical of H~ on the
  // constraint hyperplane, so the top-left n x n block suffices.
  CycMatrix top(n, n, order);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) top(j, k) = s(j, k);
  std::size_t e = n;
  if (im[n - 1].is_zero()) {
    for (std::size_t j = 0; j < n; ++j)
      if (!im[j].is_zero()) {
        e = j + 1;
        break;
      }
  }
  const std::size_t ei = e - 1;
  CycMatrix b(n, n - 1, order);
  const auto inv_e = im[ei].inverse();
  std::size_t col = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == ei) continue;
    b(k, col) = CyclotomicNumber::one(order);
    b(ei, col) = -(im[k] * inv_e);
    ++col;
  }
  return HermitianGram(b.transpose() * top * b, b);
}

enum class EpsilonConvention {
  Statement,  ///< diagonal (cot(pi/m_{k-1}) + cot(pi/m_k)) / 4
  Proof,      ///< diagonal (cot(pi/m_{k-1}) - cot(pi/m_k)) / 4
};

inline std::string to_string(EpsilonConvention c) {
  return c == EpsilonConvention::Statement ? "statement" : "proof";
}

/// Tridiagonal Gram on the epsilon basis; depends only on the denominators.
inline HermitianGram epsilon_gram(const WeightSystem& ws, EpsilonConvention convention) {
  require_hyperbolic(ws, "epsilon_gram");
  if (ws.n() < 2) throw Error(ErrorKind::Validation, "epsilon_gram requires n >= 2");
  const int order = ambient_conductor(ws);
  const std::size_t n = ws.n();
  const long m = ws.common_denominator();
  auto denoms = ws.denominators();
  const auto quarter = CyclotomicNumber::from_rational(Rational(1, 4), order);
  const auto off = -(quarter * sin_pi_over(m, order).inverse());
  std::vector<CyclotomicNumber> cot;
  for (std::size_t k = 0; k <= n; ++k) cot.push_back(cot_pi_over(denoms[k], order));

  CycMatrix g(n, n, order);
  for (std::size_t k = 1; k <= n; ++k) {
    g(k - 1, k - 1) = quarter * (convention == EpsilonConvention::Statement ? cot[k - 1] + cot[k]
                                                                            : cot[k - 1] - cot[k]);
    if (k < n) {
      g(k - 1, k) = off;
      g(k, k - 1) = off;
    }
  }
  return HermitianGram(g);
}

/**
 * Exact signature by conjugate-symmetric elimination.
 *
 * A nonzero diagonal entry is used as pivot; when the remaining diagonal is
 * zero but an off-diagonal entry a_ij is not, the congruence
 * e_i <- e_i + conj(a_ij) e_j makes the (i,i) entry 2|a_ij|^2 > 0 first.
 * No field inversions are performed.
 */
inline Signature signature(const HermitianGram& g) {
  CycMatrix a = g.matrix();
  const std::size_t n = a.rows();
  std::vector<std::size_t> live(n);
  std::iota(live.begin(), live.end(), 0);
  Signature sig;

  while (!live.empty()) {
    std::optional<std::size_t> pivot;
    for (std::size_t idx : live)
      if (!a(idx, idx).is_zero()) {
        pivot = idx;
        break;
      }
    if (!pivot) {
      std::optional<std::pair<std::size_t, std::size_t>> off;
      for (std::size_t i : live) {
        for (std::size_t j : live)
          if (i != j && !a(i, j).is_zero()) {
            off = std::make_pair(i, j);
            break;
          }
        if (off) break;
      }
      if (!off) break;  // remaining block is zero
      auto [i, j] = *off;
      const CyclotomicNumber t = a(i, j).conj();
      for (std::size_t r : live) a(r, i) = a(r, i) + t * a(r, j);
      const CyclotomicNumber tc = t.conj();
      for (std::size_t c : live) a(i, c) = a(i, c) + tc * a(j, c);
      pivot = i;
    }
    const std::size_t p = *pivot;
    const CyclotomicNumber d = a(p, p);
    Sign sd = d.sign_of_real();
    switch (sd) {
      case Sign::Positive: ++sig.positive; break;
      case Sign::Negative: ++sig.negative; break;
      case Sign::Zero: throw Error(ErrorKind::Numerical, "signature: zero pivot");
    }
    // Fraction-free step: the new block is |d| times the Schur complement.
    const CyclotomicNumber scaled_d = sd == Sign::Positive ? d : -d;
    std::erase(live, p);
    std::vector<CyclotomicNumber> col;
    for (std::size_t r : live) col.push_back(sd == Sign::Positive ? a(r, p) : -a(r, p));
    for (std::size_t ri = 0; ri < live.size(); ++ri) {
      const std::size_t r = live[ri];
      for (std::size_t c : live) {
        CyclotomicNumber v = scaled_d * a(r, c);
        if (!col[ri].is_zero() && !a(p, c).is_zero()) v = v - col[ri] * a(p, c);
        a(r, c) = std::move(v);
      }
    }
  }
  sig.null = n - sig.positive - sig.negative;
  return sig;
}

/// w^* G v using the embedded entries.
inline std::complex<double> evaluate(const HermitianGram& g, const Eigen::VectorXcd& v,
                                     const Eigen::VectorXcd& w) {
  if (static_cast<std::size_t>(v.size()) != g.dimension() ||
      static_cast<std::size_t>(w.size()) != g.dimension())
    throw Error(ErrorKind::Validation, "evaluate: dimension mismatch");
  return w.adjoint() * g.embed() * v;
}

}  // namespace lauricella
