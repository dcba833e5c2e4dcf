#pragma once

/**
 * @file monodromy.hpp
 * @brief Exact Dehn-twist generators acting on period coordinates.
 *
 * Matrices act on column vectors (F_1, ..., F_n). The twist about a loop
 * enclosing z_{k-1} and z_k only modifies column k:
 *
 *     M_k = I + u e_k^T,
 *     u_{k-1} = a_{k-1} (1 - a_k^2),   u_k = a_{k-1}^2 a_k^2 - 1,
 *     u_{k+1} = a_k (1 - a_{k-1}^2),
 *
 * with single-point phases a_j = exp(i pi mu_j). Entries falling outside
 * 1..n are dropped.
 */

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "lauricella/cyclotomic_matrix.hpp"
#include "lauricella/hermitian.hpp"

namespace lauricella {

/// Signed generator index: +k is M_k, -k its inverse.
using Word = std::vector<int>;

class MonodromyElement {
 public:
  MonodromyElement(CycMatrix matrix, CycMatrix inverse, std::optional<Word> word = std::nullopt)
      : matrix_(std::move(matrix)), inverse_(std::move(inverse)), word_(std::move(word)) {
    if (matrix_.rows() != matrix_.cols() || inverse_.rows() != matrix_.rows() ||
        inverse_.cols() != matrix_.cols())
      throw Error(ErrorKind::Validation, "monodromy element must be square");
    if (!(matrix_ * inverse_ == CycMatrix::identity(dimension(), matrix_.order())))
      throw Error(ErrorKind::Validation, "monodromy element: supplied inverse is wrong");
  }

  static MonodromyElement identity(std::size_t n, int order) {
    auto id = CycMatrix::identity(n, order);
    return MonodromyElement(id, id, Word{});
  }

  std::size_t dimension() const { return matrix_.rows(); }
  int conductor() const { return matrix_.order(); }
  const CycMatrix& matrix() const { return matrix_; }
  const CycMatrix& inverse_matrix() const { return inverse_; }
  const std::optional<Word>& word() const { return word_; }

  MonodromyElement inverse() const {
    std::optional<Word> w;
    if (word_) {
      w = Word(word_->rbegin(), word_->rend());
      for (int& x : *w) x = -x;
    }
    return MonodromyElement(inverse_, matrix_, std::move(w), Unchecked{});
  }

  /// (this then other): the matrix other * this.
  MonodromyElement then(const MonodromyElement& other) const {
    std::optional<Word> w;
    if (word_ && other.word_) {
      w = *word_;
      w->insert(w->end(), other.word_->begin(), other.word_->end());
    }
    return MonodromyElement(other.matrix_ * matrix_, inverse_ * other.inverse_, std::move(w),
                            Unchecked{});
  }

  friend bool operator==(const MonodromyElement& a, const MonodromyElement& b) {
    return a.matrix_ == b.matrix_;
  }

 private:
  struct Unchecked {};
  MonodromyElement(CycMatrix matrix, CycMatrix inverse, std::optional<Word> word, Unchecked)
      : matrix_(std::move(matrix)), inverse_(std::move(inverse)), word_(std::move(word)) {}

  CycMatrix matrix_;
  CycMatrix inverse_;
  std::optional<Word> word_;
};

/// a_k = exp(i pi mu_k), k = 0..n+1, in the ambient field.
inline std::vector<CyclotomicNumber> single_point_phases(const WeightSystem& ws) {
  const int order = ambient_conductor(ws);
  std::vector<CyclotomicNumber> a;
  for (std::size_t k = 0; k <= ws.n() + 1; ++k) a.push_back(exp_i_pi(ws.weight(k), order));
  return a;
}

inline MonodromyElement dehn_twist_generator(const WeightSystem& ws, std::size_t k) {
  const std::size_t n = ws.n();
  if (k < 1 || k > n)
    throw Error(ErrorKind::Validation,
                "generator index " + std::to_string(k) + " outside 1.." + std::to_string(n));
  const int order = ambient_conductor(ws);
  auto a = single_point_phases(ws);
  const auto one = CyclotomicNumber::one(order);
  const auto sq_prev = a[k - 1] * a[k - 1];
  const auto sq_here = a[k] * a[k];
  const auto lambda = sq_prev * sq_here;

  std::vector<CyclotomicNumber> u(n, CyclotomicNumber::zero(order));
  if (k >= 2) u[k - 2] = a[k - 1] * (one - sq_here);
  u[k - 1] = lambda - one;
  if (k + 1 <= n) u[k] = a[k] * (one - sq_prev);

  // (I + u e_k^T)^{-1} = I - u e_k^T / lambda, and 1/lambda = conj(lambda).
  const auto inv_factor = -lambda.conj();
  CycMatrix m = CycMatrix::identity(n, order);
  CycMatrix inv = CycMatrix::identity(n, order);
  for (std::size_t r = 0; r < n; ++r) {
    m(r, k - 1) += u[r];
    inv(r, k - 1) += inv_factor * u[r];
  }
  return MonodromyElement(std::move(m), std::move(inv), Word{static_cast<int>(k)});
}

inline std::vector<MonodromyElement> dehn_twist_generators(const WeightSystem& ws) {
  std::vector<MonodromyElement> g;
  for (std::size_t k = 1; k <= ws.n(); ++k) g.push_back(dehn_twist_generator(ws, k));
  return g;
}

/// Letters act left to right: [a, b] is M_b * M_a. Index j refers to gens[j-1].
inline MonodromyElement evaluate_word(const std::vector<MonodromyElement>& gens, const Word& word) {
  if (gens.empty()) throw Error(ErrorKind::Validation, "evaluate_word: no generators");
  const std::size_t n = gens.front().dimension();
  for (const auto& g : gens)
    if (g.dimension() != n) throw Error(ErrorKind::Validation, "evaluate_word: dimension mismatch");
  auto acc = MonodromyElement::identity(n, gens.front().conductor());
  for (int letter : word) {
    const std::size_t idx = static_cast<std::size_t>(letter < 0 ? -letter : letter);
    if (letter == 0 || idx > gens.size())
      throw Error(ErrorKind::Validation, "evaluate_word: letter " + std::to_string(letter) + " out of range");
    const auto& g = gens[idx - 1];
    acc = acc.then(letter > 0 ? g : g.inverse());
  }
  Word w = word;
  return MonodromyElement(acc.matrix(), acc.inverse_matrix(), std::move(w));
}

/**
 * Exact test of M^* H M = H. When the Gram is written on a hyperplane basis
 * B (parabolic case), M must map the hyperplane to itself, M B = B C, and
 * the test is C^* H C = H.
 */
inline bool preserves_form(const MonodromyElement& m, const HermitianGram& h) {
  const CycMatrix& mm = m.matrix();
  if (!h.basis()) {
    if (mm.rows() != h.dimension()) throw Error(ErrorKind::Validation, "preserves_form: dimension mismatch");
    return mm.adjoint() * h.matrix() * mm == h.matrix();
  }
  const CycMatrix& b = *h.basis();
  if (mm.rows() != b.rows()) throw Error(ErrorKind::Validation, "preserves_form: dimension mismatch");
  const CycMatrix mb = mm * b;
  // Each basis column has a 1 in its own row and zeros in the other
  // non-eliminated rows, so C is read off those rows of M B.
  const std::size_t d = b.cols();
  CycMatrix c(d, d, mb.order());
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t row_of = 0;
    for (std::size_t r = 0; r < b.rows(); ++r)
      if (b(r, col).is_one()) {
        bool unit = true;
        for (std::size_t o = 0; o < d; ++o)
          if (o != col && !b(r, o).is_zero()) unit = false;
        if (unit) {
          row_of = r;
          break;
        }
      }
    for (std::size_t j = 0; j < d; ++j) c(col, j) = mb(row_of, j);
  }
  if (!(b * c == mb)) return false;
  return c.adjoint() * h.matrix() * c == h.matrix();
}

struct ClosureFinite {
  std::size_t order = 0;
  std::vector<MonodromyElement> elements;
};
struct ClosureBoundExceeded {
  std::size_t explored = 0;
};
using ClosureResult = std::variant<ClosureFinite, ClosureBoundExceeded>;

/**
 * Breadth-first closure of the group generated by `gens` (right
 * multiplication by generators, starting from the identity). Order of
 * discovery is deterministic. Elements are kept only when `keep_elements`.
 */
inline ClosureResult group_closure(const std::vector<MonodromyElement>& gens, std::size_t element_bound,
                                   bool keep_elements = false) {
  if (gens.empty()) throw Error(ErrorKind::Validation, "group_closure: no generators");
  const std::size_t n = gens.front().dimension();
  int order = gens.front().conductor();
  for (const auto& g : gens) {
    if (g.dimension() != n) throw Error(ErrorKind::Validation, "group_closure: dimension mismatch");
    order = static_cast<int>(std::lcm(order, g.conductor()));
  }
  std::vector<CycMatrix> gm;
  for (const auto& g : gens) gm.push_back(g.matrix().in_field(order));

  std::vector<CycMatrix> seen{CycMatrix::identity(n, order)};
  std::unordered_multimap<std::size_t, std::size_t> index{{seen.front().hash(), 0}};
  auto find = [&](const CycMatrix& m) {
    auto [lo, hi] = index.equal_range(m.hash());
    for (auto it = lo; it != hi; ++it)
      if (seen[it->second] == m) return true;
    return false;
  };
  for (std::size_t head = 0; head < seen.size(); ++head) {
    for (const auto& g : gm) {
      CycMatrix next = seen[head] * g;
      if (find(next)) continue;
      if (seen.size() >= element_bound) return ClosureBoundExceeded{seen.size()};
      index.emplace(next.hash(), seen.size());
      seen.push_back(std::move(next));
    }
  }
  ClosureFinite out;
  out.order = seen.size();
  if (keep_elements) {
    // In a finite group every inverse is a positive power; recover it from the closure.
    for (const auto& m : seen) {
      for (const auto& cand : seen)
        if (m * cand == CycMatrix::identity(n, order)) {
          out.elements.emplace_back(m, cand);
          break;
        }
    }
  }
  return out;
}

}  // namespace lauricella
