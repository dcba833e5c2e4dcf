#pragma once

/**
 * @file quadrature.hpp
 * @brief Gauss-Jacobi rules for (1-x)^alpha (1+x)^beta on (-1, 1).
 *
 * Nodes and weights come from the eigen-decomposition of the symmetric
 * tridiagonal Jacobi matrix of the orthogonal polynomials.
 */

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "lauricella/error.hpp"

namespace lauricella {

struct QuadratureRule {
  double alpha = 0.0;  ///< exponent of (1 - x)
  double beta = 0.0;   ///< exponent of (1 + x)
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  /// Sum of w_i f(x_i).
  template <class F>
  auto apply(F&& f) const -> decltype(f(0.0)) {
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// Exponents must exceed -1. The symmetric eigensolver is QR with a fixed iteration cap.
inline QuadratureRule gauss_jacobi_rule(double alpha, double beta, int nodes) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw Error(ErrorKind::Validation, "gauss_jacobi_rule: exponents must exceed -1");
  if (nodes < 1) throw Error(ErrorKind::Validation, "gauss_jacobi_rule: need at least one node");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(nodes);
  Eigen::VectorXd sub(std::max(nodes - 1, 0));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < nodes; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    double b2;
    if (k == 1)
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::Numerical, "gauss_jacobi_rule: eigensolver did not converge");

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  QuadratureRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  for (int i = 0; i < nodes; ++i) {
    rule.nodes.push_back(es.eigenvalues()(i));
    const double v = es.eigenvectors()(0, i);
    rule.weights.push_back(mu0 * v * v);
  }
  return rule;
}

/// Process-wide cache keyed by (alpha, beta, nodes); rules are immutable.
inline std::shared_ptr<const QuadratureRule> cached_rule(double alpha, double beta, int nodes) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const QuadratureRule>> cache;
  const auto key = std::make_tuple(alpha, beta, nodes);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const QuadratureRule>(gauss_jacobi_rule(alpha, beta, nodes));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(key, rule).first->second;
}

}  // namespace lauricella
