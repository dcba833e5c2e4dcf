#pragma once

/**
 * @file periods.hpp
 * @brief Lauricella periods at real-ordered configurations.
 *
 * For z_0 < ... < z_n and the straight segments [z_{k-1}, z_k], the period
 *
 *     F_k = int_{z_{k-1}}^{z_k} prod_{j<k} (zeta - z_j)^{-mu_j}
 *                               prod_{j>=k} (z_j - zeta)^{-mu_j} dzeta
 *
 * has a positive integrand. The endpoint singularities are absorbed into a
 * Gauss-Jacobi rule. F_{n+1} integrates over [z_n, inf) after the change of
 * variables zeta = z_n + l (1 - t) / t, which makes the ray a finite
 * interval with Jacobi endpoint exponents -mu_n and -mu_{n+1}.
 *
 * Points may carry small imaginary parts (below a quarter of the smallest
 * gap); principal branches then remain continuous along every segment.
 */

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "lauricella/hermitian.hpp"
#include "lauricella/quadrature.hpp"
#include "lauricella/weights.hpp"

namespace lauricella {

using cplx = std::complex<double>;

class Configuration {
 public:
  explicit Configuration(std::vector<cplx> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw Error(ErrorKind::Validation, "configuration needs at least two points");
    for (std::size_t k = 1; k < points_.size(); ++k)
      if (!(points_[k].real() > points_[k - 1].real()))
        throw Error(ErrorKind::Validation, "configuration points must have strictly increasing real parts");
    const double radius = 0.25 * min_gap();
    for (const auto& z : points_)
      if (!(std::abs(z.imag()) < radius))
        throw Error(ErrorKind::Validation,
                    "perturbation exceeds the branch-consistency radius (a quarter of the smallest gap)");
  }

  static Configuration real(const std::vector<double>& xs) {
    std::vector<cplx> p(xs.begin(), xs.end());
    return Configuration(std::move(p));
  }

  const std::vector<cplx>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const cplx& operator[](std::size_t k) const { return points_[k]; }

  double min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < points_.size(); ++k) g = std::min(g, points_[k].real() - points_[k - 1].real());
    return g;
  }

  bool is_real() const {
    for (const auto& z : points_)
      if (z.imag() != 0.0) return false;
    return true;
  }

  Configuration translated(cplx a) const {
    auto p = points_;
    for (auto& z : p) z += a;
    return Configuration(std::move(p));
  }
  Configuration scaled(double s) const {
    auto p = points_;
    for (auto& z : p) z *= s;
    return Configuration(std::move(p));
  }
  /// Moves z_k by `delta` (real direction).
  Configuration moved(std::size_t k, double delta) const {
    auto p = points_;
    p.at(k) += delta;
    return Configuration(std::move(p));
  }

 private:
  std::vector<cplx> points_;
};

struct PeriodVector {
  std::vector<cplx> values;     ///< F_1..F_n
  std::optional<cplx> f_inf;    ///< F_{n+1}, hyperbolic case only
  int nodes = 0;
  double error = 0.0;           ///< max change against the doubled rule

  /// (F_1, ..., F_n, F_{n+1}) when F_{n+1} is present, else (F_1, ..., F_n).
  Eigen::VectorXcd lifted() const {
    Eigen::VectorXcd v(values.size() + (f_inf ? 1 : 0));
    for (std::size_t k = 0; k < values.size(); ++k) v(k) = values[k];
    if (f_inf) v(values.size()) = *f_inf;
    return v;
  }
  Eigen::VectorXcd vector() const {
    Eigen::VectorXcd v(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) v(k) = values[k];
    return v;
  }
};

namespace detail {

inline std::vector<double> weights_as_double(const WeightSystem& ws) {
  std::vector<double> mu;
  for (std::size_t k = 0; k <= ws.n() + 1; ++k) mu.push_back(ws.weight(k).to_double());
  return mu;
}

inline cplx segment_period(const std::vector<double>& mu, const Configuration& cfg, std::size_t k, int nodes) {
  const std::size_t n = cfg.size() - 1;
  const cplx za = cfg[k - 1], zb = cfg[k];
  const cplx half = (zb - za) / 2.0;
  auto rule = cached_rule(-mu[k], -mu[k - 1], nodes);
  cplx sum = rule->apply([&](double x) {
    const cplx zeta = za + half * (1.0 + x);
    cplx g = 1.0;
    for (std::size_t j = 0; j + 1 < k; ++j) g *= std::pow(zeta - cfg[j], -mu[j]);
    for (std::size_t j = k + 1; j <= n; ++j) g *= std::pow(cfg[j] - zeta, -mu[j]);
    return g;
  });
  return std::pow(half, 1.0 - mu[k - 1] - mu[k]) * sum;
}

inline cplx ray_period(const std::vector<double>& mu, const Configuration& cfg, int nodes) {
  const std::size_t n = cfg.size() - 1;
  const double total = [&] {
    double t = 0;
    for (std::size_t j = 0; j <= n; ++j) t += mu[j];
    return t;
  }();
  const double ell = (cfg[n] - cfg[0]).real();
  auto rule = cached_rule(-mu[n], total - 2.0, nodes);
  cplx sum = rule->apply([&](double x) {
    const double t = 0.5 * (1.0 + x);
    cplx g = 1.0;
    for (std::size_t j = 0; j < n; ++j) g *= std::pow(ell * (1.0 - t) + t * (cfg[n] - cfg[j]), -mu[j]);
    return g;
  });
  return std::pow(ell, 1.0 - mu[n]) * std::pow(2.0, 1.0 + mu[n] - total) * sum;
}

inline PeriodVector periods_at(const std::vector<double>& mu, bool with_inf, const Configuration& cfg, int nodes) {
  PeriodVector pv;
  pv.nodes = nodes;
  const std::size_t n = cfg.size() - 1;
  for (std::size_t k = 1; k <= n; ++k) pv.values.push_back(segment_period(mu, cfg, k, nodes));
  if (with_inf) pv.f_inf = ray_period(mu, cfg, nodes);
  return pv;
}

}  // namespace detail

/// F_1..F_n (and F_{n+1} when |mu| > 1) with `nodes`-point rules.
inline PeriodVector lauricella_periods(const WeightSystem& ws, const Configuration& cfg, int nodes = 64) {
  require_in_range(ws, "lauricella_periods");
  if (cfg.size() != ws.n() + 1)
    throw Error(ErrorKind::Validation, "configuration has " + std::to_string(cfg.size()) +
                                           " points, weight system needs " + std::to_string(ws.n() + 1));
  if (nodes < 1) throw Error(ErrorKind::Validation, "nodes must be positive");
  const auto mu = detail::weights_as_double(ws);
  const bool with_inf = classify(ws) == CaseLabel::Hyperbolic;
  PeriodVector pv = detail::periods_at(mu, with_inf, cfg, nodes);
  PeriodVector fine = detail::periods_at(mu, with_inf, cfg, 2 * nodes);
  double err = 0.0;
  for (std::size_t k = 0; k < pv.values.size(); ++k) err = std::max(err, std::abs(pv.values[k] - fine.values[k]));
  if (with_inf) err = std::max(err, std::abs(*pv.f_inf - *fine.f_inf));
  pv.error = err;
  for (const auto& v : pv.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::Numerical, "lauricella_periods: non-finite value");
  return pv;
}

/// Float images of Im(w_k), k = 1..n+1.
inline std::vector<double> cumulative_phase_sines(const WeightSystem& ws) {
  std::vector<double> s;
  double theta = 0.0;
  for (std::size_t k = 1; k <= ws.n() + 1; ++k) {
    theta += ws.weight(k - 1).to_double();
    s.push_back(std::sin(std::numbers::pi * theta));
  }
  return s;
}

/// |sum_{k<=n} Im(w_k) F_k - pi|; meaningful in the parabolic case.
inline double parabolic_residual(const WeightSystem& ws, const PeriodVector& pv) {
  auto s = cumulative_phase_sines(ws);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < pv.values.size(); ++k) acc += s[k] * pv.values[k];
  return std::abs(acc - std::numbers::pi);
}

/// |sum_{k<=n+1} Im(w_k) F_k|; hyperbolic case.
inline double closure_residual(const WeightSystem& ws, const PeriodVector& pv) {
  if (!pv.f_inf) throw Error(ErrorKind::Validation, "closure residual needs F_{n+1}");
  auto s = cumulative_phase_sines(ws);
  cplx acc = 0.0;
  for (std::size_t k = 0; k < pv.values.size(); ++k) acc += s[k] * pv.values[k];
  acc += s.back() * *pv.f_inf;
  return std::abs(acc);
}

/// H(F, F) on the lift (F_1, ..., F_{n+1}) using the measured F_{n+1}.
inline double lifted_form_value(const WeightSystem& ws, const PeriodVector& pv) {
  if (!pv.f_inf) throw Error(ErrorKind::Validation, "lifted form value needs F_{n+1}");
  auto s = extended_period_form(ws).embed();
  Eigen::VectorXcd f = pv.lifted();
  return (f.adjoint() * s * f)(0, 0).real();
}

struct NIntegral {
  double value = 0.0;
  double error = 0.0;
  int nodes = 0;
};

namespace detail {

// Integral over the upper half of the Voronoi cell of x_j, cut by |zeta - c| < r,
// in polar coordinates around x_j. q nodes per angular piece and radially.
inline double cell_integral(const std::vector<double>& x, const std::vector<double>& mu, std::size_t j, double c,
                            double r, int q) {
  const std::size_t n = x.size() - 1;
  const double pi = std::numbers::pi;
  const double left = j == 0 ? -INFINITY : 0.5 * (x[j - 1] + x[j]);
  const double right = j == n ? INFINITY : 0.5 * (x[j] + x[j + 1]);
  const double d = x[j] - c;

  auto rho_max = [&](double th) {
    const double ct = std::cos(th);
    double rc = -d * ct + std::sqrt(d * d * ct * ct - d * d + r * r);
    if (ct > 0 && std::isfinite(right)) rc = std::min(rc, (right - x[j]) / ct);
    if (ct < 0 && std::isfinite(left)) rc = std::min(rc, (left - x[j]) / ct);
    return rc;
  };
  std::vector<double> cuts{0.0};
  if (std::isfinite(right)) cuts.push_back(std::atan2(std::sqrt(r * r - (right - c) * (right - c)), right - x[j]));
  if (std::isfinite(left)) cuts.push_back(std::atan2(std::sqrt(r * r - (left - c) * (left - c)), left - x[j]));
  cuts.push_back(pi);

  auto radial = cached_rule(0.0, 1.0 - 2.0 * mu[j], q);
  auto angular = cached_rule(0.0, 0.0, q);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1];
    total += 0.5 * (b - a) * angular->apply([&](double u) {
      const double th = a + 0.5 * (b - a) * (1.0 + u);
      const double rm = rho_max(th);
      const double ct = std::cos(th), st = std::sin(th);
      double inner = radial->apply([&](double v) {
        const double rho = 0.5 * rm * (1.0 + v);
        const double re = x[j] + rho * ct, im = rho * st;
        double g = 1.0;
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == j) continue;
          const double dx = re - x[i];
          g *= std::pow(dx * dx + im * im, -mu[i]);
        }
        return g;
      });
      return std::pow(0.5 * rm, 2.0 - 2.0 * mu[j]) * inner;
    });
  }
  return total;
}

// Upper half of |zeta - c| > r in the chart omega = 1/(zeta - c).
inline double exterior_integral(const std::vector<double>& x, const std::vector<double>& mu, double total_mu,
                                double c, double r, int q) {
  const double pi = std::numbers::pi;
  auto radial = cached_rule(0.0, 2.0 * total_mu - 3.0, q);
  auto angular = cached_rule(0.0, 0.0, q);
  const double rm = 1.0 / r;
  double val = 0.5 * pi * angular->apply([&](double u) {
    const double phi = 0.5 * pi * (1.0 + u);
    const double cp = std::cos(phi), sp = -std::sin(phi);
    return radial->apply([&](double v) {
      const double rho = 0.5 * rm * (1.0 + v);
      double g = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double re = 1.0 + rho * cp * (c - x[i]);
        const double im = rho * sp * (c - x[i]);
        g *= std::pow(re * re + im * im, -mu[i]);
      }
      return g;
    });
  });
  return std::pow(0.5 * rm, 2.0 * total_mu - 2.0) * val;
}

inline double n_integral_at(const std::vector<double>& x, const std::vector<double>& mu, double total_mu, int q) {
  const double c = 0.5 * (x.front() + x.back());
  const double r = x.back() - x.front();  // twice the half-spread
  double upper = exterior_integral(x, mu, total_mu, c, r, q);
  for (std::size_t j = 0; j < x.size(); ++j) upper += cell_integral(x, mu, j, c, r, q);
  return -2.0 * upper;
}

}  // namespace detail

/**
 * N(z) = -int_C prod_k |z_k - zeta|^{-2 mu_k} dA, for real configurations.
 *
 * The plane is split along the real axis (the integrand is symmetric), into
 * the Voronoi cells of the points cut by a disk, and the disk's exterior.
 * Each piece uses polar coordinates around its singular point with a
 * Gauss-Jacobi radial rule. Node counts double until two successive
 * estimates differ by at most `tolerance` (absolute).
 */
inline NIntegral n_integral(const WeightSystem& ws, const Configuration& cfg, double tolerance = 1e-8,
                            int max_nodes = 1024) {
  require_hyperbolic(ws, "n_integral");
  if (!cfg.is_real()) throw Error(ErrorKind::Validation, "n_integral supports real configurations only");
  if (cfg.size() != ws.n() + 1) throw Error(ErrorKind::Validation, "configuration size does not match weights");
  if (!(tolerance > 0)) throw Error(ErrorKind::Validation, "tolerance must be positive");
  std::vector<double> x;
  for (const auto& z : cfg.points()) x.push_back(z.real());
  const auto mu = detail::weights_as_double(ws);
  const double total = ws.total().to_double();

  int q = 16;
  double prev = detail::n_integral_at(x, mu, total, q);
  while (2 * q <= max_nodes) {
    q *= 2;
    double cur = detail::n_integral_at(x, mu, total, q);
    if (std::abs(cur - prev) <= tolerance) return NIntegral{cur, std::abs(cur - prev), q};
    prev = cur;
  }
  throw Error(ErrorKind::Numerical, "n_integral: tolerance not reached within the node budget");
}

struct IdentityResiduals {
  double translation = 0.0;
  double homogeneity = 0.0;
  double pde = 0.0;
  std::vector<double> singular_values;  ///< Jacobian in (z_1..z_n), z_0 pinned; descending
  std::optional<double> parabolic_pi;
  std::optional<double> closure;
};

/// Finite-difference checks of translation invariance, homogeneity, the
/// Lauricella system and the rank of the period map, with step h.
inline IdentityResiduals identity_checks(const WeightSystem& ws, const Configuration& cfg, double h = 1e-4,
                                         int nodes = 64) {
  if (!(h > 0) || h >= 0.25 * cfg.min_gap())
    throw Error(ErrorKind::Validation, "finite-difference step must be positive and below a quarter of the smallest gap");
  const std::size_t n = ws.n();
  auto eval = [&](const Configuration& c) {
    auto pv = lauricella_periods(ws, c, nodes);
    Eigen::VectorXcd v = pv.lifted();
    return v;
  };
  IdentityResiduals out;
  const Eigen::VectorXcd f0 = eval(cfg);

  out.translation = (eval(cfg.translated(1e-3)) - f0).cwiseAbs().maxCoeff();
  const double t = 1e-3;
  out.homogeneity =
      (eval(cfg.scaled(std::exp(t))) - std::exp((1.0 - ws.total().to_double()) * t) * f0).cwiseAbs().maxCoeff();

  std::vector<Eigen::VectorXcd> plus, minus;
  for (std::size_t k = 0; k <= n; ++k) {
    plus.push_back(eval(cfg.moved(k, h)));
    minus.push_back(eval(cfg.moved(k, -h)));
  }
  auto deriv = [&](std::size_t k) -> Eigen::VectorXcd { return (plus[k] - minus[k]) / (2.0 * h); };
  double pde = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t l = k + 1; l <= n; ++l) {
      Eigen::VectorXcd pp = eval(cfg.moved(k, h).moved(l, h));
      Eigen::VectorXcd pm = eval(cfg.moved(k, h).moved(l, -h));
      Eigen::VectorXcd mp = eval(cfg.moved(k, -h).moved(l, h));
      Eigen::VectorXcd mm = eval(cfg.moved(k, -h).moved(l, -h));
      Eigen::VectorXcd mixed = (pp - pm - mp + mm) / (4.0 * h * h);
      const double mk = ws.weight(k).to_double(), ml = ws.weight(l).to_double();
      const cplx zkl = cfg[k] - cfg[l];
      Eigen::VectorXcd res = mixed - (ml * deriv(k) - mk * deriv(l)) / zkl;
      pde = std::max(pde, res.cwiseAbs().maxCoeff());
    }
  }
  out.pde = pde;

  Eigen::MatrixXcd jac(n, n);
  for (std::size_t j = 1; j <= n; ++j) jac.col(j - 1) = deriv(j).head(n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) out.singular_values.push_back(svd.singularValues()(i));

  auto pv = lauricella_periods(ws, cfg, nodes);
  if (classify(ws) == CaseLabel::Parabolic) out.parabolic_pi = parabolic_residual(ws, pv);
  if (classify(ws) == CaseLabel::Hyperbolic) out.closure = closure_residual(ws, pv);
  return out;
}

struct SchwarzPoint {
  std::vector<cplx> projective;         ///< [F_1 : ... : F_n], scaled so the first nonzero entry is 1
  std::optional<std::vector<cplx>> ball;  ///< hyperbolic: point of the unit ball in C^{n-1}
  std::optional<double> ball_radius;
  std::optional<std::vector<cplx>> affine;  ///< parabolic: representative on sum Im(w_k) F_k = pi
};

inline SchwarzPoint schwarz_point(const WeightSystem& ws, const PeriodVector& pv) {
  const std::size_t n = pv.values.size();
  std::size_t lead = n;
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(pv.values[k]) > 0) {
      lead = k;
      break;
    }
  if (lead == n) throw Error(ErrorKind::Validation, "schwarz_point: zero period vector");
  SchwarzPoint sp;
  for (const auto& v : pv.values) sp.projective.push_back(v / pv.values[lead]);

  const CaseLabel label = classify(ws);
  if (label == CaseLabel::Hyperbolic) {
    Eigen::MatrixXcd h = form_on_period_coordinates(ws).embed();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd y = es.eigenvectors().adjoint() * pv.vector();
    // eigenvalues ascend: the single negative one comes first
    if (!(es.eigenvalues()(0) < 0) || (n > 1 && !(es.eigenvalues()(1) > 0)))
      throw Error(ErrorKind::Numerical, "schwarz_point: form is not of signature (n-1, 1)");
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) *= std::sqrt(std::abs(es.eigenvalues()(i)));
    std::vector<cplx> ball;
    double r2 = 0.0;
    for (Eigen::Index i = 1; i < y.size(); ++i) {
      ball.push_back(y(i) / y(0));
      r2 += std::norm(ball.back());
    }
    const double radius = std::sqrt(r2);
    if (!(radius <= 1.0))
      throw Error(ErrorKind::Numerical, "schwarz_point: point lies outside the unit ball");
    sp.ball = std::move(ball);
    sp.ball_radius = radius;
  } else if (label == CaseLabel::Parabolic) {
    auto s = cumulative_phase_sines(ws);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += s[k] * pv.values[k];
    if (std::abs(acc) == 0.0) throw Error(ErrorKind::Numerical, "schwarz_point: point on the line at infinity");
    std::vector<cplx> aff;
    for (const auto& v : pv.values) aff.push_back(v * (std::numbers::pi / acc));
    sp.affine = std::move(aff);
  }
  return sp;
}

}  // namespace lauricella
