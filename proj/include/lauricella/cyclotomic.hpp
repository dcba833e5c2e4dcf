#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_N).
 *
 * An element of Q(zeta_N) is stored as an integer coefficient vector over a
 * common positive denominator, already reduced modulo the N-th cyclotomic
 * polynomial Phi_N. That makes the representation canonical: two elements of
 * the same conductor are equal iff their stored data are equal. Elements of
 * different conductors are compared and combined in the field of conductor
 * lcm(N1, N2), subject to a process-wide conductor cap.
 */

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "lauricella/error.hpp"
#include "lauricella/rational.hpp"

namespace lauricella {

inline constexpr int kDefaultMaxConductor = 1024;

namespace detail {
inline std::atomic<int>& conductor_cap() {
  static std::atomic<int> cap{kDefaultMaxConductor};
  return cap;
}
}  // namespace detail

inline int max_conductor() { return detail::conductor_cap().load(); }
inline void set_max_conductor(int cap) { detail::conductor_cap().store(cap); }

/// Applies LAURICELLA_MAX_CONDUCTOR if set. Returns the cap in force.
inline int configure_conductor_cap_from_env() {
  if (const char* env = std::getenv("LAURICELLA_MAX_CONDUCTOR")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
      throw Error(ErrorKind::Validation,
                  std::string("LAURICELLA_MAX_CONDUCTOR is not a positive integer: ") + env);
    set_max_conductor(static_cast<int>(v));
  }
  return max_conductor();
}

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

namespace detail {

inline void check_conductor(long n) {
  if (n < 1) throw Error(ErrorKind::Validation, "cyclotomic order must be positive");
  if (n > max_conductor())
    throw Error(ErrorKind::ConductorOverflow,
                "conductor " + std::to_string(n) + " exceeds cap " +
                    std::to_string(max_conductor()));
}

/// Phi_N as integer coefficients, lowest degree first. Monic.
struct CyclotomicPolynomial {
  int order = 1;
  std::vector<mpz_class> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

inline std::vector<mpz_class> compute_cyclotomic(int n) {
  // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}; multiply first, then divide.
  std::vector<mpz_class> poly{1};
  std::vector<int> divide_by;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = moebius(n / d);
    if (mu == 1) {
      std::vector<mpz_class> next(poly.size() + d);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + d] += poly[i];
        next[i] -= poly[i];
      }
      poly = std::move(next);
    } else if (mu == -1) {
      divide_by.push_back(d);
    }
  }
  for (int d : divide_by) {
    // exact division by x^d - 1: q_i = q_{i-d} - p_i (synthetic, from the bottom)
    std::size_t out = poly.size() - d;
    std::vector<mpz_class> q(out);
    for (std::size_t i = 0; i < out; ++i) {
      q[i] = -poly[i];
      if (i >= static_cast<std::size_t>(d)) q[i] += q[i - d];
    }
    poly = std::move(q);
  }
  return poly;
}

inline std::shared_ptr<const CyclotomicPolynomial> cyclotomic_polynomial(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CyclotomicPolynomial>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto p = std::make_shared<CyclotomicPolynomial>();
  p->order = n;
  p->coeffs = compute_cyclotomic(n);
  cache.emplace(n, p);
  return p;
}

/// In-place reduction of an integer polynomial modulo the monic Phi.
inline void reduce_mod(std::vector<mpz_class>& poly, const CyclotomicPolynomial& phi) {
  const int deg = phi.degree();
  mpz_class t;
  for (int i = static_cast<int>(poly.size()) - 1; i >= deg; --i) {
    if (poly[i] == 0) continue;
    t = poly[i];
    for (int j = 0; j <= deg; ++j) {
      if (phi.coeffs[j] != 0) poly[i - deg + j] -= t * phi.coeffs[j];
    }
  }
  poly.resize(deg);
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// Polynomials over Q, lowest degree first, used only for inversion.
using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline QPoly qpoly_sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

inline void qpoly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, mpq_class(0));
  while (!r.empty() && r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    mpq_class c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= c * b[i];
    r.pop_back();
    trim(r);
  }
}

}  // namespace detail

/**
 * Exact element of Q(zeta_N).
 *
 * Immutable after construction in the sense that every operation returns a
 * new value; instances may be shared freely across threads.
 */
class CyclotomicNumber {
 public:
  /// Zero in Q(zeta_1) = Q.
  CyclotomicNumber() : CyclotomicNumber(1) {}

  static CyclotomicNumber zero(int order) { return CyclotomicNumber(order); }
  static CyclotomicNumber one(int order) { return from_rational(Rational(1), order); }

  static CyclotomicNumber from_rational(const Rational& q, int order = 1) {
    CyclotomicNumber r(order);
    r.num_[0] = q.numerator();
    r.den_ = q.denominator();
    return r;
  }

  /// sum_j c_j zeta_N^j; any length, reduced modulo Phi_N.
  static CyclotomicNumber from_coefficients(int order, const std::vector<Rational>& coeffs) {
    CyclotomicNumber r(order);
    mpz_class common = 1;
    for (const auto& c : coeffs) common = lauricella::lcm(common, c.denominator());
    std::vector<mpz_class> poly(std::max<std::size_t>(coeffs.size(), r.num_.size()));
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      poly[j] = coeffs[j].numerator() * (common / coeffs[j].denominator());
    detail::reduce_mod(poly, *r.phi_);
    r.num_ = std::move(poly);
    r.den_ = common;
    r.normalize();
    return r;
  }

  /// zeta_N^k = exp(2 pi i k / N), reduced modulo Phi_N.
  static CyclotomicNumber root_of_unity(int order, long k) {
    CyclotomicNumber r(order);
    long e = ((k % order) + order) % order;
    std::vector<mpz_class> poly(static_cast<std::size_t>(std::max<long>(e + 1, r.phi_->degree())));
    poly[e] = 1;
    detail::reduce_mod(poly, *r.phi_);
    r.num_ = std::move(poly);
    return r;
  }

  int order() const { return phi_->order; }
  int degree() const { return phi_->degree(); }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  Rational coefficient(int j) const {
    if (j < 0 || j >= degree()) return Rational(0);
    return Rational(num_[j], den_);
  }

  bool is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return c == 0; });
  }
  bool is_one() const {
    if (den_ != 1 || num_.empty() || num_[0] != 1) return false;
    return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return c == 0; });
  }
  /// Exactly fixed by complex conjugation.
  bool is_real() const { return conj() == *this; }
  /// True when the value lies in Q; returns it through `out`.
  bool as_rational(Rational& out) const {
    for (std::size_t j = 1; j < num_.size(); ++j)
      if (num_[j] != 0) return false;
    out = Rational(num_.empty() ? mpz_class(0) : num_[0], den_);
    return true;
  }

  /// The same value viewed in Q(zeta_L); L must be a multiple of order().
  CyclotomicNumber in_field(int target) const {
    if (target == order()) return *this;
    if (target % order() != 0)
      throw Error(ErrorKind::Validation, "target conductor must be a multiple of the order");
    CyclotomicNumber r(target);
    const int step = target / order();
    std::vector<mpz_class> poly(static_cast<std::size_t>(std::max(step * degree(), r.degree()) + 1));
    for (int j = 0; j < degree(); ++j) poly[static_cast<std::size_t>(j) * step] = num_[j];
    detail::reduce_mod(poly, *r.phi_);
    r.num_ = std::move(poly);
    r.den_ = den_;
    r.normalize();
    return r;
  }

  CyclotomicNumber conj() const {
    const int n = order();
    if (n <= 2) return *this;
    CyclotomicNumber r(n);
    std::vector<mpz_class> poly(static_cast<std::size_t>(n));
    for (int j = 0; j < degree(); ++j) {
      if (num_[j] != 0) poly[(n - j) % n] += num_[j];
    }
    detail::reduce_mod(poly, *r.phi_);
    r.num_ = std::move(poly);
    r.den_ = den_;
    r.normalize();
    return r;
  }

  /// (a + conj a) / 2, in a conductor divisible by 4.
  CyclotomicNumber real_part() const {
    CyclotomicNumber a = in_field(std::lcm(order(), 4));
    return (a + a.conj()) * from_rational(Rational(1, 2));
  }

  /// (a - conj a) / (2i), in a conductor divisible by 4.
  CyclotomicNumber imag_part() const {
    const int n = std::lcm(order(), 4);
    CyclotomicNumber a = in_field(n);
    CyclotomicNumber minus_half_i = root_of_unity(n, n / 4) * from_rational(Rational(-1, 2));
    return (a - a.conj()) * minus_half_i;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
  CyclotomicNumber inverse() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero cyclotomic number");
    using detail::QPoly;
    QPoly a(num_.size());
    for (std::size_t j = 0; j < num_.size(); ++j) a[j] = mpq_class(num_[j], den_);
    for (auto& c : a) c.canonicalize();
    detail::trim(a);
    QPoly m(phi_->coeffs.size());
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = phi_->coeffs[j];
    // Invariant: s * a == r (mod Phi).
    QPoly r0 = m, r1 = a, s0 = {}, s1 = {mpq_class(1)};
    while (!(r1.size() == 1)) {
      if (r1.empty())
        throw Error(ErrorKind::DivisionByZero, "non-invertible element in cyclotomic ring");
      QPoly q, rem;
      detail::qpoly_divmod(r0, r1, q, rem);
      QPoly s2 = detail::qpoly_sub(s0, detail::qpoly_mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    mpq_class c = 1 / r1[0];
    CyclotomicNumber out(order());
    mpz_class common = 1;
    for (auto& v : s1) {
      v *= c;
      common = lauricella::lcm(common, v.get_den());
    }
    std::vector<mpz_class> poly(std::max<std::size_t>(s1.size(), out.num_.size()));
    for (std::size_t j = 0; j < s1.size(); ++j)
      poly[j] = s1[j].get_num() * (common / s1[j].get_den());
    detail::reduce_mod(poly, *out.phi_);
    out.num_ = std::move(poly);
    out.den_ = common;
    out.normalize();
    return out;
  }

  CyclotomicNumber operator-() const {
    CyclotomicNumber r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
  }

  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return combine(a, b, +1);
  }
  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return combine(a, b, -1);
  }

  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.order() != b.order()) {
      int n = common_order(a, b);
      return a.in_field(n) * b.in_field(n);
    }
    CyclotomicNumber r(a.order());
    const int d = a.degree();
    std::vector<mpz_class> poly(static_cast<std::size_t>(std::max(2 * d - 1, d)));
    for (int i = 0; i < d; ++i) {
      if (a.num_[i] == 0) continue;
      for (int j = 0; j < d; ++j) {
        if (b.num_[j] == 0) continue;
        mpz_addmul(poly[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
      }
    }
    detail::reduce_mod(poly, *r.phi_);
    r.num_ = std::move(poly);
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }

  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a * b.inverse();
  }

  CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
  CyclotomicNumber& operator-=(const CyclotomicNumber& o) { return *this = *this - o; }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.order() != b.order()) {
      int n = common_order(a, b);
      return a.in_field(n) == b.in_field(n);
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

  /// Float image under zeta_N -> exp(2 pi i / N), by Horner's rule.
  /// Absolute error is O(N * ulp * max|coefficient|).
  std::complex<double> embed() const {
    const double angle = 2.0 * std::numbers::pi / order();
    const std::complex<double> z(std::cos(angle), std::sin(angle));
    std::complex<double> acc = 0.0;
    for (int j = degree() - 1; j >= 0; --j) {
      acc = acc * z + mpq_class(num_[j], den_).get_d();
    }
    return acc;
  }

  /**
   * Exact sign of a real element.
   *
   * Zero is detected by field equality. Otherwise the value is evaluated in
   * MPFR at 64, 256, then 1024 bits with an explicit error radius, stopping
   * at the first precision whose enclosure excludes zero.
   */
  Sign sign_of_real() const {
    if (!is_real()) throw Error(ErrorKind::Validation, "sign_of_real on a non-real element");
    if (is_zero()) return Sign::Zero;
    for (int prec : {64, 256, 1024}) {
      int s = sign_at_precision(prec);
      if (s != 0) return s > 0 ? Sign::Positive : Sign::Negative;
    }
    throw Error(ErrorKind::Numerical, "sign_of_real: precision ladder exhausted");
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(order()) * 0x9E3779B97F4A7C15ull;
    auto mix = [&h](const mpz_class& z) {
      std::size_t v = mpz_get_ui(z.get_mpz_t()) ^ (static_cast<std::size_t>(sgn(z) + 1) << 61);
      h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    };
    for (const auto& c : num_) mix(c);
    mix(den_);
    return h;
  }

  /// Human-readable "a0 + a1*z + ..." over zeta_N.
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int j = 0; j < degree(); ++j) {
      if (num_[j] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coefficient(j).str() + ")";
      if (j > 0) out += "*z" + std::to_string(order()) + "^" + std::to_string(j);
    }
    return out;
  }

 private:
  explicit CyclotomicNumber(int order)
      : phi_((detail::check_conductor(order), detail::cyclotomic_polynomial(order))),
        num_(static_cast<std::size_t>(phi_->degree())),
        den_(1) {}

  static int common_order(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    long n = detail::lcm_long(a.order(), b.order());
    detail::check_conductor(n);
    return static_cast<int>(n);
  }

  static CyclotomicNumber combine(const CyclotomicNumber& a, const CyclotomicNumber& b, int s) {
    if (a.order() != b.order()) {
      int n = common_order(a, b);
      return combine(a.in_field(n), b.in_field(n), s);
    }
    CyclotomicNumber r(a.order());
    for (int j = 0; j < a.degree(); ++j) {
      r.num_[j] = a.num_[j] * b.den_;
      if (s > 0)
        r.num_[j] += b.num_[j] * a.den_;
      else
        r.num_[j] -= b.num_[j] * a.den_;
    }
    r.den_ = a.den_ * b.den_;
    r.normalize();
    return r;
  }

  void normalize() {
    if (den_ == 1) return;
    mpz_class g = den_;
    for (const auto& c : num_) {
      if (c != 0) g = lauricella::gcd(g, c);
      if (g == 1) return;
    }
    if (is_zero()) {
      den_ = 1;
      return;
    }
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }

  // Sign of sum_j c_j cos(2 pi j / N) if the computed value clears its
  // error radius, else 0.
  int sign_at_precision(int prec) const {
    mpfr_t pi, x, c, term, acc, absacc, coef;
    mpfr_inits2(prec, pi, x, c, term, acc, absacc, coef, static_cast<mpfr_ptr>(nullptr));
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_set_zero(acc, 1);
    mpfr_set_zero(absacc, 1);
    for (int j = 0; j < degree(); ++j) {
      if (num_[j] == 0) continue;
      mpfr_mul_ui(x, pi, 2ul * static_cast<unsigned long>(j), MPFR_RNDN);
      mpfr_div_ui(x, x, static_cast<unsigned long>(order()), MPFR_RNDN);
      mpfr_cos(c, x, MPFR_RNDN);
      mpfr_set_z(coef, num_[j].get_mpz_t(), MPFR_RNDN);
      mpfr_mul(term, coef, c, MPFR_RNDN);
      mpfr_add(acc, acc, term, MPFR_RNDN);
      mpfr_abs(coef, coef, MPFR_RNDN);
      mpfr_add(absacc, absacc, coef, MPFR_RNDU);
    }
    // Each term carries a few relative roundings on an argument bounded by
    // 2 pi; the radius below over-covers them plus summation error.
    mpfr_mul_ui(absacc, absacc, static_cast<unsigned long>(degree() + 16) * 64ul, MPFR_RNDU);
    mpfr_mul_2si(absacc, absacc, -prec, MPFR_RNDU);
    int result = 0;
    if (mpfr_cmpabs(acc, absacc) > 0) result = mpfr_sgn(acc);
    mpfr_clears(pi, x, c, term, acc, absacc, coef, static_cast<mpfr_ptr>(nullptr));
    return result;  // the positive denominator does not change the sign
  }

  std::shared_ptr<const detail::CyclotomicPolynomial> phi_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

inline CyclotomicNumber root_of_unity(int order, long k) {
  return CyclotomicNumber::root_of_unity(order, k);
}

/// exp(i pi q) for rational q, as an element of Q(zeta_L) with L = lcm(2 den(q), base).
inline CyclotomicNumber exp_i_pi(const Rational& q, int base_order = 1) {
  mpz_class den = q.denominator();
  mpz_class order = 2 * den;
  mpz_class k = q.numerator();
  long n = std::lcm(order.get_si(), static_cast<long>(base_order));
  detail::check_conductor(n);
  mpz_class scaled = k * (n / order.get_si());
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(n));
  return root_of_unity(static_cast<int>(n), r.get_si());
}

/// sin(pi / q) in Q(zeta_L), L = lcm(4, 2q, base).
inline CyclotomicNumber sin_pi_over(long q, int base_order = 4) {
  return exp_i_pi(Rational(1, q), std::lcm(4, base_order)).imag_part();
}

/// cot(pi / q) = i (z + conj z) / (z - conj z) with z = exp(i pi / q).
inline CyclotomicNumber cot_pi_over(long q, int base_order = 4) {
  CyclotomicNumber z = exp_i_pi(Rational(1, q), std::lcm(4, base_order));
  const int n = z.order();
  CyclotomicNumber i = root_of_unity(n, n / 4);
  return i * (z + z.conj()) / (z - z.conj());
}

}  // namespace lauricella

template <>
struct std::hash<lauricella::CyclotomicNumber> {
  std::size_t operator()(const lauricella::CyclotomicNumber& a) const noexcept { return a.hash(); }
};
