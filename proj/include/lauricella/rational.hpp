#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rationals.
 *
 * Thin value type over GMP's mpq_class. Values are kept canonical: lowest
 * terms, positive denominator, zero as 0/1.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "lauricella/error.hpp"

namespace lauricella {

class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT: implicit from integers is intended
  Rational(int n) : q_(n) {}   // NOLINT
  Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }
  Rational(long n, long d) : Rational(mpz_class(n), mpz_class(d)) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p/q" or "p" (optional leading sign). Reports the failing offset.
  static Rational parse(std::string_view text, std::size_t base_offset = 0) {
    auto fail = [&](const char* what, std::size_t at) -> Rational {
      throw ParseError(std::string(what) + " in \"" + std::string(text) + "\"",
                       base_offset + at);
    };
    std::size_t i = 0;
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == digits) return fail("expected digits", i);
    std::string num(text.substr(start, i - start));
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    std::string den = "1";
    if (i < text.size() && text[i] == '/') {
      ++i;
      std::size_t d0 = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == d0) return fail("expected denominator digits", i);
      den = std::string(text.substr(d0, i - d0));
    }
    std::size_t tail = i;
    while (i < text.size() && text[i] == ' ') ++i;
    if (i != text.size()) return fail("unexpected character", tail);
    mpz_class d(den);
    if (d == 0) return fail("zero denominator", tail);
    return Rational(mpz_class(num), d);
  }

  const mpz_class& numerator() const { return q_.get_num(); }
  const mpz_class& denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }
  mpz_class ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }
  /// Fractional part {x} = x - floor(x), always in [0, 1).
  Rational frac() const { return *this - Rational(floor(), 1); }

  double to_double() const { return q_.get_d(); }
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace lauricella

template <>
struct std::hash<lauricella::Rational> {
  std::size_t operator()(const lauricella::Rational& r) const noexcept {
    std::size_t h = mpz_get_ui(r.numerator().get_mpz_t()) * 0x9E3779B97F4A7C15ull;
    h ^= mpz_get_ui(r.denominator().get_mpz_t()) + 0x7F4A7C15ull + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(r.sign() + 1);
  }
};
