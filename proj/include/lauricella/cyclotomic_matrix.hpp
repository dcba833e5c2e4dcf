#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "lauricella/cyclotomic.hpp"

namespace lauricella {

/// Dense row-major matrix over Q(zeta_N). All entries share one conductor.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols, int order)
      : rows_(rows), cols_(cols), order_(order),
        data_(rows * cols, CyclotomicNumber::zero(order)) {}

  static CycMatrix identity(std::size_t n, int order) {
    CycMatrix m(n, n, order);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = CyclotomicNumber::one(order);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int order() const { return order_; }

  CyclotomicNumber& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CyclotomicNumber& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  /// Re-expresses every entry in Q(zeta_L).
  CycMatrix in_field(int target) const {
    CycMatrix m = *this;
    m.order_ = target;
    for (auto& e : m.data_) e = e.in_field(target);
    return m;
  }

  /// Conjugate transpose.
  CycMatrix adjoint() const {
    CycMatrix m(cols_, rows_, order_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c).conj();
    return m;
  }

  CycMatrix transpose() const {
    CycMatrix m(cols_, rows_, order_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }

  friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::Validation, "matrix dimension mismatch");
    if (a.order_ != b.order_) {
      int n = static_cast<int>(detail::lcm_long(a.order_, b.order_));
      detail::check_conductor(n);
      return a.in_field(n) * b.in_field(n);
    }
    CycMatrix m(a.rows_, b.cols_, a.order_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& x = a(r, k);
        if (x.is_zero()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          const auto& y = b(k, c);
          if (y.is_zero()) continue;
          m(r, c) += x * y;
        }
      }
    }
    return m;
  }

  friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) { return a.zip(b, +1); }
  friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) { return a.zip(b, -1); }

  friend CycMatrix operator*(const CyclotomicNumber& s, const CycMatrix& a) {
    CycMatrix m = a;
    for (auto& e : m.data_) e = s * e;
    if (!m.data_.empty()) m.order_ = m.data_.front().order();
    return m;
  }

  friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

  std::size_t hash() const {
    std::size_t h = rows_ * 31 + cols_;
    for (const auto& e : data_) h ^= e.hash() + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    return h;
  }

  Eigen::MatrixXcd embed() const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c).embed();
    return m;
  }

 private:
  CycMatrix zip(const CycMatrix& b, int sign) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw Error(ErrorKind::Validation, "matrix dimension mismatch");
    CycMatrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
      m.data_[i] = sign > 0 ? data_[i] + b.data_[i] : data_[i] - b.data_[i];
    if (!m.data_.empty()) m.order_ = m.data_.front().order();
    return m;
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int order_ = 1;
  std::vector<CyclotomicNumber> data_;
};

}  // namespace lauricella
