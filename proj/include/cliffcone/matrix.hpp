#pragma once

// Minimal dense matrix over an arbitrary exact scalar. Used for the exact
// rational paths; floating point work goes through Eigen instead.

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "cliffcone/errors.hpp"
#include "cliffcone/rational.hpp"

namespace cliffcone {

template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols, T(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }

  T& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }

  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const {
    Mat t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = i + 1; j < c_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    for (const T& v : d_)
      if (v != 0) return false;
    return true;
  }

  T max_abs() const {
    T best(0);
    for (const T& v : d_) {
      T a = v < 0 ? T(-v) : v;
      if (a > best) best = a;
    }
    return best;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < r_ && i < c_; ++i) s += (*this)(i, i);
    return s;
  }

  Mat operator+(const Mat& o) const {
    check_same_shape(o);
    Mat out(r_, c_);
    for (std::size_t k = 0; k < d_.size(); ++k) out.d_[k] = d_[k] + o.d_[k];
    return out;
  }

  Mat operator-(const Mat& o) const {
    check_same_shape(o);
    Mat out(r_, c_);
    for (std::size_t k = 0; k < d_.size(); ++k) out.d_[k] = d_[k] - o.d_[k];
    return out;
  }

  Mat operator-() const {
    Mat out(r_, c_);
    for (std::size_t k = 0; k < d_.size(); ++k) out.d_[k] = -d_[k];
    return out;
  }

  Mat operator*(const T& s) const {
    Mat out(r_, c_);
    for (std::size_t k = 0; k < d_.size(); ++k) out.d_[k] = d_[k] * s;
    return out;
  }

  // Skips zero entries on the left factor; the constructed Clifford matrices
  // are signed permutations, which makes their products effectively O(m^2).
  Mat operator*(const Mat& o) const {
    if (c_ != o.r_) throw shape_error("matrix product shape mismatch");
    Mat out(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.c_; ++j) {
          const T& b = o(k, j);
          if (b == 0) continue;
          out(i, j) += a * b;
        }
      }
    return out;
  }

  void set_block(std::size_t i0, std::size_t j0, const Mat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

 private:
  void check_same_shape(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw shape_error("matrix shape mismatch");
  }

  std::size_t r_ = 0, c_ = 0;
  std::vector<T> d_;
};

template <typename T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

inline Eigen::MatrixXd to_eigen(const Mat<Rat>& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
  return out;
}

}  // namespace cliffcone
