#pragma once

// Second-order forward jet: value, gradient, and dense Hessian of a scalar
// field at a point. Sums, products, and powers propagate derivatives through
// the exact second-order product and chain rules.

#include <Eigen/Dense>
#include <cmath>

#include "cliffcone/errors.hpp"

namespace cliffcone {

struct Jet2 {
  double v = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd H;

  Jet2() = default;
  Jet2(double value, Eigen::VectorXd grad, Eigen::MatrixXd hess)
      : v(value), g(std::move(grad)), H(std::move(hess)) {}

  static Jet2 constant(double value, Eigen::Index m) {
    return {value, Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m)};
  }

  Eigen::Index dim() const { return g.size(); }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.g + b.g, a.H + b.H}; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.g - b.g, a.H - b.H}; }
inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.g, -a.H}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.v * b.g + b.v * a.g,
          a.v * b.H + b.v * a.H + a.g * b.g.transpose() + b.g * a.g.transpose()};
}

inline Jet2 operator*(double s, const Jet2& a) { return {s * a.v, s * a.g, s * a.H}; }
inline Jet2 operator*(const Jet2& a, double s) { return s * a; }
inline Jet2 operator+(const Jet2& a, double s) { return {a.v + s, a.g, a.H}; }
inline Jet2 operator+(double s, const Jet2& a) { return a + s; }
inline Jet2 operator-(const Jet2& a, double s) { return {a.v - s, a.g, a.H}; }

// f^alpha for f > 0.
inline Jet2 pow(const Jet2& a, double alpha) {
  if (!(a.v > 0.0)) throw outside_domain_error("power of non-positive field value");
  double u = std::pow(a.v, alpha);
  double d1 = alpha * std::pow(a.v, alpha - 1.0);
  double d2 = alpha * (alpha - 1.0) * std::pow(a.v, alpha - 2.0);
  return {u, d1 * a.g, d1 * a.H + d2 * a.g * a.g.transpose()};
}

inline Jet2 sqrt(const Jet2& a) { return pow(a, 0.5); }

inline Jet2 log(const Jet2& a) {
  if (!(a.v > 0.0)) throw outside_domain_error("log of non-positive field value");
  return {std::log(a.v), a.g / a.v, a.H / a.v - a.g * a.g.transpose() / (a.v * a.v)};
}

}  // namespace cliffcone
