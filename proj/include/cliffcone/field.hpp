#pragma once

// SmoothField: a scalar field on R^m evaluated as a second-order jet, with a
// declared smooth domain. FieldAlgebra holds the constructors used to build
// composite fields from quadratic forms, norms, sums, products, and powers.

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <utility>

#include "cliffcone/errors.hpp"
#include "cliffcone/jet.hpp"

namespace cliffcone {

class SmoothField {
 public:
  using Eval = std::function<Jet2(const Eigen::VectorXd&)>;
  using DomainPredicate = std::function<bool(const Eigen::VectorXd&)>;

  SmoothField() = default;
  SmoothField(Eval eval, DomainPredicate domain = nullptr)
      : eval_(std::move(eval)), domain_(std::move(domain)) {}

  Jet2 jet(const Eigen::VectorXd& x) const { return eval_(x); }
  double value(const Eigen::VectorXd& x) const { return eval_(x).v; }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const { return eval_(x).g; }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const { return eval_(x).H; }

  bool in_domain(const Eigen::VectorXd& x) const { return domain_ ? domain_(x) : true; }
  explicit operator bool() const { return static_cast<bool>(eval_); }

 private:
  Eval eval_;
  DomainPredicate domain_;
};

struct FieldAlgebra {
  // <x, Ax> for symmetric A; the jet is exact (gradient 2Ax, Hessian 2A).
  static SmoothField quadratic_form(const Eigen::MatrixXd& a) {
    auto A = std::make_shared<Eigen::MatrixXd>(0.5 * (a + a.transpose()));
    return SmoothField([A](const Eigen::VectorXd& x) {
      Eigen::VectorXd ax = (*A) * x;
      return Jet2{x.dot(ax), 2.0 * ax, 2.0 * (*A)};
    });
  }

  // <w, x> + c.
  static SmoothField linear(const Eigen::VectorXd& w, double c = 0.0) {
    auto W = std::make_shared<Eigen::VectorXd>(w);
    return SmoothField([W, c](const Eigen::VectorXd& x) {
      return Jet2{W->dot(x) + c, *W, Eigen::MatrixXd::Zero(x.size(), x.size())};
    });
  }

  static SmoothField constant(double c) {
    return SmoothField(
        [c](const Eigen::VectorXd& x) { return Jet2::constant(c, x.size()); });
  }

  // ||x||^2.
  static SmoothField squared_norm() {
    return SmoothField([](const Eigen::VectorXd& x) {
      return Jet2{x.squaredNorm(), 2.0 * x,
                  2.0 * Eigen::MatrixXd::Identity(x.size(), x.size())};
    });
  }

  static SmoothField sum(SmoothField f, SmoothField g) {
    auto F = std::make_shared<SmoothField>(std::move(f));
    auto G = std::make_shared<SmoothField>(std::move(g));
    return SmoothField(
        [F, G](const Eigen::VectorXd& x) { return F->jet(x) + G->jet(x); },
        [F, G](const Eigen::VectorXd& x) { return F->in_domain(x) && G->in_domain(x); });
  }

  static SmoothField difference(SmoothField f, SmoothField g) {
    auto F = std::make_shared<SmoothField>(std::move(f));
    auto G = std::make_shared<SmoothField>(std::move(g));
    return SmoothField(
        [F, G](const Eigen::VectorXd& x) { return F->jet(x) - G->jet(x); },
        [F, G](const Eigen::VectorXd& x) { return F->in_domain(x) && G->in_domain(x); });
  }

  static SmoothField product(SmoothField f, SmoothField g) {
    auto F = std::make_shared<SmoothField>(std::move(f));
    auto G = std::make_shared<SmoothField>(std::move(g));
    return SmoothField(
        [F, G](const Eigen::VectorXd& x) { return F->jet(x) * G->jet(x); },
        [F, G](const Eigen::VectorXd& x) { return F->in_domain(x) && G->in_domain(x); });
  }

  static SmoothField scale(SmoothField f, double s) {
    auto F = std::make_shared<SmoothField>(std::move(f));
    return SmoothField([F, s](const Eigen::VectorXd& x) { return s * F->jet(x); },
                       [F](const Eigen::VectorXd& x) { return F->in_domain(x); });
  }

  // f^alpha on the domain f > 0.
  static SmoothField power(SmoothField f, double alpha) {
    auto F = std::make_shared<SmoothField>(std::move(f));
    return SmoothField(
        [F, alpha](const Eigen::VectorXd& x) { return pow(F->jet(x), alpha); },
        [F](const Eigen::VectorXd& x) { return F->in_domain(x) && F->value(x) > 0.0; });
  }

  // x -> f(Mx).
  static SmoothField compose_linear(SmoothField f, const Eigen::MatrixXd& m) {
    auto F = std::make_shared<SmoothField>(std::move(f));
    auto M = std::make_shared<Eigen::MatrixXd>(m);
    return SmoothField(
        [F, M](const Eigen::VectorXd& x) {
          Jet2 j = F->jet((*M) * x);
          return Jet2{j.v, M->transpose() * j.g, M->transpose() * j.H * (*M)};
        },
        [F, M](const Eigen::VectorXd& x) { return F->in_domain((*M) * x); });
  }

  static SmoothField with_domain(SmoothField f, SmoothField::DomainPredicate d) {
    auto F = std::make_shared<SmoothField>(std::move(f));
    return SmoothField([F](const Eigen::VectorXd& x) { return F->jet(x); }, std::move(d));
  }
};

inline SmoothField operator+(SmoothField f, SmoothField g) {
  return FieldAlgebra::sum(std::move(f), std::move(g));
}
inline SmoothField operator-(SmoothField f, SmoothField g) {
  return FieldAlgebra::difference(std::move(f), std::move(g));
}
inline SmoothField operator*(SmoothField f, SmoothField g) {
  return FieldAlgebra::product(std::move(f), std::move(g));
}
inline SmoothField operator*(double s, SmoothField f) {
  return FieldAlgebra::scale(std::move(f), s);
}

}  // namespace cliffcone
