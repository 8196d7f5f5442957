#pragma once

// Flat-space differential geometry built on second-order jets: divergence,
// tension and p-tension fields, mean curvature of level-set submanifolds,
// and the finite-difference oracle used to cross-check all of it.

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cliffcone/errors.hpp"
#include "cliffcone/field.hpp"

namespace cliffcone {

struct LevelSet {
  std::vector<SmoothField> fields;
  std::vector<double> levels;

  LevelSet() = default;
  LevelSet(std::vector<SmoothField> f, std::vector<double> c)
      : fields(std::move(f)), levels(std::move(c)) {
    if (fields.empty() || fields.size() != levels.size())
      throw shape_error("level set needs matching fields and levels");
  }
  std::size_t codim() const { return fields.size(); }
};

inline LevelSet make_level_set(SmoothField f, double level) {
  std::vector<SmoothField> fs;
  fs.push_back(std::move(f));
  return LevelSet(std::move(fs), {level});
}

// H = -sum_{a,b} (G^{-1})_{ab} trace(Pi Hess F_b) grad F_a with
// G_{ab} = <grad F_a, grad F_b> and Pi the projector onto the tangent space.
// Convention: unit sphere gives H = -(m-1) x.
inline Eigen::VectorXd mean_curvature(const LevelSet& L, const Eigen::VectorXd& x,
                                      double level_tol = 1e-9, double gram_tol = 1e-10) {
  const Eigen::Index m = x.size();
  const Eigen::Index p = static_cast<Eigen::Index>(L.codim());
  Eigen::MatrixXd B(p, m);
  std::vector<Eigen::MatrixXd> hess;
  for (Eigen::Index a = 0; a < p; ++a) {
    Jet2 j = L.fields[static_cast<std::size_t>(a)].jet(x);
    double scale = std::max(1.0, j.g.norm() * x.norm());
    if (std::abs(j.v - L.levels[static_cast<std::size_t>(a)]) > level_tol * scale)
      throw off_manifold_error("point misses level " + std::to_string(a + 1) + " by " +
                               std::to_string(std::abs(j.v - L.levels[static_cast<std::size_t>(a)])));
    B.row(a) = j.g.transpose();
    hess.push_back(std::move(j.H));
  }
  Eigen::MatrixXd G = B * B.transpose();
  Eigen::MatrixXd Gn = G;
  for (Eigen::Index a = 0; a < p; ++a) {
    if (!(G(a, a) > 0.0))
      throw singular_point_error("vanishing gradient of field " + std::to_string(a + 1));
    for (Eigen::Index b = 0; b < p; ++b) Gn(a, b) = G(a, b) / std::sqrt(G(a, a) * G(b, b));
  }
  if (!(Gn.determinant() >= gram_tol))
    throw singular_point_error("gradients dependent: normalized Gram determinant below threshold");
  Eigen::LDLT<Eigen::MatrixXd> solver(G);
  Eigen::MatrixXd Pi = Eigen::MatrixXd::Identity(m, m) - B.transpose() * solver.solve(B);
  Eigen::VectorXd t(p);
  for (Eigen::Index a = 0; a < p; ++a) t(a) = (Pi * hess[static_cast<std::size_t>(a)]).trace();
  return -B.transpose() * solver.solve(t);
}

// Sum of partial_i V_i, reading only first-order data of each component.
inline double divergence(const std::vector<SmoothField>& V, const Eigen::VectorXd& x) {
  if (static_cast<Eigen::Index>(V.size()) != x.size())
    throw dimension_error("vector field has wrong number of components");
  double div = 0.0;
  for (std::size_t i = 0; i < V.size(); ++i) div += V[i].gradient(x)(static_cast<Eigen::Index>(i));
  return div;
}

// Components of grad f / ||grad f|| as fields. Value and gradient are exact
// consequences of the jet of f; second-order data of the components is not
// defined (third derivatives of f are out of reach) and is reported as zero.
inline std::vector<SmoothField> normalized_gradient(const SmoothField& f, Eigen::Index dim) {
  auto base = std::make_shared<SmoothField>(f);
  SmoothField::DomainPredicate domain = [base](const Eigen::VectorXd& x) {
    return base->in_domain(x) && base->gradient(x).norm() > 0.0;
  };
  std::vector<SmoothField> comps;
  for (Eigen::Index i = 0; i < dim; ++i)
    comps.push_back(SmoothField(
        [base, i](const Eigen::VectorXd& x) {
          Jet2 j = base->jet(x);
          double ng = j.g.norm();
          if (ng <= 0.0) throw vanishing_gradient_error("cannot normalize a zero gradient");
          Jet2 out;
          out.v = j.g(i) / ng;
          out.g = j.H.col(i) / ng - j.g(i) * (j.H * j.g) / (ng * ng * ng);
          out.H = Eigen::MatrixXd::Zero(x.size(), x.size());
          return out;
        },
        domain));
  return comps;
}

// Closed evaluation of div(grad f / ||grad f||) from the jet of f:
// (||g||^2 tr H - g^T H g) / ||g||^3.
inline double divergence_normalized_gradient(const SmoothField& f, const Eigen::VectorXd& x,
                                             double grad_floor = 0.0) {
  Jet2 j = f.jet(x);
  double ng = j.g.norm();
  if (ng <= grad_floor || ng == 0.0)
    throw vanishing_gradient_error("gradient vanishes at the evaluation point");
  return (ng * ng * j.H.trace() - j.g.dot(j.H * j.g)) / (ng * ng * ng);
}

// Componentwise Laplacian.
inline Eigen::VectorXd tension_field(const std::vector<SmoothField>& phi,
                                     const Eigen::VectorXd& x) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(phi.size()));
  for (std::size_t i = 0; i < phi.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = phi[i].hessian(x).trace();
  return out;
}

// ||dphi||^{p-2} (tau(phi) + (p-2) dphi(grad ln ||dphi||)), with ||dphi||^2
// the squared Frobenius norm of the Jacobian.
inline Eigen::VectorXd p_tension_field(const std::vector<SmoothField>& phi, double p,
                                       const Eigen::VectorXd& x) {
  const std::size_t n = phi.size();
  std::vector<Jet2> jets;
  jets.reserve(n);
  double e = 0.0;
  for (const auto& comp : phi) {
    jets.push_back(comp.jet(x));
    e += jets.back().g.squaredNorm();
  }
  if (e <= 0.0) throw vanishing_differential_error("differential vanishes at the evaluation point");
  Eigen::VectorXd grad_e = Eigen::VectorXd::Zero(x.size());
  for (const auto& j : jets) grad_e += 2.0 * j.H * j.g;
  const double pref = std::pow(e, (p - 2.0) / 2.0);
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    out(static_cast<Eigen::Index>(i)) =
        pref * (jets[i].H.trace() + (p - 2.0) * jets[i].g.dot(grad_e) / (2.0 * e));
  return out;
}

// Central differences, O(h^2); reads only values of f.
inline std::pair<Eigen::VectorXd, Eigen::MatrixXd> finite_difference_oracle(
    const SmoothField& f, const Eigen::VectorXd& x, double h = 1e-4) {
  const Eigen::Index m = x.size();
  Eigen::VectorXd g(m);
  Eigen::MatrixXd H(m, m);
  const double f0 = f.value(x);
  auto at = [&](Eigen::Index i, double di, Eigen::Index j, double dj) {
    Eigen::VectorXd y = x;
    y(i) += di;
    if (j >= 0) y(j) += dj;
    return f.value(y);
  };
  for (Eigen::Index i = 0; i < m; ++i) {
    double fp = at(i, h, -1, 0.0), fm = at(i, -h, -1, 0.0);
    g(i) = (fp - fm) / (2.0 * h);
    H(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    for (Eigen::Index j = i + 1; j < m; ++j) {
      double v = (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) /
                 (4.0 * h * h);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return {std::move(g), std::move(H)};
}

}  // namespace cliffcone
