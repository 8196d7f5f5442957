#pragma once

// Cones pulled back through a quadratic map: P^{-1}(V) as a level set of the
// fields <P(x), w_a> over an orthonormal basis w_a of the orthogonal
// complement of V, plus the spectral certificate identifying codimension-one
// pullbacks with the classical two-sheet quadratic cone.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cliffcone/errors.hpp"
#include "cliffcone/field.hpp"
#include "cliffcone/geometry.hpp"
#include "cliffcone/quadmap.hpp"
#include "cliffcone/report.hpp"
#include "cliffcone/rng.hpp"

namespace cliffcone {

struct PullbackCone {
  QuadraticMap P;
  Eigen::MatrixXd wperp;  // n x p, orthonormal columns spanning the complement of V
  std::vector<Eigen::MatrixXd> forms;  // F_a(x) = <x, forms[a] x>
  LevelSet levels;
};

inline PullbackCone make_pullback_cone(QuadraticMap P, Eigen::MatrixXd wperp) {
  if (wperp.rows() != P.n() || wperp.cols() < 1 || wperp.cols() > P.n())
    throw shape_error("complement basis has wrong shape");
  Eigen::MatrixXd gram = wperp.transpose() * wperp;
  if ((gram - Eigen::MatrixXd::Identity(wperp.cols(), wperp.cols())).cwiseAbs().maxCoeff() > 1e-12)
    throw shape_error("complement basis is not orthonormal");
  PullbackCone pc{std::move(P), std::move(wperp), {}, {}};
  std::vector<SmoothField> fields;
  for (Eigen::Index a = 0; a < pc.wperp.cols(); ++a) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(pc.P.m(), pc.P.m());
    for (int i = 0; i < pc.P.n(); ++i) M += pc.wperp(i, a) * pc.P.assembled()[static_cast<std::size_t>(i)];
    pc.forms.push_back(M);
    fields.push_back(FieldAlgebra::quadratic_form(M));
  }
  pc.levels = LevelSet(std::move(fields), std::vector<double>(static_cast<std::size_t>(pc.wperp.cols()), 0.0));
  return pc;
}

namespace detail {

// Projected Newton for F(x) = c: x <- x - J^T (J J^T)^{-1} (F(x) - c).
inline bool project_to_levels(const std::vector<Eigen::MatrixXd>& forms,
                              const std::vector<double>& targets, Eigen::VectorXd& x,
                              double tol_rel) {
  const Eigen::Index p = static_cast<Eigen::Index>(forms.size());
  for (int it = 0; it < 80; ++it) {
    Eigen::VectorXd r(p);
    Eigen::MatrixXd J(p, x.size());
    for (Eigen::Index a = 0; a < p; ++a) {
      Eigen::VectorXd mx = forms[static_cast<std::size_t>(a)] * x;
      r(a) = x.dot(mx) - targets[static_cast<std::size_t>(a)];
      J.row(a) = 2.0 * mx.transpose();
    }
    double scale = std::max(1.0, x.squaredNorm());
    if (r.cwiseAbs().maxCoeff() <= 1e-12 * scale) return true;
    Eigen::MatrixXd G = J * J.transpose();
    Eigen::LDLT<Eigen::MatrixXd> solver(G);
    if (solver.info() != Eigen::Success) return false;
    Eigen::VectorXd step = J.transpose() * solver.solve(r);
    if (!step.allFinite()) return false;
    x -= step;
  }
  (void)tol_rel;
  return false;
}

}  // namespace detail

// Samples regular points of P^{-1}(V), checks the mean curvature vanishes,
// and re-runs the pipeline as a negative control with the first form pushed
// off traceless by a multiple of the identity and the targets shifted off
// zero, expecting curvature bounded away from zero. Shifting the target
// alone is not a control: every regular joint fiber of the quadric tuple is
// minimal, at every level, once two or more forms are involved.
inline VerificationReport pullback_minimality(const PullbackCone& pc, long samples,
                                              std::uint64_t seed, double tol = 1e-8) {
  VerificationReport rep;
  rep.check = "pullback_minimality";
  rep.m = pc.P.m();
  rep.n = pc.P.n();
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance("mean_curvature_rel", tol);
  rep.pass = true;
  const std::size_t p = pc.forms.size();
  std::vector<double> zero(p, 0.0);
  long produced = 0;
  const long budget = 200 * samples + 100;
  for (long k = 0; k < budget && produced < samples; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    Eigen::VectorXd x = rng.gaussian_vector(pc.P.m());
    if (!detail::project_to_levels(pc.forms, zero, x, 1e-12)) continue;
    double scale = 0.0;
    double gmin = std::numeric_limits<double>::infinity();
    for (const auto& M : pc.forms) {
      scale = std::max(scale, 2.0 * M.operatorNorm());
      gmin = std::min(gmin, (2.0 * M * x).norm());
    }
    if (!(gmin > 1e-6 * x.norm())) continue;  // near the singular locus
    Eigen::VectorXd H;
    try {
      H = mean_curvature(pc.levels, x);
    } catch (const singular_point_error&) {
      continue;
    }
    // Normalize against the local curvature scale ||Hess F|| / ||grad F||.
    double rel = H.norm() * gmin / std::max(scale, 1e-300);
    rep.record(rel, x);
    if (rel > tol) rep.pass = false;
    ++produced;
  }
  if (produced < samples) throw sampling_error("could not sample the pullback cone");

  // Negative control: break tracelessness of the first form and move off the
  // apex level.
  std::vector<Eigen::MatrixXd> perturbed = pc.forms;
  perturbed[0] += 0.25 * perturbed[0].operatorNorm() *
                  Eigen::MatrixXd::Identity(pc.P.m(), pc.P.m());
  std::vector<double> shifted(p, 1.0);
  double control_max = 0.0;
  long control_produced = 0;
  for (long k = 0; k < budget && control_produced < std::min<long>(samples, 20); ++k) {
    Rng rng(derive_seed(seed ^ 0x9e3779b97f4a7c15ull, static_cast<std::uint64_t>(k)));
    Eigen::VectorXd x = rng.gaussian_vector(pc.P.m());
    if (!detail::project_to_levels(perturbed, shifted, x, 1e-12)) continue;
    std::vector<SmoothField> fields;
    for (const auto& M : perturbed) fields.push_back(FieldAlgebra::quadratic_form(M));
    LevelSet shifted_set(std::move(fields), shifted);
    try {
      control_max = std::max(control_max, mean_curvature(shifted_set, x).norm());
    } catch (const singular_point_error&) {
      continue;
    }
    ++control_produced;
  }
  rep.note("negative control max mean curvature: " + std::to_string(control_max));
  if (control_produced == 0 || control_max <= 1e-3) {
    rep.pass = false;
    rep.note("negative control failed to produce curvature away from zero");
  }
  return rep;
}

// A_w = sum w_i A_i for unit w: verifies A_w^2 = I and that both eigenvalue
// multiplicities equal m/2, certifying the codimension-one pullback is
// congruent to the classical quadratic cone on R^{m/2} x R^{m/2}.
inline VerificationReport codim1_spectrum_check(const QuadraticMap& P, const Eigen::VectorXd& w,
                                                double tol = 1e-10) {
  if (P.blocks().size() != 1 || P.blocks().front().weight != 1)
    throw dimension_error("spectrum check expects a single block of unit weight");
  if (w.size() != P.n()) throw dimension_error("direction dimension mismatch");
  if (std::abs(w.norm() - 1.0) > 1e-12) throw shape_error("direction must be a unit vector");
  VerificationReport rep;
  rep.check = "codim1_spectrum_check";
  rep.m = P.m();
  rep.n = P.n();
  rep.tolerance("eigenvalue_abs", tol);
  Eigen::MatrixXd Aw = Eigen::MatrixXd::Zero(P.m(), P.m());
  for (int i = 0; i < P.n(); ++i) Aw += w(i) * P.assembled()[static_cast<std::size_t>(i)];
  double sq_res = (Aw * Aw - Eigen::MatrixXd::Identity(P.m(), P.m())).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Aw, Eigen::EigenvaluesOnly);
  long plus = 0, minus = 0;
  double worst = sq_res;
  for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
    double ev = eig.eigenvalues()(k);
    double dev = std::min(std::abs(ev - 1.0), std::abs(ev + 1.0));
    worst = std::max(worst, dev);
    if (ev > 0.0)
      ++plus;
    else
      ++minus;
  }
  rep.record(worst, w);
  rep.note("multiplicities: +1 -> " + std::to_string(plus) + ", -1 -> " + std::to_string(minus));
  rep.pass = worst <= tol && P.m() % 2 == 0 && plus == P.m() / 2 && minus == P.m() / 2;
  return rep;
}

// {||u||^2 = ||v||^2} in R^{2n}.
inline LevelSet simons_cone(int n) {
  if (n < 1) throw dimension_error("need n >= 1");
  Eigen::MatrixXd D = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  D.bottomRightCorner(n, n) *= -1.0;
  return make_level_set(FieldAlgebra::quadratic_form(D), 0.0);
}

}  // namespace cliffcone
