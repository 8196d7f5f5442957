#pragma once

// The quartic Clifford cones C4_{m,n}: membership field s(P(x)) built from a
// Clifford system of 2n matrices on R^m, the weighted distance function f
// whose normalized gradient subcalibrates the sublevel region, the nine
// first-order identities behind the divergence computation, the closed-form
// divergence, and the sampling checks (minimality, sign condition).

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "cliffcone/clifford.hpp"
#include "cliffcone/errors.hpp"
#include "cliffcone/field.hpp"
#include "cliffcone/geometry.hpp"
#include "cliffcone/quadmap.hpp"
#include "cliffcone/report.hpp"
#include "cliffcone/rng.hpp"

namespace cliffcone {

// Exponent on ||P||^2 inside f, and the resulting homogeneity degree of
// f = ||x||^2 (||P||^2)^{3/4} s(P): 2 + 3 + 4.
inline constexpr double cone_norm_exponent = 0.75;
inline constexpr int cone_f_degree = 9;

// Fixed prefactor relating the bracket expression of the closed-form
// divergence to div(grad f/||grad f||) ||grad f||^3; cross-checked against
// the independent jet differentiation path.
inline constexpr double cone_divergence_scale = 16.0;

struct ConeC4 {
  long m = 0;
  int n = 0;  // membership field is sum_{i<=n} P_i^2 - sum_{i<=n} P_{n+i}^2
  CliffordSystem system;  // 2n matrices
  QuadraticMap P;
  SmoothField xnorm2;  // a = ||x||^2
  SmoothField normP2;  // b = ||P||^2
  SmoothField sP;      // c = s(P)
  SmoothField f;       // a b^{3/4} c on {b > 0}
};

inline ConeC4 make_cone_c4(CliffordSystem sys) {
  if (sys.n < 2 || sys.n % 2 != 0)
    throw dimension_error("cone construction needs an even number of matrices, at least two");
  if (!validate(sys).pass) throw inconsistency_error("matrix tuple is not a Clifford system");
  ConeC4 C;
  C.m = sys.m;
  C.n = sys.n / 2;
  C.system = std::move(sys);
  C.P = single_block_map(C.system);
  C.xnorm2 = FieldAlgebra::squared_norm();
  std::vector<SmoothField> q;
  for (int i = 0; i < 2 * C.n; ++i)
    q.push_back(FieldAlgebra::quadratic_form(C.P.assembled()[static_cast<std::size_t>(i)]));
  SmoothField b = q[0] * q[0];
  SmoothField c = q[0] * q[0];
  for (int i = 1; i < 2 * C.n; ++i) {
    b = b + q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)];
    SmoothField sq = q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)];
    c = (i < C.n) ? c + sq : c - sq;
  }
  C.normP2 = b;
  C.sP = c;
  C.f = FieldAlgebra::power(C.normP2, cone_norm_exponent) * C.xnorm2 * C.sP;
  return C;
}

inline ConeC4 make_cone_c4(long m, int n) {
  if (n < 1) throw dimension_error("cone index n must be positive");
  return make_cone_c4(standard_map(m, 2 * n).blocks().front().system);
}

// The five bracket coefficients of the closed-form divergence and their signs;
// all positive is the sufficiency condition for the sign argument.
struct CoefficientSigns {
  std::array<double, 5> values{};
  std::array<bool, 5> positive{};
  bool all_positive = false;
};

inline CoefficientSigns coefficient_signs(long m, int n) {
  CoefficientSigns out;
  out.values = {static_cast<double>(12 * n - 47), (33.0 + 198.0 * n) / 8.0,
                static_cast<double>(2 * m - 41), (384.0 * n + 66.0 * m - 681.0) / 16.0,
                static_cast<double>(10 + 4 * m)};
  out.all_positive = true;
  for (std::size_t i = 0; i < 5; ++i) {
    out.positive[i] = out.values[i] > 0.0;
    out.all_positive = out.all_positive && out.positive[i];
  }
  return out;
}

// The nine identities coupling a = ||x||^2, b = ||P||^2, c = s(P):
// |grad c|^2 = 16ab, |grad b|^2 = 16ab, <grad c, grad b> = 16ac,
// |grad a|^2 = 4a, <grad c, grad a> = 8c, <grad b, grad a> = 8b,
// lap c = 0, lap b = 16n a, lap a = 2m.
inline VerificationReport claim_identities(const ConeC4& C, const Eigen::VectorXd& x,
                                           double tol = 1e-9) {
  Jet2 ja = C.xnorm2.jet(x);
  Jet2 jb = C.normP2.jet(x);
  Jet2 jc = C.sP.jet(x);
  if (jb.v <= 1e-300) throw outside_domain_error("P vanishes at the evaluation point");
  const double a = ja.v, b = jb.v, c = jc.v;
  const double r = x.norm();
  struct Row {
    double lhs, rhs;
    int deg;
  };
  const std::array<Row, 9> rows{{{jc.g.squaredNorm(), 16.0 * a * b, 6},
                                 {jb.g.squaredNorm(), 16.0 * a * b, 6},
                                 {jc.g.dot(jb.g), 16.0 * a * c, 6},
                                 {ja.g.squaredNorm(), 4.0 * a, 2},
                                 {jc.g.dot(ja.g), 8.0 * c, 4},
                                 {jb.g.dot(ja.g), 8.0 * b, 4},
                                 {jc.H.trace(), 0.0, 2},
                                 {jb.H.trace(), 16.0 * C.n * a, 2},
                                 {ja.H.trace(), 2.0 * static_cast<double>(C.m), 0}}};
  VerificationReport rep;
  rep.check = "claim_identities";
  rep.m = C.m;
  rep.n = C.n;
  rep.samples = 1;
  rep.tolerance("identity_rel", tol);
  double worst = 0.0;
  int worst_row = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    double scale = std::max({std::abs(rows[k].lhs), std::abs(rows[k].rhs),
                             std::pow(r, rows[k].deg)});
    double res = std::abs(rows[k].lhs - rows[k].rhs) / std::max(scale, 1e-300);
    if (res > worst) {
      worst = res;
      worst_row = static_cast<int>(k) + 1;
    }
  }
  rep.record(worst, x);
  rep.pass = worst <= tol;
  if (!rep.pass) rep.note("identity " + std::to_string(worst_row) + " has the largest residual");
  return rep;
}

inline VerificationReport claim_identities_sampled(const ConeC4& C, long samples,
                                                   std::uint64_t seed, double tol = 1e-9,
                                                   CsvSink* csv = nullptr) {
  VerificationReport rep;
  rep.check = "claim_identities";
  rep.m = C.m;
  rep.n = C.n;
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance("identity_rel", tol);
  rep.pass = true;
  if (csv) {
    std::vector<std::string> cols;
    for (long i = 0; i < C.m; ++i) cols.push_back("x" + std::to_string(i + 1));
    cols.push_back("residual");
    csv->header(cols);
  }
  for (long s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    Eigen::VectorXd x = rng.gaussian_vector(C.m);
    while (C.normP2.value(x) <= 1e-12) x = rng.gaussian_vector(C.m);
    VerificationReport one = claim_identities(C, x, tol);
    rep.record(one.max_residual, x);
    if (!one.pass) {
      rep.pass = false;
      for (const auto& note : one.notes) rep.note(note);
    }
    if (csv) {
      std::vector<double> row(x.data(), x.data() + x.size());
      row.push_back(one.max_residual);
      csv->row(row);
    }
  }
  return rep;
}

// The displayed divergence of grad f/||grad f||: a homogeneous bracket in
// a, b, c times s(P), divided by ||grad f||^3.
inline double divergence_closed_form(const ConeC4& C, const Eigen::VectorXd& x) {
  double a = C.xnorm2.value(x);
  double b = C.normP2.value(x);
  if (b <= 1e-300) throw outside_domain_error("P vanishes at the evaluation point");
  double c = C.sP.value(x);
  double ng = C.f.gradient(x).norm();
  if (ng <= 1e-300) throw vanishing_gradient_error("gradient of f vanishes at the evaluation point");
  CoefficientSigns cs = coefficient_signs(C.m, C.n);
  const double b14 = std::pow(b, 0.25);
  const double a2 = a * a;
  const double bracket = cs.values[0] * a2 * a2 * a * (b * b * b14) +
                         cs.values[1] * a2 * a2 * a * b14 * c * c +
                         cs.values[2] * a2 * a * (b * b * b * b14) +
                         cs.values[3] * a2 * a * (b * b14) * c * c +
                         cs.values[4] * a * (b * b * b14) * c * c;
  return cone_divergence_scale * bracket * c / (ng * ng * ng);
}

// Gaussian point moved onto {s(P) = 0} by bisection between opposite-sign
// draws; rejects points too close to P^{-1}(0).
inline Eigen::VectorXd sample_on_cone(const ConeC4& C, Rng& rng, int retry_budget = 100) {
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    Eigen::VectorXd xa = rng.gaussian_vector(C.m);
    double ca = C.sP.value(xa);
    if (ca == 0.0) continue;
    Eigen::VectorXd xb;
    double cb = 0.0;
    bool found = false;
    for (int k = 0; k < retry_budget; ++k) {
      xb = rng.gaussian_vector(C.m);
      cb = C.sP.value(xb);
      if (cb != 0.0 && ((ca < 0.0) != (cb < 0.0))) {
        found = true;
        break;
      }
    }
    if (!found) continue;
    double lo = 0.0, hi = 1.0;
    Eigen::VectorXd x = xa;
    double cx = ca;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      x = (1.0 - mid) * xa + mid * xb;
      cx = C.sP.value(x);
      if (std::abs(cx) <= 1e-12 * std::pow(x.norm(), 4)) break;
      if ((cx < 0.0) == (ca < 0.0))
        lo = mid;
      else
        hi = mid;
    }
    if (std::abs(cx) > 1e-12 * std::pow(x.norm(), 4)) continue;
    if (C.normP2.value(x) <= 1e-12 * std::pow(x.norm(), 4)) continue;
    return x;
  }
  throw sampling_error("could not generate a regular point of the cone within the retry budget");
}

// Mean curvature of {s(P) = 0} at sampled regular points, measured against
// the local curvature scale ||Hess|| / ||grad||.
inline VerificationReport minimality_check(const ConeC4& C, long samples, std::uint64_t seed,
                                           double tol = 1e-8, CsvSink* csv = nullptr) {
  VerificationReport rep;
  rep.check = "minimality_check";
  rep.m = C.m;
  rep.n = C.n;
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance("mean_curvature_rel", tol);
  rep.pass = true;
  LevelSet L = make_level_set(C.sP, 0.0);
  if (csv) {
    std::vector<std::string> cols;
    for (long i = 0; i < C.m; ++i) cols.push_back("x" + std::to_string(i + 1));
    cols.push_back("H_norm_rel");
    csv->header(cols);
  }
  for (long s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    Eigen::VectorXd x = sample_on_cone(C, rng);
    Jet2 jc = C.sP.jet(x);
    double scale = jc.H.operatorNorm() / jc.g.norm();
    Eigen::VectorXd H = mean_curvature(L, x);
    double rel = H.norm() / std::max(scale, 1e-300);
    rep.record(rel, x);
    if (rel > tol) rep.pass = false;
    if (csv) {
      std::vector<double> row(x.data(), x.data() + x.size());
      row.push_back(rel);
      csv->row(row);
    }
  }
  if (!rep.pass) rep.note("mean curvature above tolerance at a sampled point");
  return rep;
}

// Sign verification for xi = grad f/||grad f||: div(xi) <= tol on sampled
// points of {f < -eps}, the mirrored field passes on {f > eps}, and xi is the
// exterior unit normal along {f = -eps}. When coefficient positivity fails
// the run is informational: findings are reported, pass is not tied to the
// sign condition.
inline VerificationReport subcalibration_check(const ConeC4& C, double eps, long samples,
                                               std::uint64_t seed, double tol = 1e-9,
                                               CsvSink* csv = nullptr) {
  if (!(eps > 0.0)) throw dimension_error("sublevel margin must be positive");
  VerificationReport rep;
  rep.check = "subcalibration_check";
  rep.m = C.m;
  rep.n = C.n;
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance("divergence_max", tol);
  rep.tolerance("unit_norm_abs", 1e-12);
  rep.tolerance("normal_match_abs", 1e-12);
  CoefficientSigns cs = coefficient_signs(C.m, C.n);
  const bool informational = !cs.all_positive;
  if (csv) {
    std::vector<std::string> cols;
    for (long i = 0; i < C.m; ++i) cols.push_back("x" + std::to_string(i + 1));
    cols.push_back("f");
    cols.push_back("div");
    csv->header(cols);
  }

  long count_sub = 0, count_sup = 0, positive_sub = 0;
  double max_div_sub = -std::numeric_limits<double>::infinity();
  double min_div_sup = std::numeric_limits<double>::infinity();
  Eigen::VectorXd worst_sub, worst_sup;
  double boundary_worst = 0.0;
  long boundary_checked = 0;
  const long boundary_target = std::min<long>(samples, 100);
  const long budget = 400 * samples + 1000;
  for (long k = 0; k < budget && (count_sub < samples || count_sup < samples); ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    Eigen::VectorXd u = rng.gaussian_vector(C.m);
    double nu = u.norm();
    if (nu == 0.0) continue;
    u /= nu;
    if (C.normP2.value(u) <= 1e-12) continue;  // too close to P^{-1}(0)
    double fv = C.f.value(u);
    if (fv < -eps && count_sub < samples) {
      double div = divergence_normalized_gradient(C.f, u);
      ++count_sub;
      if (div > tol) ++positive_sub;
      if (div > max_div_sub) {
        max_div_sub = div;
        worst_sub = u;
      }
      if (csv) {
        std::vector<double> row(u.data(), u.data() + u.size());
        row.push_back(fv);
        row.push_back(div);
        csv->row(row);
      }
      if (boundary_checked < boundary_target) {
        double t = std::pow(eps / (-fv), 1.0 / cone_f_degree);
        Eigen::VectorXd y = t * u;
        double fy = C.f.value(y);
        Eigen::VectorXd g = C.f.gradient(y);
        Eigen::VectorXd xi = g / g.norm();
        double level_res = std::abs(fy + eps) / eps;
        double unit_res = std::abs(xi.norm() - 1.0);
        double normal_res = std::abs(xi.dot(g) / g.norm() - 1.0);
        boundary_worst = std::max({boundary_worst, unit_res, normal_res});
        if (level_res > 1e-9) rep.note("boundary scaling missed the level by " +
                                       std::to_string(level_res));
        ++boundary_checked;
      }
    } else if (fv > eps && count_sup < samples) {
      double div = divergence_normalized_gradient(C.f, u);
      ++count_sup;
      if (div < min_div_sup) {
        min_div_sup = div;
        worst_sup = u;
      }
    }
  }
  if (count_sub < samples || count_sup < samples)
    throw sampling_error("could not fill both level regions within the retry budget");

  double overall = std::max(max_div_sub, -min_div_sup);
  rep.max_residual = overall;
  const Eigen::VectorXd& w = (max_div_sub >= -min_div_sup) ? worst_sub : worst_sup;
  rep.worst_point.assign(w.data(), w.data() + w.size());
  rep.note("sublevel max divergence: " + std::to_string(max_div_sub));
  rep.note("superlevel min divergence: " + std::to_string(min_div_sup));
  rep.note("boundary normal residual: " + std::to_string(boundary_worst));
  if (informational) {
    rep.note("informational: coefficient positivity fails, sign condition not guaranteed");
    rep.note(std::to_string(positive_sub) + " of " + std::to_string(count_sub) +
             " sublevel samples have positive divergence");
    rep.pass = true;
  } else {
    rep.pass = max_div_sub <= tol && -min_div_sup <= tol && boundary_worst <= 1e-12;
  }
  return rep;
}

}  // namespace cliffcone
