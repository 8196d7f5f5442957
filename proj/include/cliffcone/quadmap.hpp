#pragma once

// Quadratic maps P: R^m -> R^n given as weighted block sums of Clifford
// systems, P_i(x) = sum_l lambda_l <x_l, A_i^(l) x_l>, plus the analytic
// checks (horizontal conformality, harmonicity, umbillicity, fullness) and
// the eigenspace decomposition of arbitrary candidate tuples.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cliffcone/clifford.hpp"
#include "cliffcone/errors.hpp"
#include "cliffcone/field.hpp"
#include "cliffcone/matrix.hpp"
#include "cliffcone/rational.hpp"
#include "cliffcone/report.hpp"
#include "cliffcone/rng.hpp"

namespace cliffcone {

struct QuadBlock {
  Rat weight;  // positive
  CliffordSystem system;
};

class QuadraticMap {
 public:
  QuadraticMap() = default;
  QuadraticMap(std::vector<QuadBlock> blocks, long trivial_dim)
      : blocks_(std::move(blocks)), trivial_dim_(trivial_dim) {
    if (blocks_.empty()) throw dimension_error("quadratic map needs at least one block");
    if (trivial_dim_ < 0) throw dimension_error("negative trivial dimension");
    n_ = blocks_.front().system.n;
    m_ = trivial_dim_;
    for (const auto& b : blocks_) {
      if (b.system.n != n_) throw dimension_error("blocks disagree on output dimension");
      if (b.weight <= 0) throw dimension_error("block weights must be positive");
      m_ += b.system.m;
    }
    assemble();
  }

  long m() const { return m_; }
  int n() const { return n_; }
  long trivial_dim() const { return trivial_dim_; }
  const std::vector<QuadBlock>& blocks() const { return blocks_; }

  // Full-size lambda-weighted block diagonal matrices, exact and double.
  const std::vector<Mat<Rat>>& assembled_exact() const { return exact_; }
  const std::vector<Eigen::MatrixXd>& assembled() const { return dbl_; }

 private:
  void assemble() {
    const std::size_t m = static_cast<std::size_t>(m_);
    for (int i = 0; i < n_; ++i) {
      Mat<Rat> a(m, m);
      std::size_t off = 0;
      for (const auto& b : blocks_) {
        a.set_block(off, off, b.system.matrices[static_cast<std::size_t>(i)] * b.weight);
        off += static_cast<std::size_t>(b.system.m);
      }
      exact_.push_back(std::move(a));
    }
    for (const auto& a : exact_) dbl_.push_back(to_eigen(a));
  }

  std::vector<QuadBlock> blocks_;
  long trivial_dim_ = 0;
  long m_ = 0;
  int n_ = 0;
  std::vector<Mat<Rat>> exact_;
  std::vector<Eigen::MatrixXd> dbl_;
};

inline QuadraticMap single_block_map(CliffordSystem sys, Rat weight = Rat(1)) {
  std::vector<QuadBlock> blocks;
  blocks.push_back({std::move(weight), std::move(sys)});
  return QuadraticMap(std::move(blocks), 0);
}

// Unit-weight map on R^m built from the irreducible system of size n,
// direct-summed to reach m. Requires m to be a multiple of min_dimension(n).
inline QuadraticMap standard_map(long m, int n) {
  long long base = min_dimension(n);
  if (m < base || m % base != 0)
    throw dimension_error("ambient dimension must be a positive multiple of " +
                          std::to_string(base));
  CliffordSystem sys = build_irreducible(n);
  if (m > base) sys = direct_sum(sys, static_cast<int>(m / base));
  return single_block_map(std::move(sys));
}

inline Eigen::VectorXd evaluate(const QuadraticMap& p, const Eigen::VectorXd& x) {
  if (x.size() != p.m()) throw dimension_error("point dimension mismatch");
  Eigen::VectorXd out(p.n());
  for (int i = 0; i < p.n(); ++i) out(i) = x.dot(p.assembled()[static_cast<std::size_t>(i)] * x);
  return out;
}

// Row i is the gradient of P_i, i.e. 2 (A~_i x)^T.
inline Eigen::MatrixXd jacobian(const QuadraticMap& p, const Eigen::VectorXd& x) {
  if (x.size() != p.m()) throw dimension_error("point dimension mismatch");
  Eigen::MatrixXd j(p.n(), p.m());
  for (int i = 0; i < p.n(); ++i)
    j.row(i) = 2.0 * (p.assembled()[static_cast<std::size_t>(i)] * x).transpose();
  return j;
}

// (a) exact identity A~_i A~_j + A~_j A~_i = 2 delta_ij A~_i^2 on the
// assembled matrices, including agreement of all squares; (b) sampled check
// that the gradient Gram matrix is scalar.
inline VerificationReport check_whc(const QuadraticMap& p, long samples = 100,
                                    std::uint64_t seed = 1, double tol = 1e-9) {
  VerificationReport rep;
  rep.check = "check_whc";
  rep.m = p.m();
  rep.n = p.n();
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance("gram_scalar_rel", tol);
  rep.pass = true;
  const auto& A = p.assembled_exact();
  const Mat<Rat>& sq0 = A[0] * A[0];
  for (int i = 0; i < p.n(); ++i) {
    const auto& Ai = A[static_cast<std::size_t>(i)];
    if (i > 0 && !(Ai * Ai == sq0)) {
      rep.pass = false;
      rep.note("squares differ: matrices 1 and " + std::to_string(i + 1));
    }
    for (int j = i + 1; j < p.n(); ++j) {
      const auto& Aj = A[static_cast<std::size_t>(j)];
      if (!(Ai * Aj + Aj * Ai).is_zero()) {
        rep.pass = false;
        rep.note("anticommutator nonzero: pair (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")");
      }
    }
  }
  for (long s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    Eigen::VectorXd x = rng.gaussian_vector(p.m());
    Eigen::MatrixXd J = jacobian(p, x);
    Eigen::MatrixXd G = J * J.transpose();
    double mean_diag = G.trace() / p.n();
    double denom = std::max(std::abs(mean_diag), 1e-300);
    double res = (G - mean_diag * Eigen::MatrixXd::Identity(p.n(), p.n())).cwiseAbs().maxCoeff() /
                 denom;
    rep.record(res, x);
  }
  if (rep.max_residual > tol) {
    rep.pass = false;
    rep.note("gradient Gram matrix not scalar within tolerance");
  }
  return rep;
}

// Delta P_i = 2 sum_l lambda_l trace(A_i^(l)), checked exactly. Passes for
// every valid map with n >= 2; a single 1x1 block (P = t^2) fails.
inline VerificationReport check_harmonic(const QuadraticMap& p) {
  VerificationReport rep;
  rep.check = "check_harmonic";
  rep.m = p.m();
  rep.n = p.n();
  rep.pass = true;
  for (int i = 0; i < p.n(); ++i) {
    Rat lap = p.assembled_exact()[static_cast<std::size_t>(i)].trace() * Rat(2);
    if (lap != 0) {
      rep.pass = false;
      rep.note("component " + std::to_string(i + 1) + " has Laplacian " + to_string(lap));
    }
  }
  return rep;
}

struct UmbillicResult {
  VerificationReport report;
  std::optional<double> eta;  // sampled proportionality constant, when defined
};

// Structural test: all block weights equal. Numeric confirmation: the ratios
// r_i = [dP(grad ||dP||^2)]_i / P_i agree across components, and the vector
// identity dP(grad ||dP||^2) = eta P holds within tolerance.
inline UmbillicResult check_umbillic(const QuadraticMap& p, long samples = 100,
                                     std::uint64_t seed = 1, double tol = 1e-9) {
  UmbillicResult out;
  VerificationReport& rep = out.report;
  rep.check = "check_umbillic";
  rep.m = p.m();
  rep.n = p.n();
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance("ratio_agreement_rel", tol);
  rep.pass = true;
  for (std::size_t l = 1; l < p.blocks().size(); ++l)
    if (p.blocks()[l].weight != p.blocks()[0].weight) {
      rep.pass = false;
      rep.note("block weights differ: " + to_string(p.blocks()[0].weight) + " vs " +
               to_string(p.blocks()[l].weight));
    }
  // ||dP||^2 is the quadratic form of 4 sum_i A~_i^2.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(p.m(), p.m());
  for (const auto& a : p.assembled()) M += 4.0 * a * a;
  SmoothField e = FieldAlgebra::quadratic_form(M);
  double eta_accum = 0.0;
  long eta_count = 0;
  const double comp_floor = 1e-8;
  for (long s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    Eigen::VectorXd x = rng.gaussian_vector(p.m());
    Eigen::VectorXd Pv = evaluate(p, x);
    if (Pv.norm() < 1e-12) continue;
    Eigen::VectorXd ge = e.gradient(x);
    Eigen::VectorXd w = jacobian(p, x) * ge;  // dP(grad e)
    double eta_pt = w.dot(Pv) / Pv.squaredNorm();
    double worst = 0.0;
    for (int i = 0; i < p.n(); ++i) {
      if (std::abs(Pv(i)) < comp_floor * Pv.norm()) continue;
      double r = w(i) / Pv(i);
      worst = std::max(worst, std::abs(r - eta_pt) / std::max(std::abs(eta_pt), 1e-300));
    }
    double vec_res = (w - eta_pt * Pv).norm() / std::max(w.norm(), 1e-300);
    rep.record(std::max(worst, vec_res), x);
    eta_accum += eta_pt;
    ++eta_count;
  }
  if (rep.max_residual > tol) {
    rep.pass = false;
    rep.note("component ratios disagree; map is not umbillic at sampled points");
  }
  if (eta_count > 0) {
    out.eta = eta_accum / static_cast<double>(eta_count);
    rep.note("eta = " + std::to_string(*out.eta));
  }
  return out;
}

namespace detail {

inline long exact_rank(Mat<Rat> a) {
  long rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(piv, j));
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      Rat factor = a(i, col) / a(row, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= factor * a(row, j);
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace detail

// True iff the columns of the assembled matrices span R^m (exact rank).
inline bool check_full(const QuadraticMap& p) {
  if (p.trivial_dim() > 0) return false;
  const std::size_t m = static_cast<std::size_t>(p.m());
  Mat<Rat> stack(m, m * static_cast<std::size_t>(p.n()));
  for (int i = 0; i < p.n(); ++i)
    stack.set_block(0, static_cast<std::size_t>(i) * m, p.assembled_exact()[static_cast<std::size_t>(i)]);
  return detail::exact_rank(std::move(stack)) == p.m();
}

// lambda^2(x) = ||grad P_1(x)||^2, after confirming the Gram matrix is scalar
// at x within tolerance.
inline double conformality_factor(const QuadraticMap& p, const Eigen::VectorXd& x,
                                  double tol = 1e-6) {
  Eigen::MatrixXd J = jacobian(p, x);
  Eigen::MatrixXd G = J * J.transpose();
  double mean_diag = G.trace() / p.n();
  double dev = (G - mean_diag * Eigen::MatrixXd::Identity(p.n(), p.n())).cwiseAbs().maxCoeff();
  if (dev > tol * std::max(std::abs(mean_diag), 1.0))
    throw inconsistency_error("gradient Gram matrix is not scalar at this point");
  return G(0, 0);
}

struct DecomposeResult {
  QuadraticMap map;
  Eigen::MatrixXd basis;  // orthogonal; columns ordered by block, kernel last
  VerificationReport report;
};

namespace detail {

inline double float_clifford_residual(const std::vector<Eigen::MatrixXd>& A) {
  const Eigen::Index m = A[0].rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i; j < A.size(); ++j) {
      Eigen::MatrixXd R = A[i] * A[j] + A[j] * A[i];
      if (i == j) R -= 2.0 * Eigen::MatrixXd::Identity(m, m);
      worst = std::max(worst, R.cwiseAbs().maxCoeff());
    }
  return worst;
}

inline Rat rat_from_double(double v) {
  double r = std::round(v);
  if (std::abs(v - r) <= 1e-9 * std::max(1.0, std::abs(v)))
    return Rat(static_cast<long long>(r));
  return Rat(v);
}

}  // namespace detail

// Recovers the weighted block structure of symmetric matrices satisfying
// A_i A_j + A_j A_i = 2 delta_ij A_i^2: eigenspaces of A_1^2 grouped by
// eigenvalue give the blocks, the kernel gives the trivial dimension.
inline DecomposeResult decompose(const std::vector<Eigen::MatrixXd>& A, double tol = 1e-8) {
  if (A.empty()) throw dimension_error("decompose needs at least one matrix");
  const Eigen::Index m = A[0].rows();
  double scale = 0.0;
  for (const auto& a : A) {
    if (a.rows() != m || a.cols() != m) throw shape_error("matrix dimension mismatch");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()))
      throw shape_error("input matrix is not symmetric");
    scale = std::max(scale, a.operatorNorm());
  }
  const double tol_abs = 1e-8 * std::max(1.0, scale * scale);
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j)
      if ((A[i] * A[j] + A[j] * A[i]).cwiseAbs().maxCoeff() > tol_abs)
        throw not_whc_error("anticommutator nonzero for pair (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ")");
  Eigen::MatrixXd sq = A[0] * A[0];
  for (std::size_t i = 1; i < A.size(); ++i)
    if ((A[i] * A[i] - sq).cwiseAbs().maxCoeff() > tol_abs)
      throw inconsistency_error("matrix squares disagree");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sq);
  Eigen::VectorXd mu = eig.eigenvalues();
  Eigen::MatrixXd Q = eig.eigenvectors();
  double mu_max = mu.cwiseAbs().maxCoeff();
  double cluster_tol = tol * std::max(mu_max, 1.0);

  // Cluster eigenvalues, descending; indices below cluster_tol form the kernel.
  std::vector<std::pair<double, std::vector<Eigen::Index>>> clusters;
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index k = m - 1; k >= 0; --k) {
    if (mu(k) < cluster_tol) {
      kernel.push_back(k);
      continue;
    }
    if (!clusters.empty() && std::abs(clusters.back().first - mu(k)) <= cluster_tol)
      clusters.back().second.push_back(k);
    else
      clusters.push_back({mu(k), {k}});
  }

  VerificationReport rep;
  rep.check = "decompose";
  rep.m = m;
  rep.n = static_cast<long long>(A.size());
  rep.tolerance("cluster_rel", tol);
  rep.pass = true;

  std::vector<QuadBlock> blocks;
  std::vector<Eigen::Index> col_order;
  for (auto& [mu_l, idx] : clusters) {
    double lambda = std::sqrt(mu_l);
    Eigen::MatrixXd Ql(m, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) Ql.col(static_cast<Eigen::Index>(c)) = Q.col(idx[c]);
    std::vector<Eigen::MatrixXd> restricted;
    for (const auto& a : A) restricted.push_back(Ql.transpose() * a * Ql / lambda);
    double res = detail::float_clifford_residual(restricted);
    rep.record(res, Eigen::VectorXd::Zero(0));
    if (res > 1e-6) {
      rep.pass = false;
      rep.note("restricted tuple violates the Clifford relations");
    }
    CliffordSystem sys;
    sys.m = static_cast<long>(idx.size());
    sys.n = static_cast<int>(A.size());
    for (const auto& b : restricted) {
      Mat<Rat> e(idx.size(), idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c)
          e(r, c) = detail::rat_from_double(b(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
      sys.matrices.push_back(std::move(e));
    }
    blocks.push_back({Rat(lambda), std::move(sys)});
    for (Eigen::Index c : idx) col_order.push_back(c);
  }
  for (Eigen::Index c : kernel) col_order.push_back(c);

  Eigen::MatrixXd basis(m, m);
  for (std::size_t c = 0; c < col_order.size(); ++c)
    basis.col(static_cast<Eigen::Index>(c)) = Q.col(col_order[c]);

  long m0 = static_cast<long>(kernel.size());
  rep.note("blocks: " + std::to_string(blocks.size()) + ", trivial dimension " + std::to_string(m0));
  return DecomposeResult{QuadraticMap(std::move(blocks), m0), std::move(basis), std::move(rep)};
}

// Serialization: header "m n k m0", then per block a "lambda" line followed by
// the block system in the Clifford text format.
inline std::string to_text(const QuadraticMap& p) {
  std::ostringstream os;
  os << p.m() << " " << p.n() << " " << p.blocks().size() << " " << p.trivial_dim() << "\n";
  for (const auto& b : p.blocks()) {
    os << to_string(b.weight) << "\n";
    os << to_text(b.system);
  }
  return os.str();
}

inline QuadraticMap quadmap_from_text(std::istream& in) {
  long long m = 0, k = 0, m0 = 0;
  int n = 0;
  if (!(in >> m >> n >> k >> m0) || k < 1) throw parse_error("bad quadratic map header");
  std::vector<QuadBlock> blocks;
  for (long long l = 0; l < k; ++l) {
    std::string lam;
    if (!(in >> lam)) throw parse_error("missing block weight");
    CliffordSystem sys = from_text(in);
    blocks.push_back({parse_rational(lam), std::move(sys)});
  }
  QuadraticMap p(std::move(blocks), static_cast<long>(m0));
  if (p.m() != m || p.n() != n) throw parse_error("quadratic map header disagrees with blocks");
  return p;
}

inline QuadraticMap quadmap_from_text(const std::string& s) {
  std::istringstream in(s);
  return quadmap_from_text(in);
}

}  // namespace cliffcone
