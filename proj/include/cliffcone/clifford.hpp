#pragma once

// Clifford systems: tuples of symmetric matrices A_1..A_n with
// A_i A_j + A_j A_i = 2 delta_ij I, held in exact rational arithmetic.
// Constructed systems have all entries in {-1, 0, +1}.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cliffcone/errors.hpp"
#include "cliffcone/matrix.hpp"
#include "cliffcone/rational.hpp"

namespace cliffcone {

struct CliffordSystem {
  long m = 0;  // ambient dimension
  int n = 0;   // number of matrices
  std::vector<Mat<Rat>> matrices;
};

// Smallest ambient dimension carrying a system of n matrices. Base values for
// n = 1..8 are 1, 2, 4, 8, 8, 16, 16, 16; each step of 8 multiplies by 16.
inline long long min_dimension(int n) {
  if (n < 1) throw dimension_error("min_dimension requires n >= 1");
  static const long long base[8] = {1, 2, 4, 8, 8, 16, 16, 16};
  long long m = base[(n - 1) % 8];
  for (int k = (n - 1) / 8; k > 0; --k) {
    if (m > (1LL << 58)) throw std::overflow_error("min_dimension overflows 64 bits");
    m *= 16;
  }
  return m;
}

enum class Variant { standard, twin };

namespace detail {

inline Mat<Rat> mat2(int a, int b, int c, int d) {
  Mat<Rat> m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

// Left and right quaternion multiplication on R^4 in the basis (1, i, j, k).
inline Mat<Rat> quat_left(int a, int b, int c, int d) {
  Mat<Rat> m(4, 4);
  int rows[4][4] = {{a, -b, -c, -d}, {b, a, -d, c}, {c, d, a, -b}, {d, -c, b, a}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j];
  return m;
}

inline Mat<Rat> quat_right(int a, int b, int c, int d) {
  Mat<Rat> m(4, 4);
  int rows[4][4] = {{a, -b, -c, -d}, {b, a, d, -c}, {c, -d, a, b}, {d, c, -b, a}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rows[i][j];
  return m;
}

// k anticommuting skew signed-permutation matrices squaring to -I, on the
// smallest dimension d(k) with d(0..7) = 1, 2, 4, 4, 8, 8, 8, 8 and
// d(k+8) = 16 d(k). Standard period-8 doubling.
inline std::pair<std::vector<Mat<Rat>>, long> skew_generators(int k) {
  const Mat<Rat> J = mat2(0, -1, 1, 0);
  const Mat<Rat> K = mat2(1, 0, 0, -1);
  const Mat<Rat> L = mat2(0, 1, 1, 0);
  const Mat<Rat> I2 = Mat<Rat>::identity(2);
  if (k < 0) throw dimension_error("negative generator count");
  if (k == 0) return {{}, 1};
  if (k == 1) return {{J}, 2};
  if (k == 2) return {{kron(J, K), kron(J, L)}, 4};
  if (k == 3) return {{kron(J, K), kron(J, L), kron(I2, J)}, 4};
  if (k <= 7) {
    const Mat<Rat> Li = quat_left(0, 1, 0, 0), Lj = quat_left(0, 0, 1, 0), Lk = quat_left(0, 0, 0, 1);
    const Mat<Rat> Ri = quat_right(0, 1, 0, 0), Rj = quat_right(0, 0, 1, 0), Rk = quat_right(0, 0, 0, 1);
    const Mat<Rat> I4 = Mat<Rat>::identity(4);
    std::vector<Mat<Rat>> all = {kron(K, Li), kron(K, Lj), kron(K, Lk), kron(J, I4),
                                 kron(L, Ri), kron(L, Rj), kron(L, Rk)};
    all.resize(static_cast<std::size_t>(k));
    return {std::move(all), 8};
  }
  if (k == 8) {
    auto [g7, d7] = skew_generators(7);
    std::vector<Mat<Rat>> out;
    for (const auto& f : g7) out.push_back(kron(K, f));
    out.push_back(kron(J, Mat<Rat>::identity(static_cast<std::size_t>(d7))));
    return {std::move(out), 2 * d7};
  }
  auto [g8, d8] = skew_generators(8);
  Mat<Rat> omega = Mat<Rat>::identity(static_cast<std::size_t>(d8));
  for (const auto& g : g8) omega = omega * g;
  auto [gk, dk] = skew_generators(k - 8);
  const Mat<Rat> Il = Mat<Rat>::identity(static_cast<std::size_t>(dk));
  std::vector<Mat<Rat>> out;
  for (const auto& g : g8) out.push_back(kron(g, Il));
  for (const auto& e : gk) out.push_back(kron(omega, e));
  return {std::move(out), d8 * dk};
}

}  // namespace detail

// Irreducible system on R^{min_dimension(n)}: A_1 = diag(I, -I),
// A_2 = antidiag(I, I), A_{2+i} = antidiag(E_i, -E_i) for skew generators E_i.
// The twin variant (second equivalence class, n = 1 mod 4) negates the last
// matrix.
inline CliffordSystem build_irreducible(int n, Variant variant = Variant::standard) {
  if (n < 1) throw dimension_error("build_irreducible requires n >= 1");
  if (variant == Variant::twin && n % 4 != 1)
    throw invalid_variant_error("twin variant exists only for n = 1 mod 4");
  CliffordSystem sys;
  sys.n = n;
  if (n == 1) {
    Mat<Rat> a(1, 1);
    a(0, 0) = variant == Variant::twin ? -1 : 1;
    sys.m = 1;
    sys.matrices.push_back(std::move(a));
    return sys;
  }
  auto [gens, half] = detail::skew_generators(n - 2);
  const std::size_t h = static_cast<std::size_t>(half);
  sys.m = 2 * half;
  const Mat<Rat> I = Mat<Rat>::identity(h);
  Mat<Rat> a1(2 * h, 2 * h), a2(2 * h, 2 * h);
  a1.set_block(0, 0, I);
  a1.set_block(h, h, -I);
  a2.set_block(0, h, I);
  a2.set_block(h, 0, I);
  sys.matrices.push_back(std::move(a1));
  sys.matrices.push_back(std::move(a2));
  for (const auto& e : gens) {
    Mat<Rat> a(2 * h, 2 * h);
    a.set_block(0, h, e);
    a.set_block(h, 0, -e);
    sys.matrices.push_back(std::move(a));
  }
  if (variant == Variant::twin) sys.matrices.back() = -sys.matrices.back();
  return sys;
}

inline CliffordSystem direct_sum(const CliffordSystem& sys, int k) {
  if (k < 1) throw dimension_error("direct_sum requires k >= 1");
  CliffordSystem out;
  out.m = sys.m * k;
  out.n = sys.n;
  const std::size_t m = static_cast<std::size_t>(sys.m);
  for (const auto& a : sys.matrices) {
    Mat<Rat> b(m * k, m * k);
    for (int t = 0; t < k; ++t) b.set_block(t * m, t * m, a);
    out.matrices.push_back(std::move(b));
  }
  return out;
}

struct PairResidual {
  int i = 0, j = 0;
  Rat max_abs_entry;  // of A_i A_j + A_j A_i - 2 delta_ij I
  bool zero = false;
};

struct ExactValidation {
  bool pass = false;
  std::vector<PairResidual> pairs;            // all i <= j
  std::vector<int> asymmetric;                // indices of non-symmetric matrices
  std::optional<Mat<Rat>> first_failure;      // residual of the first failing pair
  int fail_i = -1, fail_j = -1;
};

// Exact check of the defining relations; no tolerances anywhere.
inline ExactValidation validate(const CliffordSystem& sys) {
  ExactValidation out;
  const std::size_t m = static_cast<std::size_t>(sys.m);
  for (const auto& a : sys.matrices)
    if (a.rows() != m || a.cols() != m) throw shape_error("matrix dimension mismatch");
  for (int i = 0; i < sys.n; ++i)
    if (!sys.matrices[static_cast<std::size_t>(i)].is_symmetric()) out.asymmetric.push_back(i);
  const Mat<Rat> twoI = Mat<Rat>::identity(m) * Rat(2);
  out.pass = out.asymmetric.empty();
  for (int i = 0; i < sys.n; ++i)
    for (int j = i; j < sys.n; ++j) {
      const auto& A = sys.matrices[static_cast<std::size_t>(i)];
      const auto& B = sys.matrices[static_cast<std::size_t>(j)];
      Mat<Rat> r = A * B + B * A;
      if (i == j) r = r - twoI;
      PairResidual pr;
      pr.i = i;
      pr.j = j;
      pr.zero = r.is_zero();
      pr.max_abs_entry = r.max_abs();
      if (!pr.zero && !out.first_failure) {
        out.first_failure = r;
        out.fail_i = i;
        out.fail_j = j;
        out.pass = false;
      }
      if (!pr.zero) out.pass = false;
      out.pairs.push_back(std::move(pr));
    }
  return out;
}

inline std::string failure_summary(const ExactValidation& v) {
  if (v.pass) return "all relations hold exactly";
  std::ostringstream os;
  if (!v.asymmetric.empty()) {
    os << "non-symmetric matrices:";
    for (int i : v.asymmetric) os << " " << (i + 1);
    os << "; ";
  }
  if (v.first_failure)
    os << "pair (" << (v.fail_i + 1) << "," << (v.fail_j + 1)
       << ") residual max entry " << to_string(v.first_failure->max_abs());
  return os.str();
}

// Plain text format: first line "m n", then n blocks of m rows of
// space-separated entries (integers for constructed systems).
inline std::string to_text(const CliffordSystem& sys) {
  std::ostringstream os;
  os << sys.m << " " << sys.n << "\n";
  for (const auto& a : sys.matrices) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (j) os << " ";
        os << to_string(a(i, j));
      }
      os << "\n";
    }
  }
  return os.str();
}

inline CliffordSystem from_text(std::istream& in) {
  CliffordSystem sys;
  long long m = 0;
  int n = 0;
  if (!(in >> m >> n) || m < 1 || n < 1) throw parse_error("bad system header");
  sys.m = static_cast<long>(m);
  sys.n = n;
  for (int k = 0; k < n; ++k) {
    Mat<Rat> a(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i)
      for (long long j = 0; j < m; ++j) {
        std::string tok;
        if (!(in >> tok)) throw parse_error("truncated matrix data");
        a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = parse_rational(tok);
      }
    sys.matrices.push_back(std::move(a));
  }
  return sys;
}

inline CliffordSystem from_text(const std::string& s) {
  std::istringstream in(s);
  return from_text(in);
}

}  // namespace cliffcone
