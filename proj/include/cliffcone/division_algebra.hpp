#pragma once

// Cones presented over the complex numbers or quaternions: membership field
// ||sum_i z_i u_i||^2 - ||sum_i conj(z_{2i}) z_{2i-1} - u_{2i} conj(u_{2i-1})||^2
// expanded exactly over real coordinates, and the extraction of the
// underlying Clifford system from the quadratic forms inside the squares.

#include <string>
#include <utility>
#include <vector>

#include "cliffcone/clifford.hpp"
#include "cliffcone/errors.hpp"
#include "cliffcone/poly.hpp"
#include "cliffcone/rational.hpp"
#include "cliffcone/report.hpp"

namespace cliffcone {

enum class AlgebraTag { complex_numbers, quaternions };

inline int algebra_dim(AlgebraTag tag) { return tag == AlgebraTag::complex_numbers ? 2 : 4; }

inline std::string algebra_name(AlgebraTag tag) {
  return tag == AlgebraTag::complex_numbers ? "complex" : "quaternion";
}

namespace detail {

using AlgElem = std::vector<Poly>;  // one polynomial per real component

inline AlgElem alg_mul(AlgebraTag tag, const AlgElem& a, const AlgElem& b) {
  if (tag == AlgebraTag::complex_numbers)
    return {a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]};
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline AlgElem alg_conj(const AlgElem& a) {
  AlgElem out = a;
  for (std::size_t k = 1; k < out.size(); ++k) out[k] = -out[k];
  return out;
}

inline AlgElem alg_add(const AlgElem& a, const AlgElem& b) {
  AlgElem out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k];
  return out;
}

inline AlgElem alg_sub(const AlgElem& a, const AlgElem& b) {
  AlgElem out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b[k];
  return out;
}

inline AlgElem coordinate_slot(AlgebraTag tag, int slot) {
  AlgElem out;
  const int d = algebra_dim(tag);
  for (int k = 0; k < d; ++k) out.push_back(Poly::variable(slot * d + k));
  return out;
}

}  // namespace detail

struct DivisionAlgebraCone {
  AlgebraTag tag = AlgebraTag::complex_numbers;
  int slots = 0;  // number of z slots (= number of u slots), even
  long m = 0;     // ambient real dimension
  int n = 0;      // forms per side of the membership field (= algebra dim)
  std::vector<Poly> lhs_forms;
  std::vector<Poly> rhs_forms;
  Poly membership;
};

inline DivisionAlgebraCone make_division_algebra_cone(AlgebraTag tag, int slots) {
  if (slots < 2 || slots % 2 != 0) throw dimension_error("slot count must be even and at least two");
  DivisionAlgebraCone D;
  D.tag = tag;
  D.slots = slots;
  const int d = algebra_dim(tag);
  D.m = static_cast<long>(2 * slots * d);
  D.n = d;
  std::vector<detail::AlgElem> z, u;
  for (int s = 0; s < slots; ++s) z.push_back(detail::coordinate_slot(tag, s));
  for (int s = 0; s < slots; ++s) u.push_back(detail::coordinate_slot(tag, slots + s));
  detail::AlgElem lhs = detail::alg_mul(tag, z[0], u[0]);
  for (int s = 1; s < slots; ++s) lhs = detail::alg_add(lhs, detail::alg_mul(tag, z[static_cast<std::size_t>(s)], u[static_cast<std::size_t>(s)]));
  detail::AlgElem rhs;
  for (int p = 0; p < slots / 2; ++p) {
    detail::AlgElem term = detail::alg_sub(
        detail::alg_mul(tag, detail::alg_conj(z[static_cast<std::size_t>(2 * p + 1)]), z[static_cast<std::size_t>(2 * p)]),
        detail::alg_mul(tag, u[static_cast<std::size_t>(2 * p + 1)], detail::alg_conj(u[static_cast<std::size_t>(2 * p)])));
    rhs = (p == 0) ? term : detail::alg_add(rhs, term);
  }
  D.lhs_forms = lhs;
  D.rhs_forms = rhs;
  for (const auto& q : D.lhs_forms) D.membership += q * q;
  for (const auto& q : D.rhs_forms) D.membership -= q * q;
  return D;
}

inline DivisionAlgebraCone division_cone_8_2() {
  return make_division_algebra_cone(AlgebraTag::complex_numbers, 2);
}
inline DivisionAlgebraCone division_cone_16_4() {
  return make_division_algebra_cone(AlgebraTag::quaternions, 2);
}
inline DivisionAlgebraCone division_cone_32_4() {
  return make_division_algebra_cone(AlgebraTag::quaternions, 4);
}

struct ExtractionResult {
  CliffordSystem system;
  Rat form_scale;  // sigma with B_i^2 = sigma I for the raw form matrices
  VerificationReport report;
};

// Reads off the symmetric matrix of each quadratic form inside the squares,
// detects the common scalar square B_i^2 = sigma I, rescales to a Clifford
// system, validates it exactly, and confirms the membership field equals
// sigma times the cone field of the extracted system, coefficient by
// coefficient.
inline ExtractionResult extract_clifford_from_quadrics(const DivisionAlgebraCone& D) {
  ExtractionResult out;
  VerificationReport& rep = out.report;
  rep.check = "extract_clifford_from_quadrics";
  rep.m = D.m;
  rep.n = D.n;
  rep.pass = true;
  std::vector<Poly> all = D.lhs_forms;
  all.insert(all.end(), D.rhs_forms.begin(), D.rhs_forms.end());
  std::vector<Mat<Rat>> raw;
  for (const auto& q : all) raw.push_back(symmetric_matrix_of(q, static_cast<std::size_t>(D.m)));

  Mat<Rat> sq = raw[0] * raw[0];
  Rat sigma = sq(0, 0);
  auto is_sigma_identity = [&](const Mat<Rat>& s) {
    for (std::size_t r = 0; r < s.rows(); ++r)
      for (std::size_t c = 0; c < s.cols(); ++c)
        if (s(r, c) != (r == c ? sigma : Rat(0))) return false;
    return true;
  };
  for (const auto& B : raw)
    if (!is_sigma_identity(B * B)) {
      rep.pass = false;
      rep.note("form matrices do not square to a common multiple of the identity");
    }
  auto root = exact_sqrt(sigma);
  if (!root || *root == 0) {
    rep.pass = false;
    rep.note("scalar square " + to_string(sigma) + " has no exact square root");
    out.form_scale = sigma;
    return out;
  }
  out.form_scale = sigma;
  rep.note("form scale sigma = " + to_string(sigma));

  CliffordSystem sys;
  sys.m = D.m;
  sys.n = 2 * D.n;
  for (const auto& B : raw) sys.matrices.push_back(B * (Rat(1) / *root));
  ExactValidation val = validate(sys);
  if (!val.pass) {
    rep.pass = false;
    rep.note("rescaled matrices fail the exact Clifford relations: " + failure_summary(val));
  }

  // Membership field == sigma * (sum_{i<=n} <x,A_i x>^2 - sum <x,A_{n+i} x>^2).
  Poly cone_field;
  for (int i = 0; i < 2 * D.n; ++i) {
    Poly qi = Poly::quadratic_form(sys.matrices[static_cast<std::size_t>(i)]);
    if (i < D.n)
      cone_field += qi * qi;
    else
      cone_field -= qi * qi;
  }
  if (D.membership != sigma * cone_field) {
    rep.pass = false;
    rep.note("membership field differs from the cone field of the extracted system");
  } else {
    rep.note("membership field matches the cone field exactly");
  }
  out.system = std::move(sys);
  return out;
}

}  // namespace cliffcone
