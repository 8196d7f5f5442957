#include <cliffcone/cliffcone.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

using namespace cliffcone;

TEST_CASE("spectrum of direction combinations splits evenly") {
  QuadraticMap P = standard_map(16, 4);
  Rng rng(6);
  for (int s = 0; s < 5; ++s) {
    Eigen::VectorXd w = rng.unit_vector(4);
    VerificationReport rep = codim1_spectrum_check(P, w);
    CHECK(rep.pass);
    CHECK(rep.max_residual <= 1e-10);
  }

  SECTION("guards") {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(4);
    w(0) = 2.0;
    CHECK_THROWS_AS(codim1_spectrum_check(P, w), shape_error);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
    v(0) = 1.0;
    CHECK_THROWS_AS(codim1_spectrum_check(P, v), dimension_error);
  }
}

TEST_CASE("pullback cones through the quadratic map are minimal") {
  QuadraticMap P = standard_map(16, 4);

  SECTION("codimension one") {
    Eigen::MatrixXd wperp = Eigen::MatrixXd::Zero(4, 1);
    wperp(0, 0) = 1.0;
    PullbackCone pc = make_pullback_cone(P, wperp);
    VerificationReport rep = pullback_minimality(pc, 15, 12);
    CHECK(rep.pass);
    CHECK(rep.max_residual <= 1e-8);
  }

  SECTION("codimension two") {
    Eigen::MatrixXd wperp = Eigen::MatrixXd::Zero(4, 2);
    wperp(0, 0) = 1.0;
    wperp(1, 1) = 1.0;
    PullbackCone pc = make_pullback_cone(P, wperp);
    VerificationReport rep = pullback_minimality(pc, 15, 12);
    CHECK(rep.pass);
  }

  SECTION("complement basis must be orthonormal") {
    Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(4, 2);
    CHECK_THROWS_AS(make_pullback_cone(P, bad), shape_error);
  }
}

TEST_CASE("division algebra cones advertise their shape") {
  DivisionAlgebraCone c8 = division_cone_8_2();
  CHECK(c8.m == 8);
  CHECK(c8.n == 2);
  CHECK(c8.membership.homogeneous(4));
  DivisionAlgebraCone c16 = division_cone_16_4();
  CHECK(c16.m == 16);
  CHECK(c16.n == 4);
  DivisionAlgebraCone c32 = division_cone_32_4();
  CHECK(c32.m == 32);
  CHECK(c32.n == 4);
  CHECK(static_cast<int>(c32.lhs_forms.size()) == 4);
  CHECK(static_cast<int>(c32.rhs_forms.size()) == 4);
}

TEST_CASE("extraction recovers exact Clifford systems from the printed quadrics") {
  for (const DivisionAlgebraCone& D :
       {division_cone_8_2(), division_cone_16_4(), division_cone_32_4()}) {
    ExtractionResult R = extract_clifford_from_quadrics(D);
    INFO("m = " << D.m);
    CHECK(R.report.pass);
    CHECK(R.form_scale == Rat(1) / 4);
    CHECK(R.system.m == D.m);
    CHECK(R.system.n == 2 * D.n);
    CHECK(validate(R.system).pass);
  }
}

TEST_CASE("extracted systems generate the same membership field numerically") {
  DivisionAlgebraCone D = division_cone_8_2();
  ExtractionResult R = extract_clifford_from_quadrics(D);
  REQUIRE(R.report.pass);
  ConeC4 C = make_cone_c4(R.system);
  Rng rng(14);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd x = rng.gaussian_vector(8);
    double lhs = 0.0, rhs = 0.0;
    for (const Poly& q : D.lhs_forms) {
      Mat<Rat> M = symmetric_matrix_of(q, 8);
      double v = x.dot(to_eigen(M) * x);
      lhs += v * v;
    }
    for (const Poly& q : D.rhs_forms) {
      Mat<Rat> M = symmetric_matrix_of(q, 8);
      double v = x.dot(to_eigen(M) * x);
      rhs += v * v;
    }
    double membership = lhs - rhs;
    CHECK(std::abs(4.0 * membership - C.sP.value(x)) <=
          1e-10 * std::max(1.0, std::abs(C.sP.value(x))));
  }
}

TEST_CASE("quaternion arithmetic satisfies the algebra laws") {
  using detail::AlgElem;
  const AlgebraTag H = AlgebraTag::quaternions;
  AlgElem a = detail::coordinate_slot(H, 0);
  AlgElem b = detail::coordinate_slot(H, 1);
  // conj(ab) = conj(b) conj(a)
  AlgElem prod = detail::alg_mul(H, a, b);
  AlgElem lhs = detail::alg_conj(prod);
  AlgElem rhs = detail::alg_mul(H, detail::alg_conj(b), detail::alg_conj(a));
  for (int k = 0; k < 4; ++k) CHECK(lhs[static_cast<std::size_t>(k)] == rhs[static_cast<std::size_t>(k)]);
  // a conj(a) is the squared norm in the real component
  AlgElem nrm = detail::alg_mul(H, a, detail::alg_conj(a));
  for (int k = 1; k < 4; ++k) CHECK(nrm[static_cast<std::size_t>(k)] == Poly{});
  Poly expect;
  for (int k = 0; k < 4; ++k) expect += Poly::variable(k) * Poly::variable(k);
  CHECK(nrm[0] == expect);
}

TEST_CASE("simons cone apex and regular points") {
  LevelSet cone = simons_cone(4);
  Rng rng(9);
  Eigen::VectorXd u = rng.gaussian_vector(4), v = rng.unit_vector(4);
  Eigen::VectorXd x(8);
  x << u, u.norm() * v;
  CHECK(mean_curvature(cone, x).norm() < 1e-10);
  CHECK_THROWS_AS(simons_cone(0), dimension_error);
}
