#include <cliffcone/cliffcone.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace cliffcone;

namespace {

SmoothField sample_field(int m) {
  // (||x||^2)^{3/4} * <x, Ax> + linear part, exercising power/product/sum rules
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) A(i, i) = (i % 2 == 0) ? 1.0 : -2.0;
  A(0, m - 1) = A(m - 1, 0) = 0.5;
  Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(m, -1.0, 1.0);
  return FieldAlgebra::power(FieldAlgebra::squared_norm(), 0.75) *
             FieldAlgebra::quadratic_form(A) +
         FieldAlgebra::linear(w, 0.25);
}

}  // namespace

TEST_CASE("jets agree with the finite difference oracle") {
  const int m = 6;
  SmoothField f = sample_field(m);
  Rng rng(5);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd x = rng.gaussian_vector(m);
    if (x.norm() < 0.3) continue;
    Jet2 j = f.jet(x);
    auto [g, H] = finite_difference_oracle(f, x);
    CHECK((j.g - g).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, g.cwiseAbs().maxCoeff()));
    CHECK((j.H - H).cwiseAbs().maxCoeff() < 1e-5 * std::max(1.0, H.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("sphere mean curvature points inward with norm m minus one") {
  const int m = 5;
  LevelSet sphere = make_level_set(FieldAlgebra::squared_norm(), 1.0);
  Rng rng(8);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd x = rng.unit_vector(m);
    Eigen::VectorXd H = mean_curvature(sphere, x);
    CHECK((H + static_cast<double>(m - 1) * x).norm() < 1e-9);
  }
}

TEST_CASE("cylinder mean curvature comes from the circular directions only") {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
  D(0, 0) = D(1, 1) = 1.0;
  LevelSet cyl = make_level_set(FieldAlgebra::quadratic_form(D), 1.0);
  Eigen::VectorXd x(3);
  x << std::sqrt(0.5), std::sqrt(0.5), 2.0;
  Eigen::VectorXd H = mean_curvature(cyl, x);
  Eigen::VectorXd expect(3);
  expect << -x(0), -x(1), 0.0;
  CHECK((H - expect).norm() < 1e-9);
}

TEST_CASE("simons cone has vanishing mean curvature") {
  LevelSet cone = simons_cone(3);
  Rng rng(21);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd u = rng.gaussian_vector(3), v = rng.unit_vector(3);
    Eigen::VectorXd x(6);
    x << u, u.norm() * v;
    CHECK(mean_curvature(cone, x).norm() < 1e-9 / x.norm());
  }
}

TEST_CASE("mean curvature guards its domain") {
  LevelSet sphere = make_level_set(FieldAlgebra::squared_norm(), 1.0);
  Eigen::VectorXd far(3);
  far << 2.0, 0.0, 0.0;
  CHECK_THROWS_AS(mean_curvature(sphere, far), off_manifold_error);
  LevelSet cone = simons_cone(2);
  Eigen::VectorXd apex = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS(mean_curvature(cone, apex), singular_point_error);
}

TEST_CASE("normalized gradient divergence matches the component path") {
  const int m = 4;
  SmoothField f = sample_field(m);
  std::vector<SmoothField> V = normalized_gradient(f, m);
  REQUIRE(static_cast<int>(V.size()) == m);
  Rng rng(13);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd x = rng.gaussian_vector(m);
    if (x.norm() < 0.5 || f.gradient(x).norm() < 1e-6) continue;
    double via_components = divergence(V, x);
    double closed = divergence_normalized_gradient(f, x);
    CHECK(std::abs(via_components - closed) < 1e-10 * std::max(1.0, std::abs(closed)));
    // unit length of the assembled field
    double norm2 = 0.0;
    for (const auto& vi : V) norm2 += vi.value(x) * vi.value(x);
    CHECK(std::abs(norm2 - 1.0) < 1e-12);
  }
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(m);
  CHECK_THROWS_AS(divergence_normalized_gradient(FieldAlgebra::squared_norm(), origin),
                  vanishing_gradient_error);
}

TEST_CASE("tension field vanishes for harmonic tuples and p equals two reduces") {
  QuadraticMap P = standard_map(8, 2);
  std::vector<SmoothField> phi;
  for (const auto& a : P.assembled()) phi.push_back(FieldAlgebra::quadratic_form(a));
  Rng rng(2);
  Eigen::VectorXd x = rng.gaussian_vector(8);
  CHECK(tension_field(phi, x).norm() < 1e-12);
  CHECK((p_tension_field(phi, 2.0, x) - tension_field(phi, x)).norm() < 1e-12);

  SECTION("vanishing differential is rejected") {
    Eigen::VectorXd origin = Eigen::VectorXd::Zero(8);
    CHECK_THROWS_AS(p_tension_field(phi, 4.0, origin), vanishing_differential_error);
  }
}

TEST_CASE("level sets validate their shape") {
  CHECK_THROWS_AS(LevelSet({}, {}), shape_error);
  CHECK_THROWS_AS(LevelSet({FieldAlgebra::squared_norm()}, {1.0, 2.0}), shape_error);
}
