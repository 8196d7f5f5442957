// Full verification pass over one member of the quartic cone family: the
// first-order identities, the closed divergence formula, the bracket
// coefficient table, the sign condition, and mean curvature on the zero set.

#include <cliffcone/cliffcone.hpp>

#include <cstdio>

using namespace cliffcone;

int main() {
  const long m = 32;
  const int n = 4;
  ConeC4 C = make_cone_c4(m, n);
  std::printf("cone in dimension %ld, index %d\n\n", m, n);

  VerificationReport ident = claim_identities_sampled(C, 50, 1, 1e-9);
  std::printf("%s\n", ident.text().c_str());

  // Closed divergence formula against the jet differentiation path.
  Rng rng(2);
  double worst = 0.0;
  for (int k = 0; k < 25; ++k) {
    Eigen::VectorXd x = rng.gaussian_vector(m);
    if (C.normP2.value(x) <= 1e-12) continue;
    double closed = divergence_closed_form(C, x);
    double direct = divergence_normalized_gradient(C.f, x);
    double rel = std::abs(closed - direct) / std::max(std::abs(closed), 1e-300);
    if (rel > worst) worst = rel;
  }
  std::printf("closed vs direct divergence, worst relative gap: %.3e\n\n", worst);

  CoefficientSigns signs = coefficient_signs(m, n);
  std::printf("bracket coefficients:");
  for (double v : signs.values) std::printf(" %g", v);
  std::printf("\nall positive: %s\n\n", signs.all_positive ? "yes" : "no");

  VerificationReport sign = subcalibration_check(C, 0.1, 200, 3, 1e-9);
  std::printf("%s\n", sign.text().c_str());

  VerificationReport mini = minimality_check(C, 100, 4);
  std::printf("%s\n", mini.text().c_str());
  return 0;
}
