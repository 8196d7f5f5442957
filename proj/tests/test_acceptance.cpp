// End-to-end acceptance runs at full sample counts. Each case prints one
// machine-readable verdict line so the suite log shows the eleven criteria at
// a glance.

#include <cliffcone/cliffcone.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace cliffcone;

namespace {

void verdict(int k, bool ok) {
  std::printf("ACCEPTANCE %d %s\n", k, ok ? "PASS" : "FAIL");
  std::fflush(stdout);
}

const std::vector<std::pair<long, int>>& cone_set() {
  static const std::vector<std::pair<long, int>> s{{8, 2}, {16, 4}, {32, 4}, {64, 5}};
  return s;
}

}  // namespace

TEST_CASE("acceptance 1: irreducible construction hits the dimension table exactly") {
  const long long expected[] = {1, 2, 4, 8, 8, 16, 16, 16, 16, 32};
  bool ok = true;
  for (int n = 1; n <= 10; ++n) {
    CliffordSystem sys = build_irreducible(n);
    ok = ok && sys.m == expected[n - 1] && validate(sys).pass;
  }
  verdict(1, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 2: conformality and harmonicity of every constructed map") {
  bool ok = true;
  for (int n = 2; n <= 10; ++n) {
    QuadraticMap p = single_block_map(build_irreducible(n));
    VerificationReport whc = check_whc(p, 100, 1, 1e-9);
    ok = ok && whc.pass && check_harmonic(p).pass;
    if (n % 4 == 1) {
      QuadraticMap t = single_block_map(build_irreducible(n, Variant::twin));
      ok = ok && check_whc(t, 100, 1, 1e-9).pass && check_harmonic(t).pass;
    }
  }
  verdict(2, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 3: proportionality constant sixteen n, mixed weights fail") {
  bool ok = true;
  for (int n : {2, 3, 4, 5}) {
    UmbillicResult r = check_umbillic(single_block_map(build_irreducible(n)), 100, 1);
    ok = ok && r.report.pass && r.eta.has_value() &&
         std::abs(*r.eta - 16.0 * n) <= 1e-9 * 16.0 * n;
  }
  std::vector<QuadBlock> blocks;
  blocks.push_back({Rat(1), build_irreducible(2)});
  blocks.push_back({Rat(2), build_irreducible(2)});
  ok = ok && !check_umbillic(QuadraticMap(std::move(blocks), 0), 100, 1).report.pass;
  verdict(3, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 4: the nine identities at one hundred points per cone") {
  bool ok = true;
  for (auto [m, n] : cone_set())
    ok = ok && claim_identities_sampled(make_cone_c4(m, n), 100, 1, 1e-9).pass;
  verdict(4, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 5: closed-form divergence against the direct computation") {
  bool ok = true;
  for (auto [m, n] : cone_set()) {
    ConeC4 C = make_cone_c4(m, n);
    long tested = 0;
    for (std::uint64_t k = 0; tested < 100; ++k) {
      Rng rng(derive_seed(2, k));
      Eigen::VectorXd x = rng.gaussian_vector(m);
      if (C.normP2.value(x) <= 1e-12) continue;
      double closed = divergence_closed_form(C, x);
      double direct = divergence_normalized_gradient(C.f, x);
      double rel = std::abs(closed - direct) /
                   std::max({std::abs(closed), std::abs(direct), 1e-300});
      ok = ok && rel <= 1e-6;
      ++tested;
    }
  }
  verdict(5, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 6: bracket coefficient table") {
  CoefficientSigns big = coefficient_signs(32, 4);
  bool ok = big.all_positive && big.values[0] == 1.0 && big.values[1] == 103.125 &&
            big.values[2] == 23.0 && big.values[3] == 185.4375 && big.values[4] == 138.0;
  CoefficientSigns small = coefficient_signs(8, 2);
  ok = ok && small.values[0] == -23.0 && small.values[2] == -25.0 && !small.all_positive;
  CoefficientSigns mid = coefficient_signs(16, 4);
  ok = ok && mid.values[2] == -9.0 && !mid.all_positive;
  verdict(6, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 7: sign condition on ten thousand sphere points per side") {
  ConeC4 C = make_cone_c4(32, 4);
  VerificationReport rep = subcalibration_check(C, 0.1, 10000, 1, 1e-9);
  bool informational = false;
  for (const auto& s : rep.notes)
    if (s.find("informational") != std::string::npos) informational = true;
  bool ok = rep.pass && !informational && rep.max_residual <= 1e-9;
  verdict(7, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 8: minimality of the cone family, classical cone, and pullback") {
  bool ok = true;
  for (auto [m, n] : cone_set()) ok = ok && minimality_check(make_cone_c4(m, n), 1000, 1).pass;

  LevelSet classical = simons_cone(4);
  for (std::uint64_t s = 0; s < 1000 && ok; ++s) {
    Rng rng(derive_seed(3, s));
    Eigen::VectorXd u = rng.gaussian_vector(4), v = rng.unit_vector(4);
    if (u.norm() < 1e-3) continue;
    Eigen::VectorXd x(8);
    x << u, u.norm() * v;
    ok = ok && mean_curvature(classical, x).norm() * x.norm() <= 1e-8;
  }

  Eigen::MatrixXd wperp = Eigen::MatrixXd::Zero(4, 2);
  wperp(0, 0) = 1.0;
  wperp(1, 1) = 1.0;
  ok = ok && pullback_minimality(make_pullback_cone(standard_map(16, 4), wperp), 1000, 1).pass;

  LevelSet sphere = make_level_set(FieldAlgebra::squared_norm(), 1.0);
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(derive_seed(4, s));
    Eigen::VectorXd x = rng.unit_vector(8);
    ok = ok && std::abs(mean_curvature(sphere, x).norm() - 7.0) <= 1e-9;
  }
  verdict(8, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 9: extraction from the two-sided quadric presentations") {
  bool ok = true;
  for (const DivisionAlgebraCone& D :
       {division_cone_8_2(), division_cone_16_4(), division_cone_32_4()}) {
    ExtractionResult R = extract_clifford_from_quadrics(D);
    ok = ok && R.report.pass && validate(R.system).pass && R.form_scale == Rat(1) / 4;
  }
  verdict(9, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 10: spectrum of twenty random direction combinations") {
  QuadraticMap P = standard_map(16, 4);
  bool ok = true;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(derive_seed(5, s));
    VerificationReport rep = codim1_spectrum_check(P, rng.unit_vector(4), 1e-10);
    ok = ok && rep.pass;
  }
  verdict(10, ok);
  REQUIRE(ok);
}

TEST_CASE("acceptance 11: byte-identical reports for repeated seeded runs") {
  const char* cli = std::getenv("CLIFFCONE_CLI_PATH");
  bool ok = cli != nullptr;
  if (ok) {
    std::filesystem::path dir = std::filesystem::temp_directory_path() /
                                ("cliffcone_accept_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto slurp = [](const std::filesystem::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream os;
      os << in.rdbuf();
      return os.str();
    };
    const std::vector<std::string> jobs = {
        "subcalib identities --m 8 --n 2 --samples 50 --seed 99",
        "cone minimality --m 8 --n 2 --samples 20 --seed 99",
        "hm check --m 16 --n 4 --samples 30 --seed 99",
    };
    for (std::size_t j = 0; j < jobs.size() && ok; ++j) {
      std::filesystem::path a = dir / ("a" + std::to_string(j) + ".json");
      std::filesystem::path b = dir / ("b" + std::to_string(j) + ".json");
      std::string base = std::string(cli) + " " + jobs[j] + " --format json --out ";
      int ra = std::system((base + a.string() + " > /dev/null 2>&1").c_str());
      int rb = std::system((base + b.string() + " > /dev/null 2>&1").c_str());
      ok = ok && WIFEXITED(ra) && WEXITSTATUS(ra) == 0 && WIFEXITED(rb) &&
           WEXITSTATUS(rb) == 0;
      std::string bytes = slurp(a);
      ok = ok && !bytes.empty() && bytes == slurp(b);
    }
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  verdict(11, ok);
  REQUIRE(ok);
}
