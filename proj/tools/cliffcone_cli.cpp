// Batch driver: every verification in the library exposed as a subcommand
// with deterministic seeding and text/json reports.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cliffcone/cliffcone.hpp"

namespace cc = cliffcone;

namespace {

struct Output {
  std::string format = "text";
  std::string out_path;
  std::string csv_path;
};

void write_payload(const std::string& payload, const Output& o) {
  if (o.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(o.out_path);
    if (!f) throw cc::error("cannot open output path " + o.out_path);
    f << payload;
  }
}

void emit(const std::vector<cc::VerificationReport>& reps, const Output& o) {
  if (o.format == "json") {
    if (reps.size() == 1) {
      write_payload(reps[0].to_json().dump(2) + "\n", o);
    } else {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : reps) arr.push_back(r.to_json());
      write_payload(arr.dump(2) + "\n", o);
    }
    return;
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (i) os << "\n";
    os << reps[i].text();
  }
  write_payload(os.str(), o);
}

bool all_pass(const std::vector<cc::VerificationReport>& reps) {
  for (const auto& r : reps)
    if (!r.pass) return false;
  return true;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CLIFFCONE_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw cc::parse_error("CLIFFCONE_SEED is not an unsigned integer");
    }
  }
  return 12345u;
}

cc::CliffordSystem load_system(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw cc::parse_error("cannot open " + path);
  return cc::from_text(f);
}

cc::QuadraticMap load_map(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw cc::parse_error("cannot open " + path);
  return cc::quadmap_from_text(f);
}

cc::VerificationReport validation_report(const cc::CliffordSystem& sys) {
  cc::ExactValidation val = cc::validate(sys);
  cc::VerificationReport rep;
  rep.check = "clifford_validate";
  rep.m = sys.m;
  rep.n = sys.n;
  rep.pass = val.pass;
  rep.note("exact arithmetic, no tolerance");
  if (!val.pass) rep.note(cc::failure_summary(val));
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for Clifford systems, quadratic harmonic morphisms, and quartic minimal cones"};
  app.require_subcommand(1);

  Output out;
  app.add_option("--format", out.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", out.out_path, "write the report to this path instead of stdout");

  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_option("--seed", seed, "root seed for sampling (default: CLIFFCONE_SEED or 12345)")
      ->each([&seed_given](const std::string&) { seed_given = true; });

  std::function<int()> task;

  // clifford build | validate
  auto* clifford = app.add_subcommand("clifford", "construct and validate Clifford systems");
  {
    auto* build = clifford->add_subcommand("build", "build a system of n anticommuting matrices");
    auto n = std::make_shared<int>(0);
    auto m = std::make_shared<long long>(0);
    auto twin = std::make_shared<bool>(false);
    build->add_option("--n", *n, "number of matrices")->required();
    build->add_option("--m", *m, "ambient dimension (default: minimal)");
    build->add_flag("--twin", *twin, "build the inequivalent variant (n = 1 mod 4)");
    build->callback([&, n, m, twin] {
      task = [&, n, m, twin]() -> int {
        cc::CliffordSystem sys =
            cc::build_irreducible(*n, *twin ? cc::Variant::twin : cc::Variant::standard);
        if (*m > 0) {
          if (*m % sys.m != 0)
            throw cc::dimension_error("ambient dimension must be a multiple of " +
                                      std::to_string(sys.m));
          if (*m > sys.m) sys = cc::direct_sum(sys, static_cast<int>(*m / sys.m));
        }
        if (!cc::validate(sys).pass) {
          std::cerr << "constructed system failed validation\n";
          return 1;
        }
        write_payload(cc::to_text(sys), out);
        return 0;
      };
    });

    auto* vali = clifford->add_subcommand("validate", "exact validation of a serialized system");
    auto path = std::make_shared<std::string>();
    vali->add_option("--in", *path, "path to a serialized system")->required();
    vali->callback([&, path] {
      task = [&, path]() -> int {
        auto rep = validation_report(load_system(*path));
        emit({rep}, out);
        return rep.pass ? 0 : 1;
      };
    });
  }

  // hm check
  auto* hm = app.add_subcommand("hm", "checks for quadratic harmonic morphism candidates");
  {
    auto* check = hm->add_subcommand("check", "horizontal conformality, harmonicity, umbillicity, fullness");
    auto m = std::make_shared<long long>(0);
    auto n = std::make_shared<int>(0);
    auto path = std::make_shared<std::string>();
    auto samples = std::make_shared<long long>(100);
    auto decomp = std::make_shared<bool>(false);
    check->add_option("--m", *m, "ambient dimension");
    check->add_option("--n", *n, "target dimension");
    check->add_option("--map", *path, "path to a serialized quadratic map");
    check->add_option("--samples", *samples, "sample count for the numeric confirmations");
    check->add_flag("--decompose", *decomp, "also run the eigenspace decomposition");
    check->callback([&, m, n, path, samples, decomp] {
      task = [&, m, n, path, samples, decomp]() -> int {
        cc::QuadraticMap P = path->empty() ? cc::standard_map(static_cast<long>(*m), *n)
                                           : load_map(*path);
        std::vector<cc::VerificationReport> reps;
        reps.push_back(cc::check_whc(P, *samples, seed));
        reps.push_back(cc::check_harmonic(P));
        reps.push_back(cc::check_umbillic(P, *samples, seed).report);
        cc::VerificationReport full;
        full.check = "check_full";
        full.m = P.m();
        full.n = P.n();
        full.pass = cc::check_full(P);
        full.note("exact rank of the stacked matrices");
        reps.push_back(std::move(full));
        if (*decomp) {
          cc::DecomposeResult d = cc::decompose(P.assembled());
          std::ostringstream os;
          os << "recovered blocks:";
          for (const auto& b : d.map.blocks())
            os << " (weight " << cc::to_double(b.weight) << ", dim " << b.system.m << ")";
          os << ", trivial dim " << d.map.trivial_dim();
          d.report.note(os.str());
          reps.push_back(std::move(d.report));
        }
        emit(reps, out);
        return all_pass(reps) ? 0 : 1;
      };
    });
  }

  // cone minimality | spectrum | pullback
  auto* cone = app.add_subcommand("cone", "minimal cone verifications");
  {
    auto* mini = cone->add_subcommand("minimality", "mean curvature on the quartic cone");
    auto m = std::make_shared<long long>(0);
    auto n = std::make_shared<int>(0);
    auto samples = std::make_shared<long long>(100);
    mini->add_option("--m", *m, "ambient dimension")->required();
    mini->add_option("--n", *n, "cone index (half the number of matrices)")->required();
    mini->add_option("--samples", *samples, "points sampled on the cone");
    mini->callback([&, m, n, samples] {
      task = [&, m, n, samples]() -> int {
        cc::ConeC4 C = cc::make_cone_c4(static_cast<long>(*m), *n);
        cc::CsvSink csv(out.csv_path);
        auto rep = cc::minimality_check(C, *samples, seed, 1e-8, csv ? &csv : nullptr);
        emit({rep}, out);
        return rep.pass ? 0 : 1;
      };
    });

    auto* spec = cone->add_subcommand("spectrum", "eigenvalue split of directional combinations");
    auto m2 = std::make_shared<long long>(0);
    auto n2 = std::make_shared<int>(0);
    auto dirs = std::make_shared<int>(20);
    spec->add_option("--m", *m2, "ambient dimension")->required();
    spec->add_option("--n", *n2, "number of matrices")->required();
    spec->add_option("--directions", *dirs, "random unit directions to test");
    spec->callback([&, m2, n2, dirs] {
      task = [&, m2, n2, dirs]() -> int {
        cc::QuadraticMap P = cc::standard_map(static_cast<long>(*m2), *n2);
        std::vector<cc::VerificationReport> reps;
        for (int k = 0; k < *dirs; ++k) {
          cc::Rng rng(cc::derive_seed(seed, static_cast<std::uint64_t>(k)));
          reps.push_back(cc::codim1_spectrum_check(P, rng.unit_vector(P.n())));
        }
        emit(reps, out);
        return all_pass(reps) ? 0 : 1;
      };
    });

    auto* pull = cone->add_subcommand("pullback", "mean curvature on preimages of subspaces");
    auto m3 = std::make_shared<long long>(0);
    auto n3 = std::make_shared<int>(0);
    auto codim = std::make_shared<int>(1);
    auto samples3 = std::make_shared<long long>(50);
    pull->add_option("--m", *m3, "ambient dimension")->required();
    pull->add_option("--n", *n3, "number of matrices")->required();
    pull->add_option("--codim", *codim, "codimension of the target subspace");
    pull->add_option("--samples", *samples3, "points sampled on the pullback cone");
    pull->callback([&, m3, n3, codim, samples3] {
      task = [&, m3, n3, codim, samples3]() -> int {
        cc::QuadraticMap P = cc::standard_map(static_cast<long>(*m3), *n3);
        if (*codim < 1 || *codim > P.n())
          throw cc::dimension_error("codimension must lie between 1 and n");
        cc::Rng rng(cc::derive_seed(seed, 777));
        Eigen::MatrixXd G(P.n(), *codim);
        for (Eigen::Index c = 0; c < *codim; ++c) G.col(c) = rng.gaussian_vector(P.n());
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
        Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(P.n(), *codim);
        cc::PullbackCone pc = cc::make_pullback_cone(P, Q);
        auto rep = cc::pullback_minimality(pc, *samples3, seed);
        emit({rep}, out);
        return rep.pass ? 0 : 1;
      };
    });
  }

  // subcalib identities | divergence | coefficients | sign
  auto* sub = app.add_subcommand("subcalib", "subcalibration verifications for the quartic cones");
  {
    auto* ident = sub->add_subcommand("identities", "the nine first-order identities");
    auto m = std::make_shared<long long>(0);
    auto n = std::make_shared<int>(0);
    auto samples = std::make_shared<long long>(100);
    ident->add_option("--m", *m, "ambient dimension")->required();
    ident->add_option("--n", *n, "cone index")->required();
    ident->add_option("--samples", *samples, "sample count");
    ident->callback([&, m, n, samples] {
      task = [&, m, n, samples]() -> int {
        cc::ConeC4 C = cc::make_cone_c4(static_cast<long>(*m), *n);
        cc::CsvSink csv(out.csv_path);
        auto rep = cc::claim_identities_sampled(C, *samples, seed, 1e-9, csv ? &csv : nullptr);
        emit({rep}, out);
        return rep.pass ? 0 : 1;
      };
    });

    auto* dive = sub->add_subcommand("divergence", "closed form against the jet differentiation path");
    auto m2 = std::make_shared<long long>(0);
    auto n2 = std::make_shared<int>(0);
    auto samples2 = std::make_shared<long long>(100);
    dive->add_option("--m", *m2, "ambient dimension")->required();
    dive->add_option("--n", *n2, "cone index")->required();
    dive->add_option("--samples", *samples2, "sample count");
    dive->callback([&, m2, n2, samples2] {
      task = [&, m2, n2, samples2]() -> int {
        cc::ConeC4 C = cc::make_cone_c4(static_cast<long>(*m2), *n2);
        cc::VerificationReport rep;
        rep.check = "divergence_cross_check";
        rep.m = C.m;
        rep.n = C.n;
        rep.seed = seed;
        rep.samples = *samples2;
        rep.tolerance("cross_path_rel", 1e-6);
        rep.pass = true;
        cc::CsvSink csv(out.csv_path);
        if (csv) csv.header({"closed_form", "jet_path", "rel_diff"});
        for (long long s = 0; s < *samples2; ++s) {
          cc::Rng rng(cc::derive_seed(seed, static_cast<std::uint64_t>(s)));
          Eigen::VectorXd x = rng.gaussian_vector(C.m);
          while (C.normP2.value(x) <= 1e-12) x = rng.gaussian_vector(C.m);
          double lhs = cc::divergence_closed_form(C, x);
          double rhs = cc::divergence_normalized_gradient(C.f, x);
          double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
          rep.record(rel, x);
          if (csv) csv.row({lhs, rhs, rel});
        }
        rep.pass = rep.max_residual <= 1e-6;
        emit({rep}, out);
        return rep.pass ? 0 : 1;
      };
    });

    auto* coef = sub->add_subcommand("coefficients", "the five bracket coefficients and their signs");
    auto m3 = std::make_shared<long long>(0);
    auto n3 = std::make_shared<int>(0);
    coef->add_option("--m", *m3, "ambient dimension")->required();
    coef->add_option("--n", *n3, "cone index")->required();
    coef->callback([&, m3, n3] {
      task = [&, m3, n3]() -> int {
        cc::CoefficientSigns cs = cc::coefficient_signs(static_cast<long>(*m3), *n3);
        if (out.format == "json") {
          nlohmann::ordered_json j;
          j["schema"] = 1;
          j["check"] = "coefficient_signs";
          j["m"] = *m3;
          j["n"] = *n3;
          j["values"] = cs.values;
          j["positive"] = cs.positive;
          j["all_positive"] = cs.all_positive;
          write_payload(j.dump(2) + "\n", out);
        } else {
          std::ostringstream os;
          os << "coefficients:";
          for (double v : cs.values) os << " " << v;
          os << "\npositive:";
          for (bool b : cs.positive) os << " " << (b ? "yes" : "no");
          os << "\n";
          if (!cs.all_positive) os << "sufficiency fails: not every coefficient is positive\n";
          write_payload(os.str(), out);
        }
        return cs.all_positive ? 0 : 1;
      };
    });

    auto* sign = sub->add_subcommand("sign", "divergence sign on the sublevel regions");
    auto m4 = std::make_shared<long long>(0);
    auto n4 = std::make_shared<int>(0);
    auto eps = std::make_shared<double>(0.1);
    auto samples4 = std::make_shared<long long>(1000);
    sign->add_option("--m", *m4, "ambient dimension")->required();
    sign->add_option("--n", *n4, "cone index")->required();
    sign->add_option("--eps", *eps, "level margin after normalizing to the unit sphere");
    sign->add_option("--samples", *samples4, "accepted samples per region");
    sign->callback([&, m4, n4, eps, samples4] {
      task = [&, m4, n4, eps, samples4]() -> int {
        cc::ConeC4 C = cc::make_cone_c4(static_cast<long>(*m4), *n4);
        cc::CsvSink csv(out.csv_path);
        auto rep = cc::subcalibration_check(C, *eps, *samples4, seed, 1e-9, csv ? &csv : nullptr);
        emit({rep}, out);
        return rep.pass ? 0 : 1;
      };
    });
  }

  // examples c4
  auto* ex = app.add_subcommand("examples", "cross-checks of the printed cone presentations");
  {
    auto* c4 = ex->add_subcommand("c4", "extract Clifford systems from the division-algebra forms");
    auto which = std::make_shared<std::string>("all");
    c4->add_option("--which", *which, "8_2, 16_4, 32_4, or all")
        ->check(CLI::IsMember({"8_2", "16_4", "32_4", "all"}));
    c4->callback([&, which] {
      task = [&, which]() -> int {
        std::vector<cc::DivisionAlgebraCone> cones;
        if (*which == "8_2" || *which == "all") cones.push_back(cc::division_cone_8_2());
        if (*which == "16_4" || *which == "all") cones.push_back(cc::division_cone_16_4());
        if (*which == "32_4" || *which == "all") cones.push_back(cc::division_cone_32_4());
        std::vector<cc::VerificationReport> reps;
        for (const auto& D : cones) {
          auto res = cc::extract_clifford_from_quadrics(D);
          res.report.note(cc::algebra_name(D.tag) + " form, " + std::to_string(D.slots) +
                          " slots");
          reps.push_back(std::move(res.report));
        }
        emit(reps, out);
        return all_pass(reps) ? 0 : 1;
      };
    });
  }

  app.add_option("--csv", out.csv_path, "write per-sample values to this csv path");

  // The output and seed options live on the root so every task shares them,
  // but they should be accepted after the subcommand name as well.
  std::function<void(CLI::App*)> allow = [&allow](CLI::App* a) {
    for (CLI::App* s : a->get_subcommands([](CLI::App*) { return true; })) {
      s->fallthrough();
      allow(s);
    }
  };
  allow(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!seed_given) {
    try {
      seed = default_seed();
    } catch (const cc::parse_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  try {
    return task ? task() : 2;
  } catch (const cc::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cc::shape_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cc::dimension_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cc::invalid_variant_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cc::error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
