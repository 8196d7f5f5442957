#pragma once

// Structured pass/fail record shared by every verification routine, with JSON
// and CSV emission. JSON output is byte-deterministic for identical inputs.

#include <Eigen/Dense>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cliffcone/errors.hpp"

namespace cliffcone {

struct VerificationReport {
  std::string check;
  long long m = 0;
  long long n = 0;
  std::uint64_t seed = 0;
  long long samples = 0;
  std::vector<std::pair<std::string, double>> tolerances;
  double max_residual = 0.0;
  std::vector<double> worst_point;
  bool pass = false;
  std::vector<std::string> notes;

  void tolerance(const std::string& name, double value) { tolerances.emplace_back(name, value); }

  void note(std::string s) { notes.push_back(std::move(s)); }

  // Track the largest residual together with the point that produced it.
  void record(double residual, const Eigen::VectorXd& x) {
    if (residual >= max_residual) {
      max_residual = residual;
      worst_point.assign(x.data(), x.data() + x.size());
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["check"] = check;
    j["m"] = m;
    j["n"] = n;
    j["seed"] = seed;
    j["samples"] = samples;
    nlohmann::ordered_json tols = nlohmann::ordered_json::object();
    for (const auto& [k, v] : tolerances) tols[k] = v;
    j["tolerances"] = tols;
    j["max_residual"] = max_residual;
    j["worst_point"] = worst_point;
    j["pass"] = pass;
    j["notes"] = notes;
    return j;
  }

  std::string text() const {
    std::ostringstream os;
    os << "check: " << check << "\n";
    os << "m: " << m << "  n: " << n << "  seed: " << seed << "  samples: " << samples << "\n";
    for (const auto& [k, v] : tolerances) os << "tolerance " << k << ": " << v << "\n";
    os << "max_residual: " << max_residual << "\n";
    if (!worst_point.empty()) {
      os << "worst_point:";
      for (double v : worst_point) os << " " << v;
      os << "\n";
    }
    for (const auto& s : notes) os << "note: " << s << "\n";
    os << (pass ? "PASS" : "FAIL") << "\n";
    return os.str();
  }
};

// Per-sample dump, one row per sample, written only when a path is supplied.
class CsvSink {
 public:
  CsvSink() = default;
  explicit CsvSink(const std::string& path) {
    if (!path.empty()) {
      out_.open(path);
      if (!out_) throw error("cannot open csv path " + path);
    }
  }

  explicit operator bool() const { return out_.is_open(); }

  void header(const std::vector<std::string>& cols) {
    if (!out_) return;
    for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
    out_ << "\n";
  }

  void row(const std::vector<double>& vals) {
    if (!out_) return;
    out_.precision(17);
    for (std::size_t i = 0; i < vals.size(); ++i) out_ << (i ? "," : "") << vals[i];
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

}  // namespace cliffcone
