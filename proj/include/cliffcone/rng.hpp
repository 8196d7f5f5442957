#pragma once

// Deterministic random sampling. A fixed splitmix64 generator with Box-Muller
// normals keeps reports byte-identical for a fixed seed; std::normal_distribution
// is not reproducible across standard library implementations.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace cliffcone {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-sample seeds derived from one root seed keep sample evaluations
// order-independent.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t s = root ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL);
  return splitmix64_next(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd gaussian_vector(Eigen::Index m) {
    Eigen::VectorXd v(m);
    for (Eigen::Index i = 0; i < m; ++i) v(i) = gaussian();
    return v;
  }

  Eigen::VectorXd unit_vector(Eigen::Index m) {
    Eigen::VectorXd v = gaussian_vector(m);
    double n = v.norm();
    while (n < 1e-12) {
      v = gaussian_vector(m);
      n = v.norm();
    }
    return v / n;
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace cliffcone
