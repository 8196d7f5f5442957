#pragma once

// Exact multivariate polynomials over the rationals. Monomials are sorted
// index multisets (x_0^2 x_3 -> [0,0,3]); zero coefficients are never stored,
// so equality is map equality. Small expansions only: quartics built from
// squares of quadratic forms.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cliffcone/errors.hpp"
#include "cliffcone/matrix.hpp"
#include "cliffcone/rational.hpp"

namespace cliffcone {

class Poly {
 public:
  using Key = std::vector<int>;

  Poly() = default;

  static Poly constant(Rat c) {
    Poly p;
    p.add_term({}, std::move(c));
    return p;
  }
  static Poly variable(int i) {
    Poly p;
    p.add_term({i}, Rat(1));
    return p;
  }
  static Poly monomial(Key k, Rat c) {
    Poly p;
    p.add_term(std::move(k), std::move(c));
    return p;
  }
  // sum_{r,c} A(r,c) x_r x_c
  static Poly quadratic_form(const Mat<Rat>& A) {
    Poly p;
    for (std::size_t r = 0; r < A.rows(); ++r)
      for (std::size_t c = 0; c < A.cols(); ++c)
        if (A(r, c) != 0) p.add_term({static_cast<int>(r), static_cast<int>(c)}, A(r, c));
    return p;
  }

  const std::map<Key, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly& operator+=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly out;
    for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, -c);
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        Key k = ka;
        k.insert(k.end(), kb.begin(), kb.end());
        out.add_term(std::move(k), ca * cb);
      }
    return out;
  }
  friend Poly operator*(const Rat& s, const Poly& a) {
    Poly out;
    if (s == 0) return out;
    for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, s * c);
    return out;
  }
  Poly squared() const { return *this * *this; }

  int degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(k.size()));
    return d;
  }
  bool homogeneous(int d) const {
    for (const auto& [k, c] : terms_)
      if (static_cast<int>(k.size()) != d) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << cliffcone::to_string(c);
      for (int i : k) os << "*x" << i;
    }
    return os.str();
  }

 private:
  void add_term(Key k, Rat c) {
    if (c == 0) return;
    std::sort(k.begin(), k.end());
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), std::move(c));
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Key, Rat> terms_;
};

// Symmetric matrix A with q = <x, A x>, for homogeneous quadratic q on R^m.
inline Mat<Rat> symmetric_matrix_of(const Poly& q, std::size_t m) {
  if (!q.homogeneous(2)) throw shape_error("polynomial is not a homogeneous quadratic");
  Mat<Rat> a(m, m);
  for (const auto& [k, c] : q.terms()) {
    std::size_t r = static_cast<std::size_t>(k[0]);
    std::size_t col = static_cast<std::size_t>(k[1]);
    if (r >= m || col >= m) throw dimension_error("variable index outside ambient dimension");
    if (r == col) {
      a(r, r) = c;
    } else {
      a(r, col) = c / 2;
      a(col, r) = c / 2;
    }
  }
  return a;
}

}  // namespace cliffcone
