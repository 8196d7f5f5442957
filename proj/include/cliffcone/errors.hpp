#pragma once

#include <stdexcept>
#include <string>

namespace cliffcone {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct shape_error : error {
  using error::error;
};
struct dimension_error : error {
  using error::error;
};
struct invalid_variant_error : error {
  using error::error;
};
struct not_whc_error : error {
  using error::error;
};
struct inconsistency_error : error {
  using error::error;
};
struct off_manifold_error : error {
  using error::error;
};
struct singular_point_error : error {
  using error::error;
};
struct vanishing_gradient_error : error {
  using error::error;
};
struct vanishing_differential_error : error {
  using error::error;
};
struct outside_domain_error : error {
  using error::error;
};
struct sampling_error : error {
  using error::error;
};
struct parse_error : error {
  using error::error;
};

}  // namespace cliffcone
