#pragma once

#include <stdexcept>
#include <string>

namespace cjw {

// Quadrature failed to converge, or an integral is provably divergent.
class divergence_error : public std::runtime_error {
 public:
  explicit divergence_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested CWT scale cannot be resolved on the sampling grid.
class scale_range_error : public std::runtime_error {
 public:
  explicit scale_range_error(const std::string& what) : std::runtime_error(what) {}
};

// The two derivation routes for a polynomial family disagree.
class route_mismatch_error : public std::runtime_error {
 public:
  explicit route_mismatch_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cjw
