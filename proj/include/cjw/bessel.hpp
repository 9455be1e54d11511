#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bessel.hpp>

#include "cjw/families.hpp"

namespace cjw {

// Bessel function of the first kind, integer or half-integer order nu >= 0.
// Orders beyond that set are rejected: the radial transforms only ever need
// nu = m/2 - 1 for m in [2, 8].
inline double bessel_j(double nu, double x) {
  double doubled = 2.0 * nu;
  if (nu < 0.0 || std::floor(doubled) != doubled)
    throw std::invalid_argument("bessel_j: unsupported order " + std::to_string(nu));
  if (x < 0.0) throw std::invalid_argument("bessel_j: x must be >= 0");
  return boost::math::cyl_bessel_j(nu, x);
}

// Sphere integral of the plane wave,
//   int_{S^{m-1}} exp(-i r rho <w, xi>) dsigma(w)
//     = (2 pi)^{m/2} J_{m/2-1}(r rho) / (r rho)^{m/2-1},
// real-valued by symmetry. The r rho -> 0 limit is the sphere area.
inline double sphere_plane_wave(int m, double r, double rho) {
  check_dimension(m);
  double x = r * rho;
  double nu = m / 2.0 - 1.0;
  if (x < 1e-8) return sphere_area(m);
  return std::pow(2.0 * std::numbers::pi, m / 2.0) * bessel_j(nu, x) / std::pow(x, nu);
}

}  // namespace cjw
