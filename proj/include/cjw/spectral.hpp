#pragma once

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "cjw/bessel.hpp"
#include "cjw/families.hpp"
#include "cjw/grid.hpp"
#include "cjw/quadrature.hpp"

namespace cjw {

// Clifford value with an explicit imaginary part; the algebra core stays real.
struct ComplexMultivector {
  Multivector re;
  Multivector im;

  explicit ComplexMultivector(int m) : re(m), im(m) {}
  ComplexMultivector(Multivector r, Multivector i) : re(std::move(r)), im(std::move(i)) {}

  double norm() const { return std::hypot(re.norm(), im.norm()); }

  ComplexMultivector& operator+=(const ComplexMultivector& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend ComplexMultivector operator-(ComplexMultivector a, const ComplexMultivector& b) {
    a.re -= b.re;
    a.im -= b.im;
    return a;
  }
};

namespace detail {

inline void check_hat_preconditions(const WaveletSpec& spec) {
  double tail = 2.0 * (spec.alpha + spec.beta + 2.0 * spec.ell) + spec.m / 2.0;
  if (!(tail < -0.5))
    throw std::domain_error("wavelet_hat: radial integrand does not decay (tail power " +
                            std::to_string(tail) + ")");
  if (!(spec.alpha + spec.ell > -1.0))
    throw std::domain_error("wavelet_hat: not integrable at r = 1 (alpha + l <= -1)");
}

}  // namespace detail

// h(rho) = int_0^inf (1-r^2)^{alpha+l} (1+r^2)^{beta+l} r^{m/2} J_{m/2-1}(r rho) dr.
// Signed weight branch for integer exponents: the Fourier identity
// psihat = (-i)^l xi^l (2pi)^{m/2} rho^{1-m/2+l} h(rho) comes from
// psi = (-1)^l d^l w_{alpha+l,beta+l}, which holds globally for the signed
// weight; the positive branch fails the direct-FT oracle for odd alpha+l.
inline double wavelet_hat_h(const WaveletSpec& spec, double rho, const RadialQuadrature& quad) {
  detail::check_hat_preconditions(spec);
  if (!(rho >= 0)) throw std::invalid_argument("wavelet_hat_h: rho must be >= 0");
  double nu = spec.m / 2.0 - 1.0;
  double a = spec.alpha + spec.ell;
  double b = spec.beta + spec.ell;
  double half_m = spec.m / 2.0;
  auto f = [&](double r) {
    return weight_signed(a, b, r) * std::pow(r, half_m) * bessel_j(nu, r * rho);
  };
  return quad.integrate_radial(f, rho);
}

// |psihat(rho)| = (2pi)^{m/2} rho^{1-m/2+l} |h(rho)|  (|xi^l| = 1)
inline double wavelet_hat_abs(const WaveletSpec& spec, double rho, const RadialQuadrature& quad) {
  if (!(rho > 0)) throw std::invalid_argument("wavelet_hat_abs: rho must be > 0");
  double h = wavelet_hat_h(spec, rho, quad);
  return std::pow(2.0 * std::numbers::pi, spec.m / 2.0) *
         std::pow(rho, 1.0 - spec.m / 2.0 + spec.ell) * std::abs(h);
}

// Full Clifford-Fourier value at u = rho * xi:
//   psihat(u) = (-i)^l xi^l (2pi)^{m/2} rho^{1-m/2+l} h(rho),
// with xi^2 = -1 folding xi^l into a scalar or a unit vector.
inline ComplexMultivector wavelet_hat(const WaveletSpec& spec, const CliffordVector& u,
                                      const RadialQuadrature& quad) {
  if (u.dim() != spec.m) throw std::invalid_argument("wavelet_hat: dimension mismatch");
  double rho = u.norm();
  if (!(rho > 0)) throw std::invalid_argument("wavelet_hat: u must be nonzero");
  double h = wavelet_hat_h(spec, rho, quad);
  double mag = std::pow(2.0 * std::numbers::pi, spec.m / 2.0) *
               std::pow(rho, 1.0 - spec.m / 2.0 + spec.ell) * h;

  // (-i)^l in {1, -i, -1, i}; xi^l = (-1)^{floor(l/2)} * (1 or xi)
  int l = spec.ell;
  if ((l / 2) % 2 != 0) mag = -mag;
  int phase = l % 4;  // (-i)^l: 0 -> 1, 1 -> -i, 2 -> -1, 3 -> i
  ComplexMultivector out(spec.m);
  if (l % 2 == 0) {
    Multivector s = Multivector::scalar(spec.m, mag);
    if (phase == 0)
      out.re = s;
    else
      out.re = -s;  // phase == 2
  } else {
    CliffordVector xi = u;
    for (auto& c : xi.x) c /= rho;
    Multivector v = embed(xi) * mag;
    if (phase == 1)
      out.im = -v;
    else
      out.im = v;  // phase == 3
  }
  return out;
}

struct SpectralSample {
  double rho;
  double h;
  double hat_abs;
};

// Tabulated radial spectrum; the module-level export with the integral factor.
inline std::vector<SpectralSample> tabulate_spectrum(const WaveletSpec& spec,
                                                     const std::vector<double>& rhos,
                                                     const RadialQuadrature& quad) {
  std::vector<SpectralSample> out;
  out.reserve(rhos.size());
  for (double rho : rhos) {
    double h = wavelet_hat_h(spec, rho, quad);
    double habs = std::pow(2.0 * std::numbers::pi, spec.m / 2.0) *
                  std::pow(rho, 1.0 - spec.m / 2.0 + spec.ell) * std::abs(h);
    out.push_back({rho, h, habs});
  }
  return out;
}

inline void write_spectrum_csv(const std::vector<SpectralSample>& samples, std::ostream& os,
                               bool with_h = false) {
  os << (with_h ? "rho,h,hat_abs" : "rho,hat_abs") << "\n";
  for (const auto& s : samples) {
    os << format_double(s.rho) << ",";
    if (with_h) os << format_double(s.h) << ",";
    os << format_double(s.hat_abs) << "\n";
  }
}

// Admissibility constant
//   A = (1/omega_m) int |psihat(u)|^2 / |u|^m dV(u)
//     = (2pi)^m int_0^inf rho^{2(1-m/2+l)} h(rho)^2 drho / rho.
// l = 0 with nonzero mean diverges at rho = 0 and is reported as such.
inline double admissibility(const WaveletSpec& spec, const RadialQuadrature& quad) {
  detail::check_hat_preconditions(spec);
  if (spec.ell == 0) {
    // psihat(0) = integral of psi; nonzero makes the rho^{-1} integral diverge
    auto f = [&](double r) {
      return weight_signed(spec.alpha, spec.beta, r) * std::pow(r, spec.m - 1);
    };
    auto fabsw = [&](double r) {
      return std::abs(weight_signed(spec.alpha, spec.beta, r)) * std::pow(r, spec.m - 1);
    };
    double mean = quad.integrate_radial(f);
    double scale = quad.integrate_radial(fabsw);
    if (std::abs(mean) > 1e-12 * scale)
      throw divergence_error("admissibility: psihat(0) != 0 for l = 0, integral diverges");
    throw std::invalid_argument("admissibility: l >= 1 required");
  }

  const double two_pi_m = std::pow(2.0 * std::numbers::pi, spec.m);
  const double expo = 2.0 * (1.0 - spec.m / 2.0 + spec.ell) - 1.0;
  auto g = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    double h = wavelet_hat_h(spec, rho, quad);
    return two_pi_m * std::pow(rho, expo) * h * h;
  };
  // nonnegative integrand decaying with the spectrum; segmented outer sweep
  return quad.integrate_decaying(g);
}

// Fixed-density variant for self-convergence checks: the outer rho integral
// runs over fixed geometric segments up to rho = 64 and every quadrature
// (outer and inner Hankel) uses exactly `density` panels per unit, so the
// only difference between two densities is panel resolution.
inline double admissibility_fixed_density(const WaveletSpec& spec, int density) {
  if (spec.ell < 1) throw std::invalid_argument("admissibility: l >= 1 required");
  detail::check_hat_preconditions(spec);
  const double two_pi_m = std::pow(2.0 * std::numbers::pi, spec.m);
  const double expo = 2.0 * (1.0 - spec.m / 2.0 + spec.ell) - 1.0;
  double nu = spec.m / 2.0 - 1.0;
  double a = spec.alpha + spec.ell, b = spec.beta + spec.ell, hm = spec.m / 2.0;
  RadialQuadrature quad;
  auto g = [&](double rho) {
    if (rho <= 0.0) return 0.0;
    auto f = [&](double r) {
      return weight_signed(a, b, r) * std::pow(r, hm) * bessel_j(nu, r * rho);
    };
    double h = quad.integrate_radial_fixed(f, density, rho);
    return two_pi_m * std::pow(rho, expo) * h * h;
  };
  double acc = RadialQuadrature::panels(g, 0.0, 1.0, density);
  for (double lo = 1.0; lo < 64.0; lo *= 2.0)
    acc += RadialQuadrature::panels(g, lo, 2.0 * lo, density);
  return acc;
}

// Direct Riemann-sum Clifford-Fourier transform on an R^2 grid; oracle only.
inline ComplexMultivector direct_ft(const GridSignal& f, const CliffordVector& u,
                                    double boundary_rel_tol = 1e-6) {
  if (f.dim() != 2) throw std::invalid_argument("direct_ft: oracle is 2-D only");
  if (u.dim() != 2) throw std::invalid_argument("direct_ft: dimension mismatch");
  auto [peak, boundary] = f.boundary_profile();
  if (peak > 0 && boundary > boundary_rel_tol * peak)
    throw std::domain_error("direct_ft: signal has not decayed at the grid boundary");
  ComplexMultivector out(2);
  const double dv = f.cell_volume();
  for (int i = 0; i < f.extents()[0]; ++i)
    for (int j = 0; j < f.extents()[1]; ++j) {
      const Multivector& v = f.at(i, j);
      auto p = f.point(i, j);
      double phase = p.x[0] * u.x[0] + p.x[1] * u.x[1];
      double c = std::cos(phase), s = std::sin(phase);
      // e^{-i phase} = c - i s
      out.re += v * (c * dv);
      out.im += v * (-s * dv);
    }
  return out;
}

}  // namespace cjw
