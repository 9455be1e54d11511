#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "cjw/errors.hpp"

namespace cjw {

// Composite Gauss-Legendre quadrature over [0, inf) with a panel split at the
// weight kink r = 1 and the tail mapped to (0, 1] by r = 1/u. Refinement
// doubles the panel density until two successive levels agree to tolerance.
// Deterministic for fixed settings.
//
// Oscillatory (Bessel-kernel) integrands get a panel density scaled to the
// oscillation frequency and a truncated reciprocal tail u in [1/tail_cut, 1]:
// past r = tail_cut the kernel's sign changes cancel far below tolerance for
// integrands that meet the decay preconditions.
struct RadialQuadrature {
  int nodes_per_unit = 16;    // base panel count per unit interval
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_doublings = 9;
  double tail_cut = 60.0;     // oscillatory tail truncation radius

  using Fn = std::function<double(double)>;

  static double panels(const Fn& f, double a, double b, int n) {
    using G = boost::math::quadrature::gauss<double, 16>;
    double h = (b - a) / n;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += G::integrate(f, a + i * h, a + (i + 1) * h);
    return s;
  }

  // panels per unit length needed to keep >= ~1 panel per 1.5 oscillations
  static int osc_panels(int base, double cycles) {
    int need = static_cast<int>(std::ceil(cycles / 1.5)) + 1;
    return std::max(base, need);
  }

  // One density level of the full radial integral: [0,1] plus the mapped
  // tail. osc_freq is the angular frequency (rho for Bessel kernels, 0 for
  // smooth integrands); a zero frequency keeps the untruncated tail map.
  double level(const Fn& f, int n, double osc_freq) const {
    double u_min = (osc_freq > 0.0) ? 1.0 / tail_cut : 0.0;
    int n01 = (osc_freq > 0.0) ? osc_panels(n, osc_freq / (2.0 * std::numbers::pi)) : n;
    double inner = panels(f, 0.0, 1.0, n01);
    auto tail = [&f](double u) { return f(1.0 / u) / (u * u); };
    int ntail = n;
    if (osc_freq > 0.0) {
      double cycles = osc_freq * (tail_cut - 1.0) / (2.0 * std::numbers::pi);
      ntail = osc_panels(n, cycles);
    }
    double outer = panels(tail, u_min, 1.0, ntail);
    return inner + outer;
  }

  double integrate_radial(const Fn& f, double osc_freq = 0.0) const {
    int n = nodes_per_unit;
    double prev = level(f, n, osc_freq);
    for (int k = 0; k < max_doublings; ++k) {
      n *= 2;
      double cur = level(f, n, osc_freq);
      if (std::abs(cur - prev) <= std::max(abs_tol, rel_tol * std::abs(cur))) return cur;
      prev = cur;
    }
    throw divergence_error("radial quadrature did not converge (density " +
                           std::to_string(n) + " panels)");
  }

  // Single fixed-density pass, for external self-convergence checks.
  double integrate_radial_fixed(const Fn& f, int density, double osc_freq = 0.0) const {
    return level(f, density, osc_freq);
  }

  // Finite interval with the same adaptive doubling.
  double integrate_interval(const Fn& f, double a, double b) const {
    int n = nodes_per_unit;
    double prev = panels(f, a, b, n);
    for (int k = 0; k < max_doublings; ++k) {
      n *= 2;
      double cur = panels(f, a, b, n);
      if (std::abs(cur - prev) <= std::max(abs_tol, rel_tol * std::abs(cur))) return cur;
      prev = cur;
    }
    throw divergence_error("interval quadrature did not converge");
  }

  // Integral over [0, inf) of a nonnegative decaying integrand, by geometric
  // segments [0,1], [1,2], [2,4], ... Stops once two consecutive segments are
  // negligible. A cheap 3-point probe skips clearly dead segments.
  double integrate_decaying(const Fn& f, double segment_cap = 256.0) const {
    double acc = panels(f, 0.0, 1.0, nodes_per_unit);
    acc = refine_interval(f, 0.0, 1.0, acc);
    double lo = 1.0;
    int quiet = 0;
    while (lo < segment_cap) {
      double hi = lo * 2.0;
      double width = hi - lo;
      double probe = (f(lo) + f(0.5 * (lo + hi)) + f(hi)) / 3.0 * width;
      double seg;
      double thresh = std::max(abs_tol, rel_tol * std::abs(acc));
      if (std::abs(probe) < 0.01 * thresh) {
        seg = probe;
      } else {
        seg = refine_interval(f, lo, hi, panels(f, lo, hi, nodes_per_unit));
      }
      acc += seg;
      quiet = (std::abs(seg) <= thresh) ? quiet + 1 : 0;
      if (quiet >= 2) return acc;
      lo = hi;
    }
    throw divergence_error("decaying integral: no convergence by radius " +
                           std::to_string(segment_cap));
  }

 private:
  double refine_interval(const Fn& f, double a, double b, double first) const {
    int n = nodes_per_unit;
    double prev = first;
    for (int k = 0; k < max_doublings; ++k) {
      n *= 2;
      double cur = panels(f, a, b, n);
      if (std::abs(cur - prev) <= std::max(abs_tol, rel_tol * std::abs(cur))) return cur;
      prev = cur;
    }
    throw divergence_error("segment quadrature did not converge");
  }
};

}  // namespace cjw
