#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "cjw/multivector.hpp"
#include "cjw/quadrature.hpp"
#include "cjw/vecpoly.hpp"

namespace cjw {

inline constexpr int kDefaultMaxOrder = 12;

inline void check_order(int l, int max_order) {
  if (l < 0) throw std::invalid_argument("order must be >= 0");
  if (l > max_order)
    throw std::invalid_argument("order " + std::to_string(l) + " exceeds max " +
                                std::to_string(max_order));
}

// Clifford-Gegenbauer G_{l,m,alpha}, weight (1+|x|^2)^alpha:
//   G_0 = 1,  G_{l+1} = -2(alpha-l) x G_l - (1+|x|^2) dG_l.
template <typename T>
VecPoly<T> gegenbauer(int l, int m, const T& alpha, int max_order = kDefaultMaxOrder) {
  check_order(l, max_order);
  check_dimension(m);
  VecPoly<T> g = VecPoly<T>::one(m);
  for (int k = 0; k < l; ++k) {
    VecPoly<T> next = mul_x(g) * (T(-2) * (alpha - T(k)));
    next -= mul_one_plus_norm2(dirac(g));
    g = std::move(next);
  }
  return g;
}

// Two-parameter Clifford-Jacobi Z_{l,m}^{alpha,beta}, weight
// (1-|x|^2)^alpha (1+|x|^2)^beta:
//   Z_0 = 1,
//   Z_{l+1} = [2(alpha-l) x (1-x^2) - 2(beta-l) x (1+x^2)] Z_l
//             - (1-|x|^2)(1+|x|^2) dZ_l.
// Note (1-x^2) = (1+|x|^2) and (1+x^2) = (1-|x|^2).
template <typename T>
VecPoly<T> jacobi_Z(int l, int m, const T& alpha, const T& beta,
                    int max_order = kDefaultMaxOrder) {
  check_order(l, max_order);
  check_dimension(m);
  VecPoly<T> z = VecPoly<T>::one(m);
  for (int k = 0; k < l; ++k) {
    VecPoly<T> xz = mul_x(z);
    VecPoly<T> next = mul_one_plus_norm2(xz) * (T(2) * (alpha - T(k)));
    next -= mul_one_minus_norm2(xz) * (T(2) * (beta - T(k)));
    next -= mul_one_minus_norm2(mul_one_plus_norm2(dirac(z)));
    z = std::move(next);
  }
  return z;
}

// Rodrigues route: Z_l = (-1)^l w_{l-alpha,l-beta} d^l w_{alpha,beta},
// computed symbolically through WeightExpansion. Must equal jacobi_Z exactly.
template <typename T>
VecPoly<T> jacobi_Z_rodrigues(int l, int m, const T& alpha, const T& beta,
                              int max_order = kDefaultMaxOrder) {
  check_order(l, max_order);
  check_dimension(m);
  WeightParams<T> base{alpha, beta};
  WeightExpansion<T> e = WeightExpansion<T>::base(m);
  for (int k = 0; k < l; ++k) e = dirac_weight(e, base);
  VecPoly<T> p = factor_common_weight(e, l);
  if (l % 2 != 0) p *= T(-1);
  return p;
}

// Single-parameter Rodrigues route for the Gegenbauer family: the weight has
// no (1-|x|^2) factor, so shifts act on the beta slot only.
template <typename T>
VecPoly<T> gegenbauer_rodrigues(int l, int m, const T& alpha,
                                int max_order = kDefaultMaxOrder) {
  check_order(l, max_order);
  check_dimension(m);
  WeightParams<T> base{T(0), alpha};
  WeightExpansion<T> e = WeightExpansion<T>::base(m);
  for (int k = 0; k < l; ++k) e = dirac_weight(e, base);
  VecPoly<T> p = factor_common_weight(e, 0, l);
  if (l % 2 != 0) p *= T(-1);
  return p;
}

// Leading-coefficient growth factor of the step Z_l -> Z_{l+1}:
//   -2(alpha + beta - 2l) + gamma_{3l,m}.
// deg Z_L = 3L iff the factors for l = 0..L-1 are all nonzero.
template <typename T>
T jacobi_leading_step(int l, int m, const T& alpha, const T& beta) {
  return T(-2) * (alpha + beta - T(2 * l)) + T(gamma_coeff(3L * l, m));
}

template <typename T>
bool jacobi_degree_nondegenerate(int l, int m, const T& alpha, const T& beta) {
  for (int k = 0; k < l; ++k)
    if (jacobi_leading_step(k, m, alpha, beta) == T(0)) return false;
  return true;
}

namespace detail {

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational r(1);
  for (int i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
  return r;
}

}  // namespace detail

// Explicit Clifford-Legendre sum
//   L_n(x) = 2^{-n} sum_k C(n,k)^2 (-1)^{n-k} (1-x)^{n-k} (1+x)^k.
inline RatPoly legendre_clifford(int n, int m = 2, int max_order = kDefaultMaxOrder) {
  check_order(n, max_order);
  check_dimension(m);
  RatPoly acc = RatPoly::zero(m);
  for (int k = 0; k <= n; ++k) {
    Rational b = detail::binomial(n, k);
    Rational coeff = b * b;
    if ((n - k) % 2 != 0) coeff = -coeff;
    // expand (1-x)^{n-k} (1+x)^k
    RatPoly term(m, {coeff});
    for (int i = 0; i < n - k; ++i) term = term - mul_x(term);
    for (int i = 0; i < k; ++i) term = term + mul_x(term);
    acc += term;
  }
  Rational inv2n(1);
  for (int i = 0; i < n; ++i) inv2n /= 2;
  return acc * inv2n;
}

// Explicit Clifford-Chebyshev sum
//   T_n(x) = 2^{-n} sum_k C(2n,2k) (-1)^{n-k} (1-x)^{n-k} (1+x)^k.
inline RatPoly chebyshev_clifford(int n, int m = 2, int max_order = kDefaultMaxOrder) {
  check_order(n, max_order);
  check_dimension(m);
  RatPoly acc = RatPoly::zero(m);
  for (int k = 0; k <= n; ++k) {
    Rational coeff = detail::binomial(2 * n, 2 * k);
    if ((n - k) % 2 != 0) coeff = -coeff;
    RatPoly term(m, {coeff});
    for (int i = 0; i < n - k; ++i) term = term - mul_x(term);
    for (int i = 0; i < k; ++i) term = term + mul_x(term);
    acc += term;
  }
  Rational inv2n(1);
  for (int i = 0; i < n; ++i) inv2n /= 2;
  return acc * inv2n;
}

// ---------------------------------------------------------------------------
// Wavelets  psi_{l,m}^{alpha,beta} = Z_{l,m}^{alpha+l,beta+l} * w_{alpha,beta}
// ---------------------------------------------------------------------------

struct WaveletSpec {
  int ell = 1;
  int m = 2;
  double alpha = 0.0;
  double beta = -6.0;
  DblPoly z;  // Z_{ell,m}^{alpha+ell, beta+ell}

  WaveletSpec(int l_, int m_, double alpha_, double beta_)
      : ell(l_), m(m_), alpha(alpha_), beta(beta_) {
    check_order(ell, kDefaultMaxOrder);
    check_dimension(m);
    z = jacobi_Z<double>(ell, m, alpha + ell, beta + ell);
  }

  // psi(x) = A(r) + B(r) x. Signed weight branch (integer exponents are the
  // globally smooth case the derivative identities hold for).
  std::pair<double, double> psi_radial(double r) const {
    auto [a, b] = eval_radial(z, r);
    double w = weight_signed(alpha, beta, r);
    return {a * w, b * w};
  }

  Multivector psi(const CliffordVector& x) const {
    if (x.dim() != m) throw std::invalid_argument("psi: dimension mismatch");
    auto [a, b] = psi_radial(x.norm());
    Multivector v = Multivector::scalar(m, a);
    if (b != 0.0) v += embed(x) * b;
    return v;
  }
};

// Surface measure of the unit sphere S^{m-1}.
inline double sphere_area(int m) {
  check_dimension(m);
  return 2.0 * std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0);
}

// integral over R^m of x^k psi(x) dV, reduced to one radial integral.
// x^k Z(x) splits by parity: odd total powers are vector-grade and integrate
// to zero over the sphere analytically; even powers contribute
// (-1)^{p/2} r^p to the scalar radial profile.
inline Multivector moment_integral(int k, const WaveletSpec& spec,
                                   const RadialQuadrature& quad) {
  if (k < 0) throw std::invalid_argument("moment_integral: k must be >= 0");
  const DblPoly& z = spec.z;
  const int m = spec.m;
  // absolute-integrability preconditions (paper's moment window bookkeeping)
  double decay = 2.0 * (spec.alpha + spec.beta + 2.0 * spec.ell) + k + m - 1;
  if (!(decay < -1.0))
    throw std::domain_error("moment_integral: integrand not absolutely integrable (tail)");
  if (!(spec.alpha > -1.0))
    throw std::domain_error("moment_integral: integrand not integrable at r = 1");

  std::vector<double> even;  // coefficient of r^{k+j} for even k+j, signed
  bool any = false;
  for (int j = 0; j <= z.degree(); ++j) {
    int p = k + j;
    if (p % 2 != 0) continue;
    double cj = z.coeff(j);
    if (cj == 0.0) continue;
    any = true;
    if (static_cast<int>(even.size()) <= p) even.resize(p + 1, 0.0);
    even[p] += ((p / 2) % 2 == 0 ? 1.0 : -1.0) * cj;
  }
  Multivector out(m);
  if (!any) return out;  // pure vector grade: zero by sphere symmetry

  auto integrand = [&](double r) {
    double poly = 0.0;
    double rp = 1.0;
    int last = 0;
    for (int p = 0; p < static_cast<int>(even.size()); ++p) {
      if (even[p] == 0.0) continue;
      for (; last < p; ++last) rp *= r;
      poly += even[p] * rp;
    }
    return poly * weight_signed(spec.alpha, spec.beta, r) * std::pow(r, m - 1);
  };
  double radial = quad.integrate_radial(integrand);
  out.coeff(0u) = sphere_area(m) * radial;
  return out;
}

// Orthogonality integral I_{k,t,p} = int x^k Z_{t,m}^{alpha+p,beta+p} w_{alpha,beta} dV:
// for p = t this is moment_integral of the order-t wavelet.
inline Multivector orthogonality_integral(int k, int t, int m, double alpha, double beta,
                                          const RadialQuadrature& quad) {
  WaveletSpec spec(t, m, alpha, beta);
  return moment_integral(k, spec, quad);
}

}  // namespace cjw
