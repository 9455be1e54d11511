#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cjw/multivector.hpp"
#include "cjw/rational.hpp"

#include <json.hpp>

namespace cjw {

// gamma_{n,m}: the Dirac derivative coefficient of x^n,
//   -n for even n, -(m+n-1) for odd n.
inline long gamma_coeff(long n, int m) {
  if (n < 0) throw std::invalid_argument("gamma_coeff: n must be >= 0");
  return (n % 2 == 0) ? -n : -(m + n - 1);
}

// Polynomial sum_k c[k] x^k in the Clifford vector variable x, with real
// (or exact rational) coefficients. Evaluation reduces via x^2 = -|x|^2, so
// values live in span{1, x}. Trailing zero coefficients are trimmed; the zero
// polynomial has an empty coefficient list.
template <typename T>
struct VecPoly {
  int m = 2;
  std::vector<T> c;

  VecPoly() = default;
  VecPoly(int dim, std::vector<T> coeffs) : m(dim), c(std::move(coeffs)) {
    check_dimension(m);
    trim();
  }

  static VecPoly zero(int m) { return VecPoly(m, {}); }
  static VecPoly one(int m) { return VecPoly(m, {T(1)}); }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero

  T coeff(std::size_t k) const { return k < c.size() ? c[k] : T(0); }

  void trim() {
    while (!c.empty() && c.back() == T(0)) c.pop_back();
  }

  bool operator==(const VecPoly& o) const { return m == o.m && c == o.c; }

  VecPoly& operator+=(const VecPoly& o) {
    if (m != o.m) throw std::invalid_argument("VecPoly dimension mismatch");
    if (o.c.size() > c.size()) c.resize(o.c.size(), T(0));
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  friend VecPoly operator+(VecPoly a, const VecPoly& b) { return a += b; }

  VecPoly& operator-=(const VecPoly& o) {
    if (m != o.m) throw std::invalid_argument("VecPoly dimension mismatch");
    if (o.c.size() > c.size()) c.resize(o.c.size(), T(0));
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
  }
  friend VecPoly operator-(VecPoly a, const VecPoly& b) { return a -= b; }

  VecPoly& operator*=(const T& s) {
    for (T& v : c) v *= s;
    trim();
    return *this;
  }
  friend VecPoly operator*(VecPoly a, const T& s) { return a *= s; }
  friend VecPoly operator*(const T& s, VecPoly a) { return a *= s; }
  friend VecPoly operator-(VecPoly a) { return a *= T(-1); }
};

using RatPoly = VecPoly<Rational>;
using DblPoly = VecPoly<double>;

inline DblPoly to_double_poly(const RatPoly& p) {
  std::vector<double> c(p.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = to_double(p.c[i]);
  return DblPoly(p.m, std::move(c));
}

// Dirac derivative: d(x^k) = gamma_{k,m} x^{k-1}.
template <typename T>
VecPoly<T> dirac(const VecPoly<T>& p) {
  if (p.c.size() <= 1) return VecPoly<T>::zero(p.m);
  std::vector<T> out(p.c.size() - 1, T(0));
  for (std::size_t k = 1; k < p.c.size(); ++k)
    out[k - 1] = p.c[k] * T(gamma_coeff(static_cast<long>(k), p.m));
  return VecPoly<T>(p.m, std::move(out));
}

template <typename T>
VecPoly<T> mul_x(const VecPoly<T>& p) {
  if (p.is_zero()) return p;
  std::vector<T> out(p.c.size() + 1, T(0));
  for (std::size_t k = 0; k < p.c.size(); ++k) out[k + 1] = p.c[k];
  return VecPoly<T>(p.m, std::move(out));
}

// (1 + |x|^2) p = (1 - x^2) p
template <typename T>
VecPoly<T> mul_one_plus_norm2(const VecPoly<T>& p) {
  if (p.is_zero()) return p;
  std::vector<T> out(p.c.size() + 2, T(0));
  for (std::size_t k = 0; k < p.c.size(); ++k) {
    out[k] += p.c[k];
    out[k + 2] -= p.c[k];
  }
  return VecPoly<T>(p.m, std::move(out));
}

// (1 - |x|^2) p = (1 + x^2) p
template <typename T>
VecPoly<T> mul_one_minus_norm2(const VecPoly<T>& p) {
  if (p.is_zero()) return p;
  std::vector<T> out(p.c.size() + 2, T(0));
  for (std::size_t k = 0; k < p.c.size(); ++k) {
    out[k] += p.c[k];
    out[k + 2] += p.c[k];
  }
  return VecPoly<T>(p.m, std::move(out));
}

// Radial evaluation: p(x) = A(r) + B(r) x with x^{2j} = (-r^2)^j.
// Returns {A, B}.
template <typename T>
std::pair<double, double> eval_radial(const VecPoly<T>& p, double r) {
  double s = -r * r;
  double a = 0.0, b = 0.0;
  double pow_even = 1.0;  // s^j for k = 2j
  double pow_odd = 1.0;   // s^j for k = 2j+1
  for (std::size_t k = 0; k < p.c.size(); ++k) {
    double ck = to_double(p.c[k]);
    if (k % 2 == 0) {
      if (k > 0) pow_even *= s;
      a += ck * pow_even;
    } else {
      if (k > 1) pow_odd *= s;
      b += ck * pow_odd;
    }
  }
  return {a, b};
}

template <typename T>
Multivector eval(const VecPoly<T>& p, const CliffordVector& x) {
  if (x.dim() != p.m) throw std::invalid_argument("eval: dimension mismatch");
  auto [a, b] = eval_radial(p, x.norm());
  Multivector r = Multivector::scalar(p.m, a);
  if (b != 0.0) r += embed(x) * b;
  return r;
}

// ---------------------------------------------------------------------------
// Weights omega_{a,b}(x) = (1-|x|^2)^a (1+|x|^2)^b and their Dirac calculus.
// ---------------------------------------------------------------------------

template <typename T>
struct WeightParams {
  T alpha{};
  T beta{};
};

namespace detail {

inline double ipow(double base, long e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  double r = 1.0, b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline bool is_integer(double a) { return a == std::floor(a) && std::abs(a) < 1e15; }

inline double pow_branch(double base_abs, double expo, bool negative_base, bool signed_branch) {
  double mag;
  if (is_integer(expo))
    mag = ipow(base_abs, static_cast<long>(expo));
  else
    mag = std::pow(base_abs, expo);
  if (signed_branch && negative_base && is_integer(expo) && (static_cast<long>(expo) % 2 != 0))
    return -mag;
  return mag;
}

}  // namespace detail

// |1-r^2|^alpha (1+r^2)^beta: the positive-branch evaluation.
// r = 1 with alpha < 0 is a domain error (the value is not finite).
inline double weight_eval(double alpha, double beta, double r) {
  if (r < 0) throw std::domain_error("weight_eval: r must be >= 0");
  double one_m = 1.0 - r * r;
  if (one_m == 0.0 && alpha < 0)
    throw std::domain_error("weight_eval: non-finite value at r = 1 with alpha < 0");
  double wa = (alpha == 0.0) ? 1.0 : detail::pow_branch(std::abs(one_m), alpha, false, false);
  double wb = (beta == 0.0) ? 1.0 : detail::pow_branch(1.0 + r * r, beta, false, false);
  return wa * wb;
}

// Signed branch: equals (1-r^2)^alpha for integer alpha (the function the
// Rodrigues/Fourier identities hold for globally); falls back to the positive
// branch for fractional alpha, where no real signed power exists on r > 1.
inline double weight_signed(double alpha, double beta, double r) {
  if (r < 0) throw std::domain_error("weight_signed: r must be >= 0");
  double one_m = 1.0 - r * r;
  if (one_m == 0.0 && alpha < 0)
    throw std::domain_error("weight_signed: non-finite value at r = 1 with alpha < 0");
  double wa = (alpha == 0.0)
                  ? 1.0
                  : detail::pow_branch(std::abs(one_m), alpha, one_m < 0, true);
  double wb = (beta == 0.0) ? 1.0 : detail::pow_branch(1.0 + r * r, beta, false, false);
  return wa * wb;
}

template <typename T>
double weight_eval(const WeightParams<T>& w, double r) {
  return weight_eval(to_double(w.alpha), to_double(w.beta), r);
}

// Finite sum  sum_i p_i(x) * omega_{alpha - a_i, beta - b_i}(x), the shape the
// iterated Dirac derivatives of a weight take. Shifts are nonnegative ints.
template <typename T>
struct WeightExpansion {
  struct Term {
    VecPoly<T> poly;
    int shift_a = 0;
    int shift_b = 0;
  };

  int m = 2;
  std::vector<Term> terms;

  static WeightExpansion base(int m) {
    WeightExpansion e;
    e.m = m;
    e.terms.push_back({VecPoly<T>::one(m), 0, 0});
    return e;
  }

  bool is_zero() const { return terms.empty(); }

  void merge() {
    std::map<std::pair<int, int>, VecPoly<T>> acc;
    for (auto& t : terms) {
      auto key = std::make_pair(t.shift_a, t.shift_b);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, std::move(t.poly));
      else
        it->second += t.poly;
    }
    terms.clear();
    for (auto& [key, poly] : acc)
      if (!poly.is_zero()) terms.push_back({std::move(poly), key.first, key.second});
  }
};

// Dirac derivative of an expansion relative to the base weight (alpha, beta):
//   d(p * w_{a,b}) = (dp) w_{a,b} - 2a (x p) w_{a-1,b} + 2b (x p) w_{a,b-1}
// with a = alpha - shift_a, b = beta - shift_b.
template <typename T>
WeightExpansion<T> dirac_weight(const WeightExpansion<T>& e, const WeightParams<T>& base) {
  WeightExpansion<T> out;
  out.m = e.m;
  for (const auto& t : e.terms) {
    T a = base.alpha - T(t.shift_a);
    T b = base.beta - T(t.shift_b);
    VecPoly<T> dp = dirac(t.poly);
    if (!dp.is_zero()) out.terms.push_back({std::move(dp), t.shift_a, t.shift_b});
    if (a != T(0)) {
      VecPoly<T> q = mul_x(t.poly) * (T(-2) * a);
      if (!q.is_zero()) out.terms.push_back({std::move(q), t.shift_a + 1, t.shift_b});
    }
    if (b != T(0)) {
      VecPoly<T> q = mul_x(t.poly) * (T(2) * b);
      if (!q.is_zero()) out.terms.push_back({std::move(q), t.shift_a, t.shift_b + 1});
    }
  }
  out.merge();
  return out;
}

// Rewrites sum_i p_i w_{alpha-a_i, beta-b_i} as P * w_{alpha-la, beta-lb} by
// multiplying each p_i with (1-|x|^2)^{la-a_i} (1+|x|^2)^{lb-b_i}.
template <typename T>
VecPoly<T> factor_common_weight(const WeightExpansion<T>& e, int la, int lb) {
  VecPoly<T> out = VecPoly<T>::zero(e.m);
  for (const auto& t : e.terms) {
    if (t.shift_a > la || t.shift_b > lb)
      throw std::invalid_argument("factor_common_weight: term shift exceeds target");
    VecPoly<T> q = t.poly;
    for (int i = 0; i < la - t.shift_a; ++i) q = mul_one_minus_norm2(q);
    for (int i = 0; i < lb - t.shift_b; ++i) q = mul_one_plus_norm2(q);
    out += q;
  }
  return out;
}

template <typename T>
VecPoly<T> factor_common_weight(const WeightExpansion<T>& e, int l) {
  return factor_common_weight(e, l, l);
}

// Pointwise value of an expansion. Uses the signed weight branch: the Dirac
// product rule these expansions come from is a polynomial identity in
// (1-r^2), valid on all of R^m only for the signed powers.
template <typename T>
Multivector eval_expansion_mv(const WeightExpansion<T>& e, const WeightParams<T>& base,
                              const CliffordVector& x) {
  Multivector acc(e.m);
  double r = x.norm();
  for (const auto& t : e.terms) {
    double a = to_double(base.alpha) - t.shift_a;
    double b = to_double(base.beta) - t.shift_b;
    double w = weight_signed(a, b, r);
    acc += eval(t.poly, x) * w;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// JSON serialization: {"m": int, "coeffs": [decimal strings]}
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const RatPoly& p) {
  nlohmann::json j;
  j["m"] = p.m;
  auto arr = nlohmann::json::array();
  for (const auto& c : p.c) arr.push_back(rational_to_string(c));
  j["coeffs"] = arr;
  return j;
}

inline RatPoly rat_poly_from_json(const nlohmann::json& j) {
  int m = j.at("m").get<int>();
  std::vector<Rational> c;
  for (const auto& s : j.at("coeffs")) c.push_back(parse_rational(s.get<std::string>()));
  return RatPoly(m, std::move(c));
}

}  // namespace cjw
