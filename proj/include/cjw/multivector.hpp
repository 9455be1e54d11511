#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cjw {

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

inline void check_dimension(int m) {
  if (m < kMinDim || m > kMaxDim)
    throw std::invalid_argument("dimension m must be in [2,8], got " + std::to_string(m));
}

// Basis blade of R_m as a bitmask: bit j-1 set means e_j is a factor.
// The empty mask is the scalar unit.
struct Blade {
  unsigned mask = 0;

  int grade() const { return std::popcount(mask); }
  bool contains(int j) const { return (mask >> (j - 1)) & 1u; }

  static Blade from_indices(std::initializer_list<int> indices, int m) {
    check_dimension(m);
    Blade b;
    int prev = 0;
    for (int j : indices) {
      if (j < 1 || j > m) throw std::invalid_argument("blade index out of range for m");
      if (j <= prev) throw std::invalid_argument("blade indices must be strictly increasing");
      b.mask |= 1u << (j - 1);
      prev = j;
    }
    return b;
  }

  // "s" for the scalar unit, otherwise e.g. "e13".
  std::string name() const {
    if (mask == 0) return "s";
    std::string out = "e";
    for (int j = 1; j <= kMaxDim; ++j)
      if (contains(j)) out += static_cast<char>('0' + j);
    return out;
  }
};

// Sign and result blade of e_A e_B under e_j^2 = -1, e_j e_k = -e_k e_j.
// The sign counts transpositions needed to merge the ordered index lists.
inline std::pair<int, Blade> blade_product(Blade a, Blade b, int m) {
  check_dimension(m);
  unsigned limit = (m >= 32) ? ~0u : ((1u << m) - 1u);
  if ((a.mask & ~limit) || (b.mask & ~limit))
    throw std::invalid_argument("blade index out of range for m");
  int sign = 1;
  unsigned acc = a.mask;
  for (int j = 0; j < m; ++j) {
    if (!((b.mask >> j) & 1u)) continue;
    unsigned higher = acc >> (j + 1);
    if (std::popcount(higher) & 1) sign = -sign;
    if ((acc >> j) & 1u) {
      sign = -sign;  // e_j e_j = -1
      acc &= ~(1u << j);
    } else {
      acc |= 1u << j;
    }
  }
  return {sign, Blade{acc}};
}

// Element of the real Clifford algebra R_m, dense blade coefficients.
// Immutable in spirit: all operations return new values.
class Multivector {
 public:
  explicit Multivector(int m) : m_(m), c_(std::size_t{1} << m, 0.0) { check_dimension(m); }

  static Multivector scalar(int m, double v) {
    Multivector r(m);
    r.c_[0] = v;
    return r;
  }

  static Multivector basis(int m, Blade b) {
    Multivector r(m);
    r.c_.at(b.mask) = 1.0;
    return r;
  }

  int dim() const { return m_; }
  std::size_t size() const { return c_.size(); }

  double operator[](unsigned mask) const { return c_[mask]; }
  double& coeff(unsigned mask) { return c_[mask]; }
  double coeff(Blade b) const { return c_[b.mask]; }

  double scalar_part() const { return c_[0]; }

  Multivector& operator+=(const Multivector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }

  friend Multivector operator*(const Multivector& a, const Multivector& b) {
    a.require_same_dim(b);
    Multivector r(a.m_);
    for (unsigned i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0.0) continue;
      for (unsigned j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0.0) continue;
        auto [sgn, blade] = blade_product(Blade{i}, Blade{j}, a.m_);
        r.c_[blade.mask] += sgn * a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  // sqrt of the sum of squared blade coefficients
  double norm() const {
    double s = 0;
    for (double v : c_) s += v * v;
    return std::sqrt(s);
  }

  Multivector grade_select(int k) const {
    Multivector r(m_);
    for (unsigned i = 0; i < c_.size(); ++i)
      if (std::popcount(i) == k) r.c_[i] = c_[i];
    return r;
  }

 private:
  void require_same_dim(const Multivector& o) const {
    if (m_ != o.m_) throw std::invalid_argument("multivector dimension mismatch");
  }

  int m_;
  std::vector<double> c_;
};

// Anti-involution with conj(e_j) = -e_j: a grade-k blade picks up (-1)^{k(k+1)/2}.
inline Multivector conjugate(const Multivector& a) {
  Multivector r(a.dim());
  for (unsigned i = 0; i < a.size(); ++i) {
    int k = std::popcount(i);
    int sgn = ((k * (k + 1) / 2) % 2 == 0) ? 1 : -1;
    r.coeff(i) = sgn * a[i];
  }
  return r;
}

// Vector of R^m, to be embedded as sum_j e_j x_j.
struct CliffordVector {
  std::vector<double> x;

  CliffordVector() = default;
  CliffordVector(std::initializer_list<double> v) : x(v) {}
  explicit CliffordVector(std::vector<double> v) : x(std::move(v)) {}

  int dim() const { return static_cast<int>(x.size()); }
  double norm2() const {
    double s = 0;
    for (double v : x) s += v * v;
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }
};

inline Multivector embed(const CliffordVector& v) {
  check_dimension(v.dim());
  Multivector r(v.dim());
  for (int j = 0; j < v.dim(); ++j) r.coeff(1u << j) = v.x[j];
  return r;
}

}  // namespace cjw
