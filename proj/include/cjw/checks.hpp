#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cjw/cwt.hpp"
#include "cjw/families.hpp"
#include "cjw/multivector.hpp"
#include "cjw/spectral.hpp"

namespace cjw::checks {

struct Clause {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CriterionReport {
  int id = 0;
  std::string name;
  bool pass = true;
  double seconds = 0.0;
  std::vector<Clause> clauses;

  void add(const std::string& n, bool p, double measured, double tol,
           const std::string& detail = "") {
    clauses.push_back({n, p, measured, tol, detail});
    pass = pass && p;
  }
};

namespace detail {

inline Rational rand_rational(std::mt19937& rng, int num_range = 9, int den_range = 7) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return Rational(num(rng), den(rng));
}

inline Multivector rand_mv(std::mt19937& rng, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector v(m);
  for (unsigned i = 0; i < v.size(); ++i) v.coeff(i) = u(rng);
  return v;
}

inline double classical_legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return p0;
  for (int k = 1; k < n; ++k) {
    double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

inline double classical_chebyshev(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return p0;
  for (int k = 1; k < n; ++k) {
    double p2 = 2.0 * x * p1 - p0;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

template <typename T>
double scalar_substitution(const VecPoly<T>& p, double t) {
  double acc = 0.0;
  for (std::size_t k = p.c.size(); k-- > 0;) acc = acc * t + to_double(p.c[k]);
  return acc;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// 1. algebra laws on random multivectors
inline CriterionReport criterion_algebra(double ts) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 1;
  rep.name = "algebra";
  std::mt19937 rng(12345);
  double worst_assoc = 0.0, worst_vec = 0.0, worst_conj = 0.0;
  int table_violations = 0;
  for (int m : {2, 3, 4}) {
    for (int it = 0; it < 1000; ++it) {
      Multivector a = detail::rand_mv(rng, m), b = detail::rand_mv(rng, m),
                  c = detail::rand_mv(rng, m);
      Multivector lhs = (a * b) * c, rhs = a * (b * c);
      double scale = std::max(1.0, lhs.norm());
      worst_assoc = std::max(worst_assoc, (lhs - rhs).norm() / scale);
    }
    for (int j = 1; j <= m; ++j) {
      for (int k = 1; k <= m; ++k) {
        Multivector ej = Multivector::basis(m, Blade::from_indices({j}, m));
        Multivector ek = Multivector::basis(m, Blade::from_indices({k}, m));
        Multivector anti = ej * ek + ek * ej;
        if (j == k) anti -= Multivector::scalar(m, -2.0);
        if (anti.norm() != 0.0) ++table_violations;
      }
    }
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int it = 0; it < 200; ++it) {
      std::vector<double> x(m);
      for (auto& v : x) v = u(rng);
      CliffordVector cv(x);
      Multivector sq = embed(cv) * embed(cv) + Multivector::scalar(m, cv.norm2());
      worst_vec = std::max(worst_vec, sq.norm() / std::max(1.0, cv.norm2()));
      Multivector a = detail::rand_mv(rng, m), b = detail::rand_mv(rng, m);
      Multivector lhs = conjugate(a * b), rhs = conjugate(b) * conjugate(a);
      worst_conj = std::max(worst_conj, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
    }
  }
  double tol = 1e-12 * ts;
  rep.add("associativity", worst_assoc <= tol, worst_assoc, tol);
  rep.add("anticommutation", table_violations == 0, table_violations, 0);
  rep.add("vector-square", worst_vec <= tol, worst_vec, tol);
  rep.add("conjugation", worst_conj <= tol, worst_conj, tol);
  rep.seconds = timer.seconds();
  rep.add("runtime", rep.seconds < 5.0, rep.seconds, 5.0);
  return rep;
}

// 2. closed-form low orders, exact rational arithmetic
inline CriterionReport criterion_closed_form(double) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 2;
  rep.name = "closed-form";
  std::mt19937 rng(777);
  int mismatches = 0, cases = 0;
  for (int m : {2, 3, 4, 5}) {
    for (int it = 0; it < 8; ++it) {
      Rational a = detail::rand_rational(rng), b = detail::rand_rational(rng);
      ++cases;
      RatPoly g1 = gegenbauer<Rational>(1, m, a);
      if (!(g1 == RatPoly(m, {Rational(0), Rational(-2) * a}))) ++mismatches;
      RatPoly g2 = gegenbauer<Rational>(2, m, a);
      RatPoly g2ref(m, {Rational(-2) * a * m, Rational(0),
                        Rational(2) * a * (Rational(2) * (a - 1) + m)});
      if (!(g2 == g2ref)) ++mismatches;
      RatPoly z1 = jacobi_Z<Rational>(1, m, a, b);
      RatPoly z1ref(m, {Rational(0), Rational(2) * (a - b), Rational(0), Rational(-2) * (a + b)});
      if (!(z1 == z1ref)) ++mismatches;
    }
  }
  rep.add("g1-g2-z1-exact", mismatches == 0, mismatches, 0,
          std::to_string(cases) + " random rational parameter draws");
  rep.seconds = timer.seconds();
  return rep;
}

// 3. recurrence route == Rodrigues route, exact
inline CriterionReport criterion_route_equivalence(double) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 3;
  rep.name = "route-equivalence";
  std::mt19937 rng(4242);
  int mismatches = 0, cases = 0;
  for (int m : {2, 3, 4}) {
    for (int it = 0; it < 25; ++it) {
      Rational a = detail::rand_rational(rng), b = detail::rand_rational(rng);
      for (int l = 0; l <= 6; ++l) {
        ++cases;
        if (!(jacobi_Z<Rational>(l, m, a, b) == jacobi_Z_rodrigues<Rational>(l, m, a, b)))
          ++mismatches;
      }
    }
  }
  rep.add("jacobi-routes-exact", mismatches == 0, mismatches, 0,
          std::to_string(cases) + " (m, alpha, beta, l) cases");
  rep.seconds = timer.seconds();
  rep.add("runtime", rep.seconds < 30.0, rep.seconds, 30.0);
  return rep;
}

// 4. degree law deg Z_l = 3l away from the degenerate leading coefficients
inline CriterionReport criterion_degree_law(double) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 4;
  rep.name = "degree-law";
  std::mt19937 rng(4242);
  int violations = 0, cases = 0, degenerate = 0;
  for (int m : {2, 3, 4}) {
    for (int it = 0; it < 25; ++it) {
      Rational a = detail::rand_rational(rng), b = detail::rand_rational(rng);
      for (int l = 0; l <= 6; ++l) {
        if (!jacobi_degree_nondegenerate(l, m, a, b)) {
          ++degenerate;
          continue;
        }
        ++cases;
        if (jacobi_Z<Rational>(l, m, a, b).degree() != 3 * l) ++violations;
      }
    }
  }
  rep.add("deg-3l", violations == 0, violations, 0,
          std::to_string(cases) + " nondegenerate cases, " + std::to_string(degenerate) +
              " degenerate skipped");
  rep.seconds = timer.seconds();
  return rep;
}

// 5. vanishing moments and the orthogonality instance
inline CriterionReport criterion_moments(double ts) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 5;
  rep.name = "moments";
  RadialQuadrature quad;
  WaveletSpec spec(3, 2, 2.0, -14.0);
  double m1 = moment_integral(1, spec, quad).norm();
  double m2 = moment_integral(2, spec, quad).norm();
  double m3 = moment_integral(3, spec, quad).norm();
  rep.add("moment-k1", m1 < 1e-8 * ts, m1, 1e-8 * ts);
  rep.add("moment-k2", m2 < 1e-8 * ts, m2, 1e-8 * ts);
  rep.add("moment-k3-nonzero", m3 > 1e-4, m3, 1e-4, "negative control, expect ~3.19146");
  double i011 = orthogonality_integral(0, 1, 2, 1.0, -6.0, quad).norm();
  rep.add("orthogonality-t1", i011 < 1e-8 * ts, i011, 1e-8 * ts);
  rep.seconds = timer.seconds();
  return rep;
}

// 6. Hankel-form spectrum against the direct 2-D Fourier oracle
inline CriterionReport criterion_spectral_oracle(double ts) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 6;
  rep.name = "spectral-oracle";
  RadialQuadrature quad;
  struct SpecDef {
    int l;
    double beta;
  };
  double worst = 0.0;
  for (SpecDef sd : {SpecDef{0, -4.0}, SpecDef{1, -6.0}, SpecDef{2, -8.0}}) {
    WaveletSpec spec(sd.l, 2, 0.0, sd.beta);
    GridSignal f(2, {-10.0, -10.0, 0.0}, 20.0 / 128, {128, 128, 1});
    f.fill([&](const CliffordVector& x) { return spec.psi(x); });
    for (int i = 0; i < 10; ++i) {
      double rho = 0.5 * std::pow(8.0 / 0.5, i / 9.0);
      CliffordVector xi = (i % 2 == 0) ? CliffordVector{1.0, 0.0} : CliffordVector{0.6, 0.8};
      CliffordVector u{xi.x[0] * rho, xi.x[1] * rho};
      ComplexMultivector predicted = wavelet_hat(spec, u, quad);
      ComplexMultivector oracle = direct_ft(f, u);
      double rel = (predicted - oracle).norm() / oracle.norm();
      worst = std::max(worst, rel);
    }
  }
  rep.add("hat-vs-direct-ft", worst <= 1e-3 * ts, worst, 1e-3 * ts, "3 specs x 10 frequencies");

  double worst_slope = 0.0;
  for (int l : {1, 2}) {
    WaveletSpec spec(l, 2, 0.0, l == 1 ? -6.0 : -8.0);
    double lo = wavelet_hat_abs(spec, 1e-3, quad);
    double hi = wavelet_hat_abs(spec, 1e-2, quad);
    double slope = std::log10(hi / lo);
    worst_slope = std::max(worst_slope, std::abs(slope - l));
  }
  rep.add("low-frequency-slope", worst_slope <= 0.1 * ts, worst_slope, 0.1 * ts);
  rep.seconds = timer.seconds();
  rep.add("runtime", rep.seconds < 120.0, rep.seconds, 120.0);
  return rep;
}

// 7. admissibility: finite, self-convergent, and divergence detection
inline CriterionReport criterion_admissibility(double ts) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 7;
  rep.name = "admissibility";
  RadialQuadrature quad;
  WaveletSpec spec(1, 2, 0.0, -6.0);
  double a = admissibility(spec, quad);
  bool finite = std::isfinite(a) && a > 0;
  rep.add("finite-positive", finite, a, 0, "golden 1.7232642605");
  double golden_rel = std::abs(a - 1.7232642605077888) / 1.7232642605077888;
  rep.add("golden-value", golden_rel < 1e-5 * ts, golden_rel, 1e-5 * ts);
  double a24 = admissibility_fixed_density(spec, 24);
  double a48 = admissibility_fixed_density(spec, 48);
  double self_rel = std::abs(a48 - a24) / std::abs(a48);
  rep.add("self-convergence", self_rel < 1e-6 * ts, self_rel, 1e-6 * ts);
  bool threw = false;
  try {
    WaveletSpec bad(0, 2, 0.0, -4.0);
    admissibility(bad, quad);
  } catch (const divergence_error&) {
    threw = true;
  }
  rep.add("l0-divergence-raised", threw, threw ? 1 : 0, 1);
  rep.seconds = timer.seconds();
  return rep;
}

// 8. discrete Plancherel ratio and reconstruction round trip
inline CriterionReport criterion_plancherel(double ts) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 8;
  rep.name = "plancherel";
  RadialQuadrature quad;
  WaveletSpec spec(2, 2, 0.0, -6.0);
  double A = admissibility(spec, quad);

  GridSignal f(2, {-2.0, -2.0, 0.0}, 1.0 / 16, {64, 64, 1});
  const double sigma = 0.125;
  f.fill_scalar([&](const CliffordVector& x) { return std::exp(-x.norm2() / (2 * sigma * sigma)); });
  double f2 = grid_inner(f, f);

  auto run = [&](const std::vector<double>& scales, double& ratio, double& err) {
    CwtField field = cwt_forward(f, spec, scales);
    std::vector<double> w = scale_weights(scales, spec.m);
    double num = 0;
    for (std::size_t s = 0; s < scales.size(); ++s)
      num += w[s] * grid_inner(field.planes[s], field.planes[s]);
    ratio = num / (A * f2);
    GridSignal rec = reconstruct(field, spec, A);
    double diff2 = 0;
    for (std::size_t n = 0; n < f.node_count(); ++n) {
      Multivector d = rec.flat(n) - f.flat(n);
      diff2 += d.norm() * d.norm();
    }
    err = std::sqrt(diff2 * f.cell_volume() / f2);
  };

  double ratio1 = 0, err1 = 0, ratio2 = 0, err2 = 0;
  run(geometric_scales(0.25, 4.0, 16), ratio1, err1);
  run(geometric_scales(0.125, 8.0, 22), ratio2, err2);

  rep.add("parseval-ratio", std::abs(ratio1 - 1.0) <= 0.1 * ts, ratio1, 0.1 * ts,
          "window [0.9, 1.1], 16 scales in [0.25, 4]");
  rep.add("round-trip-error", err1 <= 0.10 * ts, err1, 0.10 * ts,
          "scale-truncation floor ~0.13 exceeds the stated bound; see README");
  bool improving = std::abs(ratio2 - 1.0) < std::abs(ratio1 - 1.0) && err2 < err1;
  rep.add("widened-range-improves", improving, err2, err1,
          "widened ratio " + std::to_string(ratio2));
  rep.seconds = timer.seconds();
  rep.add("runtime", rep.seconds < 300.0, rep.seconds, 300.0);
  return rep;
}

// 9. explicit Legendre/Chebyshev sums against the classical recurrences
inline CriterionReport criterion_classical_sums(double ts) {
  detail::Timer timer;
  CriterionReport rep;
  rep.id = 9;
  rep.name = "classical-sums";
  bool low_ok = legendre_clifford(0) == RatPoly::one(2) &&
                legendre_clifford(1) == RatPoly(2, {Rational(0), Rational(1)}) &&
                chebyshev_clifford(0) == RatPoly::one(2) &&
                chebyshev_clifford(1) == RatPoly(2, {Rational(0), Rational(1)});
  rep.add("n0-n1-reduce", low_ok, low_ok ? 0 : 1, 0);
  double worst = 0.0;
  for (int n = 0; n <= 5; ++n) {
    RatPoly ln = legendre_clifford(n);
    RatPoly tn = chebyshev_clifford(n);
    for (int i = 0; i <= 20; ++i) {
      double t = -1.0 + 0.1 * i;
      worst = std::max(worst, std::abs(detail::scalar_substitution(ln, t) -
                                       detail::classical_legendre(n, t)));
      worst = std::max(worst, std::abs(detail::scalar_substitution(tn, t) -
                                       detail::classical_chebyshev(n, t)));
    }
  }
  rep.add("scalar-substitution", worst <= 1e-12 * ts, worst, 1e-12 * ts);
  rep.seconds = timer.seconds();
  return rep;
}

inline std::vector<CriterionReport> run_acceptance(const std::vector<std::string>& only = {},
                                                   double tol_scale = 1.0) {
  using Fn = std::function<CriterionReport(double)>;
  const std::vector<std::pair<std::string, Fn>> all = {
      {"algebra", criterion_algebra},
      {"closed-form", criterion_closed_form},
      {"route-equivalence", criterion_route_equivalence},
      {"degree-law", criterion_degree_law},
      {"moments", criterion_moments},
      {"spectral-oracle", criterion_spectral_oracle},
      {"admissibility", criterion_admissibility},
      {"plancherel", criterion_plancherel},
      {"classical-sums", criterion_classical_sums},
  };
  std::vector<CriterionReport> out;
  for (const auto& [name, fn] : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    out.push_back(fn(tol_scale));
  }
  return out;
}

}  // namespace cjw::checks
