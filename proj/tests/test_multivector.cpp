#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cjw/multivector.hpp"

using namespace cjw;

namespace {

Multivector random_mv(std::mt19937& rng, int m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector v(m);
  for (unsigned i = 0; i < v.size(); ++i) v.coeff(i) = u(rng);
  return v;
}

}  // namespace

TEST_CASE("blade product: squares and anticommutation") {
  auto e1 = Blade::from_indices({1}, 2);
  auto e2 = Blade::from_indices({2}, 2);

  auto [s11, b11] = blade_product(e1, e1, 2);
  CHECK(s11 == -1);
  CHECK(b11.mask == 0u);

  auto [s12, b12] = blade_product(e1, e2, 2);
  CHECK(s12 == 1);
  CHECK(b12.mask == 0b11u);

  auto [s21, b21] = blade_product(e2, e1, 2);
  CHECK(s21 == -1);
  CHECK(b21.mask == 0b11u);
}

TEST_CASE("blade product rejects out-of-range indices") {
  CHECK_THROWS_AS(Blade::from_indices({3}, 2), std::invalid_argument);
  CHECK_THROWS_AS(blade_product(Blade{0b100}, Blade{1}, 2), std::invalid_argument);
}

TEST_CASE("blade product is associative on all blades, m <= 4") {
  for (int m = 2; m <= 4; ++m) {
    unsigned n = 1u << m;
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b)
        for (unsigned c = 0; c < n; ++c) {
          auto [s_ab, ab] = blade_product(Blade{a}, Blade{b}, m);
          auto [s1, left] = blade_product(ab, Blade{c}, m);
          auto [s_bc, bc] = blade_product(Blade{b}, Blade{c}, m);
          auto [s2, right] = blade_product(Blade{a}, bc, m);
          CHECK(left.mask == right.mask);
          CHECK(s_ab * s1 == s_bc * s2);
        }
  }
}

TEST_CASE("multivector product examples") {
  int m = 2;
  Multivector one = Multivector::scalar(m, 1.0);
  Multivector e1 = Multivector::basis(m, Blade::from_indices({1}, m));

  // (1 + e1)(1 - e1) = 1 - e1^2 = 2
  Multivector lhs = (one + e1) * (one - e1);
  CHECK(lhs.scalar_part() == Catch::Approx(2.0));
  CHECK((lhs - Multivector::scalar(m, 2.0)).norm() == Catch::Approx(0.0).margin(1e-15));

  // x x = -|x|^2 for x = (3, 4)
  Multivector x = embed(CliffordVector{3.0, 4.0});
  Multivector sq = x * x;
  CHECK(sq.scalar_part() == Catch::Approx(-25.0));
  CHECK((sq - Multivector::scalar(m, -25.0)).norm() == Catch::Approx(0.0).margin(1e-12));

  // orthogonal vectors multiply to a pure wedge
  Multivector xy = embed(CliffordVector{1.0, 0.0}) * embed(CliffordVector{0.0, 1.0});
  CHECK(xy.coeff(Blade::from_indices({1, 2}, m)) == Catch::Approx(1.0));
  CHECK(xy.scalar_part() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("dimension mismatch is rejected") {
  Multivector a(2), b(3);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("conjugation examples and anti-homomorphism") {
  int m = 3;
  Multivector e1 = Multivector::basis(m, Blade::from_indices({1}, m));
  CHECK((conjugate(e1) + e1).norm() == Catch::Approx(0.0).margin(1e-15));
  CHECK(conjugate(Multivector::scalar(m, 5.0)).scalar_part() == Catch::Approx(5.0));

  Multivector e12 = Multivector::basis(m, Blade::from_indices({1, 2}, m));
  CHECK((conjugate(e12) + e12).norm() == Catch::Approx(0.0).margin(1e-15));

  std::mt19937 rng(99);
  for (int it = 0; it < 300; ++it) {
    Multivector a = random_mv(rng, m), b = random_mv(rng, m);
    Multivector lhs = conjugate(a * b);
    Multivector rhs = conjugate(b) * conjugate(a);
    REQUIRE((lhs - rhs).norm() <= 1e-12 * std::max(1.0, lhs.norm()));
  }
}

TEST_CASE("associativity on random multivectors") {
  std::mt19937 rng(2024);
  for (int m : {2, 3, 4}) {
    for (int it = 0; it < 1000; ++it) {
      Multivector a = random_mv(rng, m), b = random_mv(rng, m), c = random_mv(rng, m);
      Multivector lhs = (a * b) * c;
      Multivector rhs = a * (b * c);
      REQUIRE((lhs - rhs).norm() <= 1e-12 * std::max(1.0, lhs.norm()));
    }
  }
}

TEST_CASE("embedded vectors square to minus the squared norm") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int m : {2, 3, 4}) {
    for (int it = 0; it < 200; ++it) {
      std::vector<double> x(m);
      for (auto& v : x) v = u(rng);
      CliffordVector cv(x);
      Multivector resid = embed(cv) * embed(cv) + Multivector::scalar(m, cv.norm2());
      REQUIRE(resid.norm() <= 1e-12 * std::max(1.0, cv.norm2()));
    }
  }
}

TEST_CASE("grade selection splits a product of vectors") {
  Multivector x = embed(CliffordVector{1.0, 2.0});
  Multivector y = embed(CliffordVector{3.0, -1.0});
  Multivector p = x * y;
  // scalar grade is -<x,y>, bivector grade the wedge
  CHECK(p.grade_select(0).scalar_part() == Catch::Approx(-1.0));
  CHECK(p.grade_select(2).coeff(Blade::from_indices({1, 2}, 2)) == Catch::Approx(-7.0));
  CHECK(p.grade_select(1).norm() == Catch::Approx(0.0).margin(1e-15));
}
