#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <random>

#include "cjw/cwt.hpp"
#include "cjw/grid.hpp"

using namespace cjw;

namespace {

std::filesystem::path tmp_dir() {
  auto p = std::filesystem::temp_directory_path() / "cjw_io_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("format_double round trips doubles through text") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int it = 0; it < 1000; ++it) {
    double v = u(rng) * std::pow(10.0, (it % 13) - 6);
    REQUIRE(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("grid signal round trip is exact") {
  auto dir = tmp_dir();
  GridSignal g(2, {-1.0, -0.5, 0.0}, 0.125, {16, 12, 1});
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  g.fill([&](const CliffordVector&) {
    Multivector v(2);
    for (unsigned c = 0; c < v.size(); ++c) v.coeff(c) = u(rng);
    return v;
  });
  auto csv = (dir / "sig.csv").string();
  auto hdr = (dir / "sig.json").string();
  write_grid(g, csv, hdr);
  GridSignal r = read_grid(csv, hdr);
  REQUIRE(r.dim() == g.dim());
  REQUIRE(r.extents() == g.extents());
  REQUIRE(r.spacing() == g.spacing());
  for (std::size_t n = 0; n < g.node_count(); ++n)
    REQUIRE((r.flat(n) - g.flat(n)).norm() == 0.0);
}

TEST_CASE("grid csv header names blades") {
  auto names = blade_column_names(2);
  REQUIRE(names == std::vector<std::string>{"s", "e1", "e2", "e12"});
  auto names3 = blade_column_names(3);
  REQUIRE(names3 ==
          std::vector<std::string>{"s", "e1", "e2", "e12", "e3", "e13", "e23", "e123"});
}

TEST_CASE("cwt field round trip") {
  auto dir = tmp_dir();
  WaveletSpec spec(1, 2, 0.0, -6.0);
  GridSignal f(2, {-2.0, -2.0, 0.0}, 0.25, {16, 16, 1});
  f.fill_scalar([](const CliffordVector& x) { return std::exp(-x.norm2()); });
  CwtField field = cwt_forward(f, spec, geometric_scales(0.5, 2.0, 3));
  auto csv = (dir / "field.csv").string();
  auto hdr = (dir / "field.json").string();
  write_field(field, csv, hdr);
  CwtField r = read_field(csv, hdr);
  REQUIRE(r.scales == field.scales);
  REQUIRE(r.ell == field.ell);
  REQUIRE(r.alpha == field.alpha);
  REQUIRE(r.beta == field.beta);
  for (std::size_t s = 0; s < field.planes.size(); ++s)
    for (std::size_t n = 0; n < field.planes[s].node_count(); ++n)
      REQUIRE((r.planes[s].flat(n) - field.planes[s].flat(n)).norm() == 0.0);
}

TEST_CASE("malformed grid files are rejected") {
  auto dir = tmp_dir();
  auto csv = (dir / "bad.csv").string();
  auto hdr = (dir / "bad.json").string();
  {
    std::ofstream h(hdr);
    h << R"({"m":2,"origin":[0,0],"spacing":0.5,"extents":[8,8]})";
    std::ofstream c(csv);
    c << "x,y,s,e1,e2,e12\n0,0,1,2\n";
  }
  CHECK_THROWS_AS(read_grid(csv, hdr), std::invalid_argument);
  {
    std::ofstream c(csv);
    c << "x,y,s,e1,e2,e12\n";  // header only: too few rows
  }
  CHECK_THROWS_AS(read_grid(csv, hdr), std::invalid_argument);
}
