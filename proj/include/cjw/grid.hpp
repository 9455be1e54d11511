#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cjw/multivector.hpp"

namespace cjw {

// %.17g: enough digits that reading the text back reproduces the double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Clifford-valued samples on a regular rectangular grid in R^m (m = 2, and
// m = 3 behind a size guard). Row-major over (i0, i1[, i2]).
class GridSignal {
 public:
  GridSignal(int m, std::array<double, 3> origin, double spacing, std::array<int, 3> extents)
      : m_(m), origin_(origin), spacing_(spacing), extents_(extents) {
    if (m != 2 && m != 3) throw std::invalid_argument("GridSignal: m must be 2 or 3");
    if (spacing <= 0) throw std::invalid_argument("GridSignal: spacing must be > 0");
    std::size_t n = 1;
    for (int a = 0; a < m; ++a) {
      if (extents_[a] < 8) throw std::invalid_argument("GridSignal: extent must be >= 8 per axis");
      n *= extents_[a];
    }
    if (m == 3) {
      for (int a = 0; a < 3; ++a)
        if (extents_[a] > 32)
          throw std::invalid_argument("GridSignal: m=3 grids are limited to 32 per axis");
    }
    if (m == 2) extents_[2] = 1;
    samples_.assign(n, Multivector(m));
  }

  int dim() const { return m_; }
  double spacing() const { return spacing_; }
  const std::array<double, 3>& origin() const { return origin_; }
  const std::array<int, 3>& extents() const { return extents_; }
  std::size_t node_count() const { return samples_.size(); }
  double cell_volume() const {
    double v = 1;
    for (int a = 0; a < m_; ++a) v *= spacing_;
    return v;
  }

  std::size_t index(int i, int j, int k = 0) const {
    return (static_cast<std::size_t>(i) * extents_[1] + j) * extents_[2] + k;
  }

  Multivector& at(int i, int j, int k = 0) { return samples_[index(i, j, k)]; }
  const Multivector& at(int i, int j, int k = 0) const { return samples_[index(i, j, k)]; }
  Multivector& flat(std::size_t n) { return samples_[n]; }
  const Multivector& flat(std::size_t n) const { return samples_[n]; }

  CliffordVector point(int i, int j, int k = 0) const {
    std::vector<double> x(m_);
    int idx[3] = {i, j, k};
    for (int a = 0; a < m_; ++a) x[a] = origin_[a] + spacing_ * idx[a];
    return CliffordVector(std::move(x));
  }

  void fill(const std::function<Multivector(const CliffordVector&)>& f) {
    for (int i = 0; i < extents_[0]; ++i)
      for (int j = 0; j < extents_[1]; ++j)
        for (int k = 0; k < extents_[2]; ++k) at(i, j, k) = f(point(i, j, k));
  }

  void fill_scalar(const std::function<double(const CliffordVector&)>& f) {
    for (int i = 0; i < extents_[0]; ++i)
      for (int j = 0; j < extents_[1]; ++j)
        for (int k = 0; k < extents_[2]; ++k) {
          Multivector v(m_);
          v.coeff(0u) = f(point(i, j, k));
          at(i, j, k) = v;
        }
  }

  // max |value| over the grid and over the boundary shell
  std::pair<double, double> boundary_profile() const {
    double all = 0, boundary = 0;
    for (int i = 0; i < extents_[0]; ++i)
      for (int j = 0; j < extents_[1]; ++j)
        for (int k = 0; k < extents_[2]; ++k) {
          double n = at(i, j, k).norm();
          all = std::max(all, n);
          bool edge = i == 0 || i == extents_[0] - 1 || j == 0 || j == extents_[1] - 1;
          if (m_ == 3) edge = edge || k == 0 || k == extents_[2] - 1;
          if (edge) boundary = std::max(boundary, n);
        }
    return {all, boundary};
  }

  double norm_l2() const {
    double s = 0;
    for (const auto& v : samples_) {
      double n = v.norm();
      s += n * n;
    }
    return std::sqrt(s * cell_volume());
  }

 private:
  int m_;
  std::array<double, 3> origin_;
  double spacing_;
  std::array<int, 3> extents_;
  std::vector<Multivector> samples_;
};

inline std::vector<std::string> blade_column_names(int m) {
  std::vector<std::string> names;
  for (unsigned mask = 0; mask < (1u << m); ++mask) names.push_back(Blade{mask}.name());
  return names;
}

inline nlohmann::json grid_header_json(const GridSignal& g) {
  nlohmann::json j;
  j["m"] = g.dim();
  j["origin"] = std::vector<double>(g.origin().begin(), g.origin().begin() + g.dim());
  j["spacing"] = g.spacing();
  j["extents"] = std::vector<int>(g.extents().begin(), g.extents().begin() + g.dim());
  return j;
}

inline void write_grid_csv(const GridSignal& g, std::ostream& os) {
  int m = g.dim();
  os << (m == 2 ? "x,y" : "x,y,z");
  for (const auto& n : blade_column_names(m)) os << "," << n;
  os << "\n";
  for (int i = 0; i < g.extents()[0]; ++i)
    for (int j = 0; j < g.extents()[1]; ++j)
      for (int k = 0; k < g.extents()[2]; ++k) {
        auto p = g.point(i, j, k);
        for (int a = 0; a < m; ++a) os << (a ? "," : "") << format_double(p.x[a]);
        const auto& v = g.at(i, j, k);
        for (unsigned mask = 0; mask < v.size(); ++mask) os << "," << format_double(v[mask]);
        os << "\n";
      }
}

inline void write_grid(const GridSignal& g, const std::string& csv_path,
                       const std::string& header_path) {
  std::ofstream hdr(header_path);
  if (!hdr) throw std::runtime_error("cannot open " + header_path);
  hdr << grid_header_json(g).dump(2) << "\n";
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  write_grid_csv(g, csv);
}

inline GridSignal grid_from_header_json(const nlohmann::json& j) {
  int m = j.at("m").get<int>();
  auto org = j.at("origin").get<std::vector<double>>();
  auto ext = j.at("extents").get<std::vector<int>>();
  if (static_cast<int>(org.size()) != m || static_cast<int>(ext.size()) != m)
    throw std::invalid_argument("grid header: origin/extents size mismatch with m");
  std::array<double, 3> origin{0, 0, 0};
  std::array<int, 3> extents{1, 1, 1};
  for (int a = 0; a < m; ++a) {
    origin[a] = org[a];
    extents[a] = ext[a];
  }
  return GridSignal(m, origin, j.at("spacing").get<double>(), extents);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

inline GridSignal read_grid(const std::string& csv_path, const std::string& header_path) {
  std::ifstream hdr(header_path);
  if (!hdr) throw std::runtime_error("cannot open " + header_path);
  nlohmann::json j = nlohmann::json::parse(hdr);
  GridSignal g = grid_from_header_json(j);
  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  std::string line;
  if (!std::getline(csv, line)) throw std::invalid_argument("grid csv: missing header row");
  int m = g.dim();
  std::size_t ncols = m + (1u << m);
  std::size_t row = 0, total = g.node_count();
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    if (row >= total) throw std::invalid_argument("grid csv: more rows than grid nodes");
    auto cells = split_csv_line(line);
    if (cells.size() != ncols) throw std::invalid_argument("grid csv: bad column count");
    Multivector v(m);
    for (unsigned mask = 0; mask < (1u << m); ++mask)
      v.coeff(mask) = std::stod(cells[m + mask]);
    g.flat(row++) = v;
  }
  if (row != total) throw std::invalid_argument("grid csv: fewer rows than grid nodes");
  return g;
}

}  // namespace cjw
