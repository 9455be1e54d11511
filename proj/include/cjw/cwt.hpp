#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cjw/errors.hpp"
#include "cjw/families.hpp"
#include "cjw/grid.hpp"
#include "cjw/spectral.hpp"

namespace cjw {

// scalar part of a * conj(b) reduces to the Euclidean dot of blade coefficients
inline double mv_dot(const Multivector& a, const Multivector& b) {
  double s = 0;
  for (unsigned i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Normalized copy  a^{-m/2} psi((x - b)/a).
inline Multivector wavelet_copy(const WaveletSpec& spec, double a, const CliffordVector& b,
                                const CliffordVector& x) {
  if (!(a > 0)) throw std::invalid_argument("wavelet_copy: scale must be > 0");
  if (b.dim() != spec.m || x.dim() != spec.m)
    throw std::invalid_argument("wavelet_copy: dimension mismatch");
  std::vector<double> y(spec.m);
  for (int j = 0; j < spec.m; ++j) y[j] = (x.x[j] - b.x[j]) / a;
  CliffordVector yv(std::move(y));
  return spec.psi(yv) * std::pow(a, -spec.m / 2.0);
}

inline std::vector<double> geometric_scales(double amin, double amax, int n) {
  if (!(amin > 0) || !(amax > amin) || n < 2)
    throw std::invalid_argument("geometric_scales: need 0 < amin < amax and n >= 2");
  std::vector<double> s(n);
  double q = std::pow(amax / amin, 1.0 / (n - 1));
  for (int i = 0; i < n; ++i) s[i] = amin * std::pow(q, i);
  return s;
}

// midpoint weights of the scale-invariant measure da/a^{m+1} = dln(a)/a^m on a
// geometric lattice: w_i = ln(q) a_i^{-m}
inline std::vector<double> scale_weights(const std::vector<double>& scales, int m) {
  if (scales.empty()) throw std::invalid_argument("scale_weights: empty scale list");
  if (scales.size() == 1) return {std::pow(scales[0], -m)};
  double q = scales[1] / scales[0];
  for (std::size_t i = 1; i + 1 < scales.size(); ++i) {
    double qi = scales[i + 1] / scales[i];
    if (std::abs(qi - q) > 1e-9 * q)
      throw std::invalid_argument("scale_weights: scales must form a geometric grid");
  }
  double lnq = std::log(q);
  std::vector<double> w(scales.size());
  for (std::size_t i = 0; i < scales.size(); ++i) w[i] = lnq * std::pow(scales[i], -m);
  return w;
}

struct CwtField {
  int ell, m;
  double alpha, beta;
  std::vector<double> scales;
  std::vector<GridSignal> planes;  // one coefficient grid per scale

  WaveletSpec spec() const { return WaveletSpec(ell, m, alpha, beta); }
};

namespace detail {

// product tables e_I e_j for a pure-vector right factor
struct VectorMulTable {
  int m;
  std::vector<int> sign;     // [mask * m + j]
  std::vector<unsigned> out;

  explicit VectorMulTable(int m_) : m(m_), sign(std::size_t(1 << m_) * m_), out(sign.size()) {
    for (unsigned mask = 0; mask < (1u << m); ++mask)
      for (int j = 0; j < m; ++j) {
        auto [s, blade] = blade_product(Blade{mask}, Blade{1u << j}, m);
        sign[mask * m + j] = s;
        out[mask * m + j] = blade.mask;
      }
  }
};

inline int env_thread_count() {
  const char* v = std::getenv("CJWAVE_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n > 0 ? n : 1;
}

inline void parallel_over(std::size_t count, const std::function<void(std::size_t)>& body) {
  int nt = env_thread_count();
  if (nt <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t stride = static_cast<std::size_t>(nt);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < count; i += stride) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

// C_{a,b}(f) = sum_x f(x) conj(psi_{a,b}(x)) dV, for every grid position b.
// Scales must satisfy a >= 2 * spacing; larger-scale truncation shows up as
// bias, checked by the Parseval trend tests.
inline CwtField cwt_forward(const GridSignal& f, const WaveletSpec& spec,
                            const std::vector<double>& scales,
                            double boundary_rel_tol = 1e-3) {
  if (f.dim() != spec.m) throw std::invalid_argument("cwt_forward: dimension mismatch");
  for (double a : scales)
    if (a < 2.0 * f.spacing())
      throw scale_range_error("cwt_forward: scale " + std::to_string(a) +
                              " below 2 * grid spacing " + std::to_string(f.spacing()));
  auto [peak, boundary] = f.boundary_profile();
  if (peak > 0 && boundary > boundary_rel_tol * peak)
    throw std::domain_error("cwt_forward: signal has not decayed at the grid boundary");

  const int m = f.dim();
  const std::size_t nodes = f.node_count();
  const double dv = f.cell_volume();
  const unsigned L = 1u << m;
  detail::VectorMulTable table(m);

  // flatten signal components and node coordinates
  std::vector<std::vector<double>> comp(L, std::vector<double>(nodes));
  std::vector<double> coords(nodes * m);
  {
    std::size_t n = 0;
    for (int i = 0; i < f.extents()[0]; ++i)
      for (int j = 0; j < f.extents()[1]; ++j)
        for (int k = 0; k < f.extents()[2]; ++k, ++n) {
          const Multivector& v = f.flat(n);
          for (unsigned c = 0; c < L; ++c) comp[c][n] = v[c];
          auto p = f.point(i, j, k);
          for (int a = 0; a < m; ++a) coords[n * m + a] = p.x[a];
        }
  }

  CwtField field{spec.ell, spec.m, spec.alpha, spec.beta, scales, {}};
  field.planes.reserve(scales.size());
  for (std::size_t s = 0; s < scales.size(); ++s)
    field.planes.emplace_back(m, f.origin(), f.spacing(), f.extents());

  detail::parallel_over(scales.size(), [&](std::size_t si) {
    const double a = scales[si];
    const double norm = std::pow(a, -m / 2.0);
    GridSignal& plane = field.planes[si];
    std::vector<double> acc(L);
    for (std::size_t bi = 0; bi < nodes; ++bi) {
      std::fill(acc.begin(), acc.end(), 0.0);
      const double* pb = &coords[bi * m];
      for (std::size_t xi = 0; xi < nodes; ++xi) {
        const double* px = &coords[xi * m];
        double r2 = 0;
        double d[3] = {0, 0, 0};
        for (int c = 0; c < m; ++c) {
          d[c] = (px[c] - pb[c]) / a;
          r2 += d[c] * d[c];
        }
        auto [A, B] = spec.psi_radial(std::sqrt(r2));
        if (A == 0.0 && B == 0.0) continue;
        A *= norm;
        B *= norm;
        // f(x) * conj(A + B dvec) = A f - B (f dvec)
        for (unsigned c = 0; c < L; ++c) {
          double fc = comp[c][xi];
          if (fc == 0.0) continue;
          if (A != 0.0) acc[c] += A * fc;
          if (B != 0.0) {
            for (int j = 0; j < m; ++j) {
              double dj = d[j];
              if (dj == 0.0) continue;
              acc[table.out[c * m + j]] -= B * fc * dj * table.sign[c * m + j];
            }
          }
        }
      }
      Multivector& out = plane.flat(bi);
      for (unsigned c = 0; c < L; ++c) out.coeff(c) = acc[c] * dv;
    }
  });
  return field;
}

// f_rec(x) = (1/A) sum_{a,b} C_{a,b} psi_{a,b}(x) w_a dV(b)
inline GridSignal reconstruct(const CwtField& field, const WaveletSpec& spec,
                              double admissibility_constant) {
  if (field.planes.empty()) throw std::invalid_argument("reconstruct: empty field");
  if (!(admissibility_constant > 0) || !std::isfinite(admissibility_constant))
    throw std::invalid_argument("reconstruct: missing admissibility constant");
  if (spec.m != field.m || spec.ell != field.ell)
    throw std::invalid_argument("reconstruct: spec does not match field");

  const GridSignal& g0 = field.planes.front();
  const int m = g0.dim();
  const std::size_t nodes = g0.node_count();
  const double dv = g0.cell_volume();
  const unsigned L = 1u << m;
  detail::VectorMulTable table(m);
  std::vector<double> weights = scale_weights(field.scales, m);

  std::vector<double> coords(nodes * m);
  {
    std::size_t n = 0;
    for (int i = 0; i < g0.extents()[0]; ++i)
      for (int j = 0; j < g0.extents()[1]; ++j)
        for (int k = 0; k < g0.extents()[2]; ++k, ++n) {
          auto p = g0.point(i, j, k);
          for (int a = 0; a < m; ++a) coords[n * m + a] = p.x[a];
        }
  }

  GridSignal out(m, g0.origin(), g0.spacing(), g0.extents());
  std::vector<std::vector<double>> acc_all(nodes, std::vector<double>(L, 0.0));

  detail::parallel_over(nodes, [&](std::size_t xi) {
    std::vector<double>& acc = acc_all[xi];
    const double* px = &coords[xi * m];
    for (std::size_t si = 0; si < field.scales.size(); ++si) {
      const double a = field.scales[si];
      const double norm = std::pow(a, -m / 2.0) * weights[si] * dv;
      const GridSignal& plane = field.planes[si];
      for (std::size_t bi = 0; bi < nodes; ++bi) {
        const double* pb = &coords[bi * m];
        double r2 = 0;
        double d[3] = {0, 0, 0};
        for (int c = 0; c < m; ++c) {
          d[c] = (px[c] - pb[c]) / a;
          r2 += d[c] * d[c];
        }
        auto [A, B] = spec.psi_radial(std::sqrt(r2));
        if (A == 0.0 && B == 0.0) continue;
        A *= norm;
        B *= norm;
        const Multivector& C = plane.flat(bi);
        // C * (A + B dvec) = A C + B (C dvec)
        for (unsigned c = 0; c < L; ++c) {
          double cc = C[c];
          if (cc == 0.0) continue;
          if (A != 0.0) acc[c] += A * cc;
          if (B != 0.0) {
            for (int j = 0; j < m; ++j) {
              double dj = d[j];
              if (dj == 0.0) continue;
              acc[table.out[c * m + j]] += B * cc * dj * table.sign[c * m + j];
            }
          }
        }
      }
    }
  });

  const double inv_a = 1.0 / admissibility_constant;
  for (std::size_t n = 0; n < nodes; ++n) {
    Multivector& v = out.flat(n);
    for (unsigned c = 0; c < L; ++c) v.coeff(c) = acc_all[n][c] * inv_a;
  }
  return out;
}

// discrete <f, g> = sum_x scalar_part(f conj(g)) dV
inline double grid_inner(const GridSignal& f, const GridSignal& g) {
  if (f.node_count() != g.node_count() || f.dim() != g.dim())
    throw std::invalid_argument("grid_inner: geometry mismatch");
  double s = 0;
  for (std::size_t n = 0; n < f.node_count(); ++n) s += mv_dot(f.flat(n), g.flat(n));
  return s * f.cell_volume();
}

// [sum over (a,b) of scalar(conj(C(f)) C(g)) w_a dV] / [A <f, g>]
inline double plancherel_ratio(const GridSignal& f, const GridSignal& g, const WaveletSpec& spec,
                               const std::vector<double>& scales, double admissibility_constant) {
  double denom_inner = grid_inner(f, g);
  double scale_norm = std::sqrt(grid_inner(f, f) * grid_inner(g, g));
  if (std::abs(denom_inner) < 1e-12 * (scale_norm > 0 ? scale_norm : 1.0))
    throw std::domain_error("plancherel_ratio: <f, g> is ~0, ratio undefined");

  CwtField cf = cwt_forward(f, spec, scales);
  const bool same = &f == &g;
  CwtField cg_storage = same ? CwtField{0, 2, 0, 0, {}, {}} : cwt_forward(g, spec, scales);
  const CwtField& cg = same ? cf : cg_storage;

  std::vector<double> weights = scale_weights(scales, spec.m);
  double num = 0;
  for (std::size_t si = 0; si < scales.size(); ++si)
    num += weights[si] * grid_inner(cf.planes[si], cg.planes[si]);
  return num / (admissibility_constant * denom_inner);
}

// ---------------------------------------------------------------------------
// CwtField I/O: JSON header + CSV data (scale_index, coords, blade columns)
// ---------------------------------------------------------------------------

inline void write_field(const CwtField& field, const std::string& csv_path,
                        const std::string& header_path) {
  if (field.planes.empty()) throw std::invalid_argument("write_field: empty field");
  nlohmann::json j;
  j["wavelet"] = {{"ell", field.ell}, {"m", field.m}, {"alpha", field.alpha},
                  {"beta", field.beta}};
  j["scales"] = field.scales;
  j["grid"] = grid_header_json(field.planes.front());
  std::ofstream hdr(header_path);
  if (!hdr) throw std::runtime_error("cannot open " + header_path);
  hdr << j.dump(2) << "\n";

  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  int m = field.m;
  csv << "scale_index," << (m == 2 ? "x,y" : "x,y,z");
  for (const auto& n : blade_column_names(m)) csv << "," << n;
  csv << "\n";
  for (std::size_t si = 0; si < field.planes.size(); ++si) {
    const GridSignal& g = field.planes[si];
    for (int i = 0; i < g.extents()[0]; ++i)
      for (int j2 = 0; j2 < g.extents()[1]; ++j2)
        for (int k = 0; k < g.extents()[2]; ++k) {
          csv << si;
          auto p = g.point(i, j2, k);
          for (int a = 0; a < m; ++a) csv << "," << format_double(p.x[a]);
          const auto& v = g.at(i, j2, k);
          for (unsigned mask = 0; mask < v.size(); ++mask) csv << "," << format_double(v[mask]);
          csv << "\n";
        }
  }
}

inline CwtField read_field(const std::string& csv_path, const std::string& header_path) {
  std::ifstream hdr(header_path);
  if (!hdr) throw std::runtime_error("cannot open " + header_path);
  nlohmann::json j = nlohmann::json::parse(hdr);
  CwtField field{j.at("wavelet").at("ell").get<int>(), j.at("wavelet").at("m").get<int>(),
                 j.at("wavelet").at("alpha").get<double>(),
                 j.at("wavelet").at("beta").get<double>(),
                 j.at("scales").get<std::vector<double>>(), {}};
  GridSignal proto = grid_from_header_json(j.at("grid"));
  for (std::size_t s = 0; s < field.scales.size(); ++s) field.planes.push_back(proto);

  std::ifstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot open " + csv_path);
  std::string line;
  if (!std::getline(csv, line)) throw std::invalid_argument("field csv: missing header row");
  int m = field.m;
  std::size_t ncols = 1 + m + (1u << m);
  std::vector<std::size_t> row(field.scales.size(), 0);
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != ncols) throw std::invalid_argument("field csv: bad column count");
    std::size_t si = std::stoul(cells[0]);
    if (si >= field.planes.size()) throw std::invalid_argument("field csv: bad scale index");
    if (row[si] >= proto.node_count()) throw std::invalid_argument("field csv: too many rows");
    Multivector v(m);
    for (unsigned mask = 0; mask < (1u << m); ++mask)
      v.coeff(mask) = std::stod(cells[1 + m + mask]);
    field.planes[si].flat(row[si]++) = v;
  }
  for (std::size_t s = 0; s < row.size(); ++s)
    if (row[s] != proto.node_count()) throw std::invalid_argument("field csv: missing rows");
  return field;
}

}  // namespace cjw
