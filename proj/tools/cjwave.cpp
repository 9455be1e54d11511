// cjwave: polynomial tables, wavelet evaluation, spectra, admissibility,
// CWT round trips, and the verification suite for the 2-parameter
// Clifford-Jacobi wavelet family.
//
// Exit codes: 0 success, 2 invalid parameters or malformed input,
//             3 divergence or derivation-route disagreement,
//             4 unresolvable scale range, 1 unexpected error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cjw/checks.hpp"
#include "cjw/cwt.hpp"
#include "cjw/errors.hpp"
#include "cjw/families.hpp"
#include "cjw/grid.hpp"
#include "cjw/spectral.hpp"

using nlohmann::json;

namespace {

struct ConfigFile {
  json data = json::object();

  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    data = json::parse(in);
  }

  // flags > config file > defaults
  template <typename T>
  void apply(const CLI::App* cmd, const std::string& flag, const std::string& key, T& value) {
    if (cmd->count(flag) > 0) return;
    if (data.contains(key)) value = data.at(key).get<T>();
  }
};

std::string fmt17(double v) { return cjw::format_double(v); }

struct WaveletArgs {
  int ell = 1;
  int m = 2;
  std::string alpha = "0";
  std::string beta = "-6";

  cjw::WaveletSpec spec() const {
    return cjw::WaveletSpec(ell, m, cjw::to_double(cjw::parse_rational(alpha)),
                            cjw::to_double(cjw::parse_rational(beta)));
  }
};

void add_wavelet_options(CLI::App* cmd, WaveletArgs& w) {
  cmd->add_option("-l,--order", w.ell, "wavelet order l");
  cmd->add_option("-m,--dimension", w.m, "algebra dimension m");
  cmd->add_option("--alpha", w.alpha, "weight exponent alpha");
  cmd->add_option("--beta", w.beta, "weight exponent beta");
}

void apply_wavelet_config(const CLI::App* cmd, ConfigFile& cfg, WaveletArgs& w) {
  cfg.apply(cmd, "--order", "l", w.ell);
  cfg.apply(cmd, "--dimension", "m", w.m);
  cfg.apply(cmd, "--alpha", "alpha", w.alpha);
  cfg.apply(cmd, "--beta", "beta", w.beta);
}

json poly_entry_json(const cjw::RatPoly& p) {
  json arr = json::array();
  for (const auto& c : p.c) arr.push_back(cjw::rational_to_string(c));
  return arr;
}

int run_gen_poly(const std::string& family, int max_l, int m, const std::string& alpha_s,
                 const std::string& beta_s, const std::string& out_path) {
  using cjw::Rational;
  cjw::check_order(max_l, cjw::kDefaultMaxOrder);
  cjw::check_dimension(m);
  Rational alpha = cjw::parse_rational(alpha_s);
  Rational beta = cjw::parse_rational(beta_s);

  json doc;
  doc["family"] = family;
  doc["m"] = m;
  doc["max_order"] = max_l;
  bool all_agree = true;
  json entries = json::array();
  for (int l = 0; l <= max_l; ++l) {
    json e;
    e["l"] = l;
    if (family == "jacobi2") {
      doc["alpha"] = alpha_s;
      doc["beta"] = beta_s;
      cjw::RatPoly r1 = cjw::jacobi_Z<Rational>(l, m, alpha, beta);
      cjw::RatPoly r2 = cjw::jacobi_Z_rodrigues<Rational>(l, m, alpha, beta);
      e["coeffs"] = poly_entry_json(r1);
      e["coeffs_rodrigues"] = poly_entry_json(r2);
      e["agree"] = (r1 == r2);
    } else if (family == "gegenbauer") {
      doc["alpha"] = alpha_s;
      cjw::RatPoly r1 = cjw::gegenbauer<Rational>(l, m, alpha);
      cjw::RatPoly r2 = cjw::gegenbauer_rodrigues<Rational>(l, m, alpha);
      e["coeffs"] = poly_entry_json(r1);
      e["coeffs_rodrigues"] = poly_entry_json(r2);
      e["agree"] = (r1 == r2);
    } else if (family == "legendre") {
      e["coeffs"] = poly_entry_json(cjw::legendre_clifford(l, m));
      e["agree"] = true;
    } else if (family == "chebyshev") {
      e["coeffs"] = poly_entry_json(cjw::chebyshev_clifford(l, m));
      e["agree"] = true;
    } else {
      throw std::invalid_argument("unknown family '" + family + "'");
    }
    all_agree = all_agree && e["agree"].get<bool>();
    entries.push_back(e);
  }
  doc["entries"] = entries;

  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output " + out_path);
  out << doc.dump(2) << "\n";
  if (!all_agree) throw cjw::route_mismatch_error("derivation routes disagree; see " + out_path);
  std::printf("wrote %s (%d orders, agree=true)\n", out_path.c_str(), max_l + 1);
  return 0;
}

int run_eval_wavelet(const WaveletArgs& w, double rmax, int samples, int grid_n,
                     double extent, const std::string& out_path) {
  cjw::WaveletSpec spec = w.spec();
  if (grid_n > 0) {
    if (!(extent > 0)) throw std::invalid_argument("--extent must be > 0 with --grid");
    cjw::GridSignal g(spec.m, {-extent, -extent, -extent}, 2.0 * extent / grid_n,
                      {grid_n, grid_n, spec.m == 3 ? grid_n : 1});
    g.fill([&](const cjw::CliffordVector& x) { return spec.psi(x); });
    cjw::write_grid(g, out_path + ".csv", out_path + ".json");
    std::printf("wrote %s.csv and %s.json\n", out_path.c_str(), out_path.c_str());
    return 0;
  }
  if (!(rmax > 0) || samples < 2) throw std::invalid_argument("need --rmax > 0, --samples >= 2");
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output " + out_path);
  out << "r,psi_scalar,psi_vector_mag\n";
  for (int i = 0; i < samples; ++i) {
    double r = rmax * i / (samples - 1);
    auto [a, b] = spec.psi_radial(r);
    out << fmt17(r) << "," << fmt17(a) << "," << fmt17(std::abs(b) * r) << "\n";
  }
  std::printf("wrote %s (%d radial samples)\n", out_path.c_str(), samples);
  return 0;
}

int run_spectrum(const WaveletArgs& w, double rho_min, double rho_max, int samples,
                 bool with_h, bool want_admissibility, const std::string& out_path) {
  if (!(rho_min > 0) || !(rho_max > rho_min) || samples < 2)
    throw std::invalid_argument("need 0 < rho-min < rho-max and samples >= 2");
  cjw::WaveletSpec spec = w.spec();
  cjw::RadialQuadrature quad;
  std::vector<double> rhos(samples);
  for (int i = 0; i < samples; ++i)
    rhos[i] = rho_min * std::pow(rho_max / rho_min, double(i) / (samples - 1));
  auto table = cjw::tabulate_spectrum(spec, rhos, quad);
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output " + out_path);
  cjw::write_spectrum_csv(table, out, with_h);
  std::printf("wrote %s (%d samples)\n", out_path.c_str(), samples);
  if (want_admissibility) {
    double a = cjw::admissibility(spec, quad);
    std::printf("admissibility = %s\n", fmt17(a).c_str());
  }
  return 0;
}

int run_admissibility(const WaveletArgs& w, const std::string& out_path) {
  cjw::WaveletSpec spec = w.spec();
  cjw::RadialQuadrature quad;
  double a = cjw::admissibility(spec, quad);
  json doc = {{"l", spec.ell},     {"m", spec.m},        {"alpha", spec.alpha},
              {"beta", spec.beta}, {"admissibility", a}};
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output " + out_path);
    out << doc.dump(2) << "\n";
  }
  std::printf("admissibility = %s\n", fmt17(a).c_str());
  return 0;
}

int run_cwt(const WaveletArgs& w, const std::string& input_csv, const std::string& input_hdr,
            double gaussian_sigma, int grid_n, double extent, double scale_min,
            double scale_max, int num_scales, const std::string& save_input,
            const std::string& out_base) {
  cjw::WaveletSpec spec = w.spec();
  std::optional<cjw::GridSignal> sig;
  if (!input_csv.empty()) {
    if (input_hdr.empty())
      throw std::invalid_argument("--input requires --input-header (JSON sidecar)");
    sig = cjw::read_grid(input_csv, input_hdr);
  } else if (gaussian_sigma > 0) {
    if (grid_n < 8 || !(extent > 0))
      throw std::invalid_argument("--gaussian requires --grid >= 8 and --extent > 0");
    cjw::GridSignal g(spec.m, {-extent, -extent, -extent}, 2.0 * extent / grid_n,
                      {grid_n, grid_n, spec.m == 3 ? grid_n : 1});
    double s2 = 2.0 * gaussian_sigma * gaussian_sigma;
    g.fill_scalar([&](const cjw::CliffordVector& x) { return std::exp(-x.norm2() / s2); });
    sig = std::move(g);
  } else {
    throw std::invalid_argument("provide --input/--input-header or --gaussian");
  }
  if (!save_input.empty())
    cjw::write_grid(*sig, save_input + ".csv", save_input + ".json");
  auto scales = cjw::geometric_scales(scale_min, scale_max, num_scales);
  cjw::CwtField field = cjw::cwt_forward(*sig, spec, scales);
  cjw::write_field(field, out_base + ".csv", out_base + ".json");
  std::printf("wrote %s.csv and %s.json (%d scales, %zu positions)\n", out_base.c_str(),
              out_base.c_str(), num_scales, sig->node_count());
  return 0;
}

int run_reconstruct(const std::string& field_csv, const std::string& field_hdr,
                    double admissibility_in, const std::string& reference_csv,
                    const std::string& reference_hdr, const std::string& out_base) {
  cjw::CwtField field = cjw::read_field(field_csv, field_hdr);
  cjw::WaveletSpec spec = field.spec();
  double a = admissibility_in;
  if (!(a > 0)) {
    cjw::RadialQuadrature quad;
    a = cjw::admissibility(spec, quad);
  }
  cjw::GridSignal rec = cjw::reconstruct(field, spec, a);
  cjw::write_grid(rec, out_base + ".csv", out_base + ".json");
  std::printf("wrote %s.csv and %s.json (admissibility %s)\n", out_base.c_str(),
              out_base.c_str(), fmt17(a).c_str());
  if (!reference_csv.empty()) {
    cjw::GridSignal ref = cjw::read_grid(reference_csv, reference_hdr);
    if (ref.node_count() != rec.node_count())
      throw std::invalid_argument("reference grid does not match the field grid");
    double diff2 = 0, ref2 = 0;
    for (std::size_t n = 0; n < rec.node_count(); ++n) {
      cjw::Multivector d = rec.flat(n) - ref.flat(n);
      diff2 += d.norm() * d.norm();
      double r = ref.flat(n).norm();
      ref2 += r * r;
    }
    std::printf("round_trip_relative_l2_error = %s\n", fmt17(std::sqrt(diff2 / ref2)).c_str());
  }
  return 0;
}

int run_verify(const std::vector<std::string>& only, const std::string& out_path) {
  double tol_scale = 1.0;
  if (const char* env = std::getenv("CJWAVE_TOL_SCALE")) tol_scale = std::atof(env);
  auto reports = cjw::checks::run_acceptance(only, tol_scale);
  if (reports.empty()) throw std::invalid_argument("no checks match the --only filter");
  json doc;
  bool all = true;
  json checks = json::object();
  for (const auto& rep : reports) {
    json clauses = json::array();
    for (const auto& cl : rep.clauses)
      clauses.push_back({{"name", cl.name},
                         {"pass", cl.pass},
                         {"measured", cl.measured},
                         {"tolerance", cl.tolerance}});
    checks[rep.name] = {{"criterion", rep.id},
                        {"pass", rep.pass},
                        {"seconds", rep.seconds},
                        {"clauses", clauses}};
    all = all && rep.pass;
  }
  doc["checks"] = checks;
  doc["all_pass"] = all;
  doc["tolerance_scale"] = tol_scale;
  std::string text = doc.dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output " + out_path);
    out << text << "\n";
  }
  std::printf("%s\n", text.c_str());
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-parameter Clifford-Jacobi polynomials and monogenic wavelets"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");

  // gen-poly
  auto* gen = app.add_subcommand("gen-poly", "generate polynomial coefficient tables");
  std::string family = "jacobi2";
  int gen_l = 3, gen_m = 2;
  std::string gen_alpha = "1", gen_beta = "-6", gen_out = "poly.json";
  gen->add_option("--family", family, "jacobi2 | gegenbauer | legendre | chebyshev");
  gen->add_option("-l,--order", gen_l, "maximum order");
  gen->add_option("-m,--dimension", gen_m, "algebra dimension");
  gen->add_option("--alpha", gen_alpha, "alpha (rational or decimal literal)");
  gen->add_option("--beta", gen_beta, "beta (rational or decimal literal)");
  gen->add_option("-o,--output", gen_out, "output JSON path");

  // eval-wavelet
  auto* ew = app.add_subcommand("eval-wavelet", "evaluate the mother wavelet");
  WaveletArgs ew_args;
  add_wavelet_options(ew, ew_args);
  double ew_rmax = 3.0;
  int ew_samples = 200, ew_grid = 0;
  double ew_extent = 0.0;
  std::string ew_out = "wavelet.csv";
  ew->add_option("--rmax", ew_rmax, "radial profile extent");
  ew->add_option("--samples", ew_samples, "radial sample count");
  ew->add_option("--grid", ew_grid, "emit a sampled grid signal with N nodes per axis");
  ew->add_option("--extent", ew_extent, "grid half-extent (with --grid)");
  ew->add_option("-o,--output", ew_out, "output path (base name with --grid)");

  // spectrum
  auto* sp = app.add_subcommand("spectrum", "tabulate |psihat|(rho) as CSV");
  WaveletArgs sp_args;
  add_wavelet_options(sp, sp_args);
  double sp_min = 0.05, sp_max = 8.0;
  int sp_samples = 80;
  bool sp_with_h = false, sp_adm = false;
  std::string sp_out = "spectrum.csv";
  sp->add_option("--rho-min", sp_min, "smallest frequency");
  sp->add_option("--rho-max", sp_max, "largest frequency");
  sp->add_option("--samples", sp_samples, "sample count (log-spaced)");
  sp->add_flag("--with-h", sp_with_h, "include the radial integral factor column");
  sp->add_flag("--admissibility", sp_adm, "also compute the admissibility constant");
  sp->add_option("-o,--output", sp_out, "output CSV path");

  // admissibility
  auto* ad = app.add_subcommand("admissibility", "compute the admissibility constant");
  WaveletArgs ad_args;
  add_wavelet_options(ad, ad_args);
  std::string ad_out;
  ad->add_option("-o,--output", ad_out, "optional JSON report path");

  // cwt
  auto* cw = app.add_subcommand("cwt", "forward continuous wavelet transform");
  WaveletArgs cw_args;
  add_wavelet_options(cw, cw_args);
  std::string cw_in, cw_in_hdr, cw_out = "field";
  double cw_sigma = 0.0, cw_extent = 2.0, cw_smin = 0.25, cw_smax = 4.0;
  int cw_grid = 64, cw_nscales = 16;
  cw->add_option("--input", cw_in, "input GridSignal CSV");
  cw->add_option("--input-header", cw_in_hdr, "input JSON sidecar");
  cw->add_option("--gaussian", cw_sigma, "use a built-in Gaussian bump of this width");
  cw->add_option("--grid", cw_grid, "grid nodes per axis (with --gaussian)");
  cw->add_option("--extent", cw_extent, "grid half-extent (with --gaussian)");
  cw->add_option("--scale-min", cw_smin, "smallest scale");
  cw->add_option("--scale-max", cw_smax, "largest scale");
  cw->add_option("--scales", cw_nscales, "number of geometric scales");
  std::string cw_save;
  cw->add_option("--save-input", cw_save, "also write the analyzed signal to this base name");
  cw->add_option("-o,--output", cw_out, "output base name (.csv and .json)");

  // reconstruct
  auto* rc = app.add_subcommand("reconstruct", "inverse transform from a coefficient field");
  std::string rc_field, rc_field_hdr, rc_ref, rc_ref_hdr, rc_out = "reconstruction";
  double rc_adm = 0.0;
  rc->add_option("--field", rc_field, "CwtField CSV")->required();
  rc->add_option("--field-header", rc_field_hdr, "CwtField JSON header")->required();
  rc->add_option("--admissibility", rc_adm, "admissibility constant (computed when absent)");
  rc->add_option("--reference", rc_ref, "reference GridSignal CSV for the round-trip error");
  rc->add_option("--reference-header", rc_ref_hdr, "reference JSON sidecar");
  rc->add_option("-o,--output", rc_out, "output base name (.csv and .json)");

  // verify
  auto* vf = app.add_subcommand("verify", "run the acceptance checks, JSON report");
  std::vector<std::string> vf_only;
  std::string vf_out;
  vf->add_option("--only", vf_only, "run only the named checks");
  vf->add_option("-o,--output", vf_out, "write the JSON report here too");

  try {
    app.parse(argc, argv);

    ConfigFile cfg;
    if (!config_path.empty()) cfg.load(config_path);

    if (gen->parsed()) {
      cfg.apply(gen, "--family", "family", family);
      cfg.apply(gen, "--order", "l", gen_l);
      cfg.apply(gen, "--dimension", "m", gen_m);
      cfg.apply(gen, "--alpha", "alpha", gen_alpha);
      cfg.apply(gen, "--beta", "beta", gen_beta);
      cfg.apply(gen, "--output", "output", gen_out);
      return run_gen_poly(family, gen_l, gen_m, gen_alpha, gen_beta, gen_out);
    }
    if (ew->parsed()) {
      apply_wavelet_config(ew, cfg, ew_args);
      return run_eval_wavelet(ew_args, ew_rmax, ew_samples, ew_grid, ew_extent, ew_out);
    }
    if (sp->parsed()) {
      apply_wavelet_config(sp, cfg, sp_args);
      cfg.apply(sp, "--rho-min", "rho_min", sp_min);
      cfg.apply(sp, "--rho-max", "rho_max", sp_max);
      cfg.apply(sp, "--samples", "samples", sp_samples);
      return run_spectrum(sp_args, sp_min, sp_max, sp_samples, sp_with_h, sp_adm, sp_out);
    }
    if (ad->parsed()) {
      apply_wavelet_config(ad, cfg, ad_args);
      return run_admissibility(ad_args, ad_out);
    }
    if (cw->parsed()) {
      apply_wavelet_config(cw, cfg, cw_args);
      cfg.apply(cw, "--scale-min", "scale_min", cw_smin);
      cfg.apply(cw, "--scale-max", "scale_max", cw_smax);
      cfg.apply(cw, "--scales", "scales", cw_nscales);
      return run_cwt(cw_args, cw_in, cw_in_hdr, cw_sigma, cw_grid, cw_extent, cw_smin,
                     cw_smax, cw_nscales, cw_save, cw_out);
    }
    if (rc->parsed())
      return run_reconstruct(rc_field, rc_field_hdr, rc_adm, rc_ref, rc_ref_hdr, rc_out);
    if (vf->parsed()) return run_verify(vf_only, vf_out);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const cjw::scale_range_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const cjw::divergence_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const cjw::route_mismatch_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: malformed input: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
