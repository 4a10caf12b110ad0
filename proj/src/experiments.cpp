#include "caustic/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "caustic/aliasing.hpp"
#include "caustic/csv.hpp"
#include "caustic/errors.hpp"
#include "caustic/observables.hpp"
#include "caustic/scattering.hpp"

namespace caustic {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double relative_change(double before, double after) {
  const double scale = std::abs(before);
  return scale > 0.0 ? std::abs(after - before) / scale : std::abs(after - before);
}

void check_mass(double drift, const std::string& what) {
  if (!(drift <= kMassDriftLimit)) {
    throw MassDrift(what + ": relative mass drift " + fmt_g(drift) + " exceeds " +
                    fmt_g(kMassDriftLimit));
  }
}

json preset_json(const Preset& p) {
  return {{"name", p.name},
          {"kind", std::string(to_string(p.kind))},
          {"grid", {{"x_min", p.grid.x_min()}, {"x_max", p.grid.x_max()},
                    {"num_points", p.grid.size()}}},
          {"center", p.center},
          {"params", {{"epsilon", p.params.epsilon}, {"sigma", p.params.sigma},
                      {"alpha", p.params.alpha}, {"lambda", p.params.lambda}}},
          {"scheme", std::string(to_string(p.scheme))},
          {"t_final", p.t_final},
          {"dt", p.dt},
          {"snapshot_every", p.snapshot_every},
          {"leak_tolerance", p.leak_tolerance}};
}

void write_meta(const std::filesystem::path& dir, const json& meta) {
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / "meta.json");
  if (!os) throw std::runtime_error("cannot write " + (dir / "meta.json").string());
  os << meta.dump(2) << '\n';
}

class Stopwatch {
public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct TrackedRun {
  WaveField final_field;
  std::vector<ObservableRecord> series;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
};

TrackedRun tracked_evolve(const WaveField& initial, const RunConfig& cfg, double center) {
  TrackedRun run{initial, {}, 0.0, 0.0};
  run.final_field = evolve_with_snapshots(
      initial, cfg,
      [&](double, const WaveField&, const ObservableRecord& rec) { run.series.push_back(rec); },
      center);
  run.mass_drift = relative_change(run.series.front().mass, run.series.back().mass);
  run.energy_drift = relative_change(run.series.front().energy, run.series.back().energy);
  return run;
}

RunConfig run_config(const Preset& p, double lambda) {
  RunConfig cfg;
  cfg.params = p.params;
  cfg.params.lambda = lambda;
  cfg.scheme = p.scheme;
  cfg.t_final = p.t_final;
  cfg.dt = p.dt;
  cfg.snapshot_every = p.snapshot_every;
  return cfg;
}

Complex gaussian(double y, double width_coeff) { return {std::exp(-width_coeff * y * y), 0.0}; }

}  // namespace

std::string_view to_string(PresetKind kind) {
  switch (kind) {
    case PresetKind::Focal: return "focal";
    case PresetKind::Scatter: return "scatter";
    case PresetKind::Cusp: return "cusp";
  }
  return "unknown";
}

WaveField Preset::initial_field() const {
  switch (kind) {
    case PresetKind::Focal:
      return gaussian_quadratic_profile(center).sample(grid, params.epsilon);
    case PresetKind::Cusp:
      return gaussian_cosine_profile(center).sample(grid, params.epsilon);
    case PresetKind::Scatter:
      return WaveField::from_function(grid, [c = center](double x) { return gaussian(x - c, 5.0); });
  }
  throw ValidationError("unknown preset kind");
}

void Preset::validate() const {
  params.validate();
  if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
  if (!(t_final >= 0.0)) throw ValidationError("t_final must be >= 0");
  if (snapshot_every < 1) throw ValidationError("snapshot_every must be >= 1");
  if (kind == PresetKind::Scatter) {
    if (params.epsilon != 1.0 || params.alpha != 1.0) {
      throw ValidationError("scatter presets run with epsilon = 1 and alpha = 1");
    }
  } else {
    run_config(*this, params.lambda).validate();
  }
}

Preset focal_preset(double alpha) {
  Preset p;
  p.name = "focal-alpha" + fmt_g(alpha);
  p.kind = PresetKind::Focal;
  p.grid = GridSpec(0.0, 2.0 * kPi, 1024);
  p.center = kPi;
  p.params = {1.0 / 150.0, 2.0, alpha, 1.0};
  p.t_final = 2.0;
  p.dt = 1e-3;
  p.snapshot_every = 10;
  return p;
}

Preset scatter_preset(double sigma, double lambda) {
  Preset p;
  p.name = "scatter-sigma" + fmt_g(sigma) + "-lambda" + fmt_g(lambda);
  p.kind = PresetKind::Scatter;
  p.grid = GridSpec(-100.0 * kPi, 100.0 * kPi, 8192);
  p.center = 0.0;
  p.params = {1.0, sigma, 1.0, lambda};
  p.t_final = 55.0;
  p.dt = 2.0 * p.t_final / 20000.0;
  p.snapshot_every = 200;
  // about 2% of the mass reaches the outer 5% band at t = -55
  p.leak_tolerance = 0.1;
  return p;
}

Preset cusp_preset(double alpha) {
  Preset p;
  p.name = "cusp-alpha" + fmt_g(alpha);
  p.kind = PresetKind::Cusp;
  p.grid = GridSpec(0.0, 2.0 * kPi, 4096);
  p.center = kPi;
  p.params = {1.0 / 150.0, 4.0, alpha, 1.0};
  p.t_final = 3.5;
  p.dt = 1e-3;
  p.snapshot_every = 10;
  return p;
}

const std::vector<Preset>& preset_registry() {
  static const std::vector<Preset> registry = [] {
    std::vector<Preset> r;
    for (double a : {2.5, 2.0, 1.5}) r.push_back(focal_preset(a));
    for (double l : {1.0, 5.0, 25.0, -1.0}) r.push_back(scatter_preset(2.0, l));
    for (double s : {1.5, 3.0}) {
      for (double l : {5.0, 25.0}) r.push_back(scatter_preset(s, l));
    }
    for (double a : {4.0, 3.0, 2.0}) r.push_back(cusp_preset(a));
    return r;
  }();
  return registry;
}

const Preset& find_preset(std::string_view name) {
  for (const Preset& p : preset_registry()) {
    if (p.name == name) return p;
  }
  throw ValidationError("unknown preset '" + std::string(name) + "'");
}

void apply_config_text(Preset& preset, std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  try {
    if (doc.contains("preset")) preset = find_preset(doc.at("preset").get<std::string>());
    for (const auto& [key, value] : doc.items()) {
      if (key == "preset") continue;
      if (key == "grid") {
        for (const auto& [gk, gv] : value.items()) {
          if (gk != "x_min" && gk != "x_max" && gk != "num_points") {
            throw ValidationError("unknown grid key '" + gk + "'");
          }
        }
        preset.grid = GridSpec(value.value("x_min", preset.grid.x_min()),
                               value.value("x_max", preset.grid.x_max()),
                               value.value("num_points", preset.grid.size()));
      } else if (key == "params") {
        for (const auto& [pk, pv] : value.items()) {
          if (pk == "epsilon") preset.params.epsilon = pv.get<double>();
          else if (pk == "sigma") preset.params.sigma = pv.get<double>();
          else if (pk == "alpha") preset.params.alpha = pv.get<double>();
          else if (pk == "lambda") preset.params.lambda = pv.get<double>();
          else throw ValidationError("unknown params key '" + pk + "'");
        }
      } else if (key == "scheme") {
        preset.scheme = parse_scheme(value.get<std::string>());
      } else if (key == "t_final") {
        preset.t_final = value.get<double>();
      } else if (key == "dt") {
        preset.dt = value.get<double>();
      } else if (key == "snapshot_every") {
        preset.snapshot_every = value.get<std::size_t>();
      } else if (key == "leak_tolerance") {
        preset.leak_tolerance = value.get<double>();
      } else if (key == "center") {
        preset.center = value.get<double>();
      } else {
        throw ValidationError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  preset.validate();
}

void apply_config_file(Preset& preset, const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot read config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  apply_config_text(preset, ss.str());
}

void apply_overrides(Preset& preset, const Overrides& ov) {
  if (ov.dt) preset.dt = *ov.dt;
  if (ov.modes) preset.grid = GridSpec(preset.grid.x_min(), preset.grid.x_max(), *ov.modes);
  if (ov.scheme) preset.scheme = *ov.scheme;
  preset.validate();
}

// ------------------------------------------------------------------ focal

FocalSummary run_focal(const Preset& preset, const std::filesystem::path& out_dir) {
  preset.validate();
  const Stopwatch clock;
  const double eps = preset.params.epsilon;
  const double c = preset.center;
  const WaveField u0 = preset.initial_field();

  const TrackedRun lin = tracked_evolve(u0, run_config(preset, 0.0), c);
  const TrackedRun nl = tracked_evolve(u0, run_config(preset, preset.params.lambda), c);
  check_mass(lin.mass_drift, preset.name + " (linear)");
  check_mass(nl.mass_drift, preset.name + " (nonlinear)");

  const WaveField& v = lin.final_field;
  const WaveField& u = nl.final_field;
  FocalSummary s;
  s.alpha = preset.params.alpha;
  s.alpha_c = criticality_index(CausticGeometry::FocalPoint, 1, preset.params.sigma);
  s.regime = classify_regime(s.alpha, CausticGeometry::FocalPoint, 1, preset.params.sigma);
  const ErrorNorms err = error_norms(u, v);
  s.l2_error = err.l2;
  s.sup_error = err.sup;
  for (std::size_t j = 0; j < u.size(); ++j) {
    s.sup_density_error = std::max(s.sup_density_error, std::abs(std::norm(u[j]) - std::norm(v[j])));
  }
  s.mass_drift_linear = lin.mass_drift;
  s.mass_drift_nonlinear = nl.mass_drift;
  s.energy_drift_nonlinear = nl.energy_drift;

  const InitialProfile prof = gaussian_quadratic_profile(c);
  const double t = preset.t_final;
  json extra;
  if (std::abs(t - 1.0) > FocalAsymptoticOptions{}.focus_window) {
    const WaveField asym = focal_asymptotic(t, eps, prof, preset.grid);
    s.asymptotic_sup_error = error_norms(v, asym).sup;
    extra["asymptotic_sup_error"] = s.asymptotic_sup_error;
  }
  const bool at_two = std::abs(t - 2.0) < 1e-12;
  if (at_two) {
    // chirps cancel with sign +1 at t = 0 and -1 at t = 2
    const ComplexVector v0 = maslov_adjusted(u0, eps, +1, c);
    const ComplexVector v2 = maslov_adjusted(v, eps, -1, c);
    const ComplexVector u2 = maslov_adjusted(u, eps, -1, c);
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const double x = preset.grid.node(j);
      const double ref = -prof.f(-(x - c)).real();
      s.maslov_im_error = std::max(s.maslov_im_error, std::abs(v2[j].imag() - ref));
      rows.push_back({x, v0[j].real(), v2[j].imag(), u2[j].imag(), ref});
    }
    write_table_csv(out_dir / "maslov.csv", {"x", "re_v0", "im_v2", "im_u2", "minus_f_reflected"},
                    rows);
    extra["maslov_im_error"] = s.maslov_im_error;
  }

  write_wave_csv(out_dir / "initial.csv", u0);
  write_wave_csv(out_dir / "linear_final.csv", v);
  write_wave_csv(out_dir / "nonlinear_final.csv", u);
  write_wave_csv(out_dir / "error_final.csv", u - v);
  write_series_csv(out_dir / "series_linear.csv", lin.series);
  write_series_csv(out_dir / "series_nonlinear.csv", nl.series);

  json summary = {{"regime", std::string(to_string(s.regime))},
                  {"alpha_c", s.alpha_c},
                  {"sup_density_error", s.sup_density_error},
                  {"l2_error", s.l2_error},
                  {"sup_error", s.sup_error},
                  {"mass_drift_linear", s.mass_drift_linear},
                  {"mass_drift_nonlinear", s.mass_drift_nonlinear},
                  {"energy_drift_nonlinear", s.energy_drift_nonlinear}};
  summary.update(extra);
  write_meta(out_dir, {{"run", "focal"},
                       {"preset", preset_json(preset)},
                       {"sigma_center", c},
                       {"focus_window", FocalAsymptoticOptions{}.focus_window},
                       {"summary", summary},
                       {"wall_time_s", clock.seconds()}});
  return s;
}

// ---------------------------------------------------------------- scatter

ScatterSummary run_scatter(const Preset& preset, const std::filesystem::path& out_dir,
                           double t_stability_factor) {
  preset.validate();
  const Stopwatch clock;
  ScatteringConfig cfg(preset.grid);
  cfg.sigma = preset.params.sigma;
  cfg.lambda = preset.params.lambda;
  cfg.T = preset.t_final;
  cfg.dt = preset.dt;
  cfg.scheme = preset.scheme;
  cfg.leak_tolerance = preset.leak_tolerance;
  const std::size_t steps = static_cast<std::size_t>(std::llround(2.0 * cfg.T / cfg.stage_dt(2.0 * cfg.T)));
  cfg.log_points = std::max<std::size_t>(1, steps / preset.snapshot_every);

  const WaveField psi = preset.initial_field();
  const ScatteringOutcome scat = scattering_run(psi, cfg);
  const ScatteringOutcome mixed = mixed_state_run(psi, cfg);

  ScatterSummary s;
  s.sigma = cfg.sigma;
  s.lambda = cfg.lambda;
  s.T = cfg.T;
  s.dt = scat.dt_used;
  s.max_leak = std::max(scat.max_leak, mixed.max_leak);
  s.mass_drift = relative_change(l2_norm(psi), l2_norm(scat.field));
  check_mass(s.mass_drift, preset.name + " (scattering)");
  check_mass(relative_change(l2_norm(psi), l2_norm(mixed.field)), preset.name + " (mixed)");
  s.l2_change = l2_norm(scat.field - psi);
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double rho = std::norm(psi[j]);
    s.density_change = std::max(s.density_change, std::abs(std::norm(scat.field[j]) - rho));
    s.mixed_density_change = std::max(s.mixed_density_change, std::abs(std::norm(mixed.field[j]) - rho));
  }
  s.min_energy = scat.log.empty() ? 0.0 : scat.log.front().energy;
  for (const ObservableRecord& r : scat.log) s.min_energy = std::min(s.min_energy, r.energy);

  const SpectrumField spec = density_spectrum(scat.field);
  double top = 0.0;
  for (long k = 1; k < spec.grid().k_end(); ++k) top = std::max(top, std::abs(spec.at(k)));
  for (long k = 1; k < spec.grid().k_end(); ++k) {
    const double m = std::abs(spec.at(k));
    const bool left = k == 1 || m > std::abs(spec.at(k - 1));
    const bool right = k + 1 == spec.grid().k_end() || m > std::abs(spec.at(k + 1));
    if (left && right && m > 0.01 * top) ++s.spectrum_peaks;
  }

  if (t_stability_factor > 1.0) s.t_stability = t_stability(psi, cfg, t_stability_factor);

  write_wave_csv(out_dir / "psi_minus.csv", psi);
  write_wave_csv(out_dir / "mixed.csv", mixed.field);
  write_wave_csv(out_dir / "scattered.csv", scat.field);
  write_spectrum_csv(out_dir / "spectrum_scattered.csv", spec);
  write_spectrum_csv(out_dir / "spectrum_mixed.csv", density_spectrum(mixed.field));
  write_series_csv(out_dir / "series_scatter.csv", scat.log);
  write_series_csv(out_dir / "series_mixed.csv", mixed.log);

  json energy_signs = json::array();
  for (const ObservableRecord& r : scat.log) energy_signs.push_back(r.energy >= 0.0 ? 1 : -1);
  json summary = {{"dt_used", s.dt},
                  {"mass_drift", s.mass_drift},
                  {"max_leak_fraction", s.max_leak},
                  {"l2_change", s.l2_change},
                  {"density_change", s.density_change},
                  {"mixed_density_change", s.mixed_density_change},
                  {"spectrum_peaks", s.spectrum_peaks},
                  {"min_energy", s.min_energy},
                  {"energy_sign", energy_signs},
                  {"non_scattering_regime", cfg.non_scattering_regime()}};
  if (t_stability_factor > 1.0) {
    summary["t_stability"] = s.t_stability;
    summary["t_stability_factor"] = t_stability_factor;
  }
  write_meta(out_dir, {{"run", "scatter"},
                       {"preset", preset_json(preset)},
                       {"edge_fraction", cfg.edge_fraction},
                       {"sigma_center", preset.center},
                       {"summary", summary},
                       {"wall_time_s", clock.seconds()}});
  return s;
}

// ------------------------------------------------------------------- cusp

CuspSummary run_cusp(const Preset& preset, const std::filesystem::path& out_dir) {
  preset.validate();
  const Stopwatch clock;
  const WaveField u0 = preset.initial_field();
  const TrackedRun lin = tracked_evolve(u0, run_config(preset, 0.0), preset.center);
  const TrackedRun nl = tracked_evolve(u0, run_config(preset, preset.params.lambda), preset.center);
  check_mass(lin.mass_drift, preset.name + " (linear)");
  check_mass(nl.mass_drift, preset.name + " (nonlinear)");

  CuspSummary s;
  s.alpha = preset.params.alpha;
  s.alpha_c = criticality_index(CausticGeometry::Cusp1D, 1, preset.params.sigma);
  s.regime = classify_regime(s.alpha, CausticGeometry::Cusp1D, 1, preset.params.sigma);
  s.mass_drift_linear = lin.mass_drift;
  s.mass_drift_nonlinear = nl.mass_drift;

  const std::vector<double> rho_l = position_density(lin.final_field);
  const std::vector<double> rho_n = position_density(nl.final_field);
  const double peak_rho = *std::max_element(rho_l.begin(), rho_l.end());
  for (std::size_t j = 0; j < rho_l.size(); ++j) {
    s.sup_relative_density_diff = std::max(s.sup_relative_density_diff, std::abs(rho_n[j] - rho_l[j]));
  }
  s.sup_relative_density_diff /= peak_rho;

  const SpectrumField sl = density_spectrum(lin.final_field);
  const SpectrumField sn = density_spectrum(nl.final_field);
  auto dominant = [](const SpectrumField& sp) {
    long best = 1;
    for (long k = 1; k < sp.grid().k_end(); ++k) {
      if (std::abs(sp.at(k)) > std::abs(sp.at(best))) best = k;
    }
    return best;
  };
  s.peak_k_linear = dominant(sl);
  s.peak_k_nonlinear = dominant(sn);

  const std::size_t n = sl.size();
  double lin_peak = 0.0;
  for (Complex z : sl.coeffs()) lin_peak = std::max(lin_peak, std::abs(z));
  std::vector<bool> band(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(sl.coeffs()[i]) > 1e-3 * lin_peak) {
      for (std::size_t d = (i >= 2 ? i - 2 : 0); d <= std::min(n - 1, i + 2); ++d) band[d] = true;
    }
  }
  double total = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::norm(sn.coeffs()[i]);
    total += w;
    if (!band[i]) outside += w;
    else ++s.band_bins;
  }
  s.out_of_band_fraction = total > 0.0 ? outside / total : 0.0;

  write_wave_csv(out_dir / "linear_final.csv", lin.final_field);
  write_wave_csv(out_dir / "nonlinear_final.csv", nl.final_field);
  write_spectrum_csv(out_dir / "spectrum_linear.csv", sl);
  write_spectrum_csv(out_dir / "spectrum_nonlinear.csv", sn);
  write_series_csv(out_dir / "series_linear.csv", lin.series);
  write_series_csv(out_dir / "series_nonlinear.csv", nl.series);
  write_meta(out_dir, {{"run", "cusp"},
                       {"preset", preset_json(preset)},
                       {"sigma_center", preset.center},
                       {"summary",
                        {{"regime", std::string(to_string(s.regime))},
                         {"alpha_c", s.alpha_c},
                         {"sup_relative_density_diff", s.sup_relative_density_diff},
                         {"peak_k_linear", s.peak_k_linear},
                         {"peak_k_nonlinear", s.peak_k_nonlinear},
                         {"out_of_band_fraction", s.out_of_band_fraction},
                         {"band_bins", s.band_bins},
                         {"mass_drift_linear", s.mass_drift_linear},
                         {"mass_drift_nonlinear", s.mass_drift_nonlinear},
                         {"energy_drift_nonlinear", nl.energy_drift}}},
                       {"wall_time_s", clock.seconds()}});
  return s;
}

// ------------------------------------------------------------ convergence

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("slope fit needs >= 2 points");
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw ValidationError("slope fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

ConvergenceSummary run_convergence(const std::filesystem::path& out_dir, std::size_t modes) {
  const Stopwatch clock;
  const GridSpec grid(0.0, 2.0 * kPi, modes);
  const WaveField u0 = WaveField::from_function(grid, [](double x) { return gaussian(x - kPi, 2.0); });
  RunConfig cfg;
  cfg.params = {1.0, 1.0, 1.0, 1.0};
  cfg.t_final = 1.0;
  ConvergenceSummary s;
  s.dts = {1.0 / 10, 1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160};
  cfg.dt = s.dts.back() / 64.0;
  const WaveField ref = strang_evolve(u0, cfg);
  const WaveField free_ref = free_step(u0, cfg.t_final, 1.0);

  std::vector<std::vector<double>> rows;
  for (double dt : s.dts) {
    cfg.dt = dt;
    cfg.params.lambda = 1.0;
    s.lie_errors.push_back(l2_norm(lie_evolve(u0, cfg) - ref));
    s.strang_errors.push_back(l2_norm(strang_evolve(u0, cfg) - ref));
    cfg.params.lambda = 0.0;
    s.linear_errors.push_back(std::max(l2_norm(lie_evolve(u0, cfg) - free_ref),
                                       l2_norm(strang_evolve(u0, cfg) - free_ref)));
    rows.push_back({dt, s.lie_errors.back(), s.strang_errors.back(), s.linear_errors.back()});
  }
  s.lie_slope = loglog_slope(s.dts, s.lie_errors);
  s.strang_slope = loglog_slope(s.dts, s.strang_errors);

  write_table_csv(out_dir / "convergence.csv", {"dt", "lie_error", "strang_error", "linear_error"},
                  rows);
  write_meta(out_dir, {{"run", "converge"},
                       {"grid", {{"x_min", 0.0}, {"x_max", 2.0 * kPi}, {"num_points", modes}}},
                       {"params", {{"epsilon", 1.0}, {"sigma", 1.0}, {"alpha", 1.0}, {"lambda", 1.0}}},
                       {"t_final", 1.0},
                       {"reference_dt", s.dts.back() / 64.0},
                       {"summary", {{"lie_slope", s.lie_slope}, {"strang_slope", s.strang_slope}}},
                       {"wall_time_s", clock.seconds()}});
  return s;
}

// ----------------------------------------------------------------- lemma3

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

Lemma3Summary run_lemma3_scaling(const std::filesystem::path& out_dir, std::size_t jobs,
                                 double dt) {
  const Stopwatch clock;
  constexpr double sigma = 2.0, alpha = 2.5;
  Lemma3Summary s;
  for (std::size_t i = 0; i < 4; ++i) {
    s.epsilons.push_back(1.0 / (50.0 * std::pow(2.0, static_cast<double>(i))));
    s.modes.push_back(512u << i);
  }
  s.sup_l2_errors.assign(4, 0.0);
  s.t2_errors.assign(4, 0.0);
  const std::size_t sample_every = 10;

  parallel_for(4, jobs, [&](std::size_t i) {
    Preset p = focal_preset(alpha);
    p.grid = GridSpec(0.0, 2.0 * kPi, s.modes[i]);
    p.params.epsilon = s.epsilons[i];
    p.dt = dt;
    const WaveField u0 = p.initial_field();
    SplitStepEvolution u(u0, run_config(p, 1.0));
    SplitStepEvolution v(u0, run_config(p, 0.0));
    const double m0 = l2_norm(u0);
    double worst = 0.0;
    while (!u.done()) {
      u.step();
      v.step();
      if (u.steps_taken() % sample_every == 0 || u.done()) {
        worst = std::max(worst, l2_norm(u.field() - v.field()));
      }
    }
    check_mass(relative_change(m0, l2_norm(u.field())), "lemma3 ladder (nonlinear)");
    s.sup_l2_errors[i] = worst;
    s.t2_errors[i] = l2_norm(u.field() - v.field());
  });

  s.sup_slope = loglog_slope(s.epsilons, s.sup_l2_errors);
  s.t2_slope = loglog_slope(s.epsilons, s.t2_errors);
  const Lemma3Exponents pred = lemma3_error_prediction(s.epsilons.front(), alpha, sigma);
  s.predicted_sup = pred.l2_exponent;
  s.predicted_t2 = pred.t2_exponent;

  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < 4; ++i) {
    rows.push_back({s.epsilons[i], static_cast<double>(s.modes[i]), s.sup_l2_errors[i], s.t2_errors[i]});
  }
  write_table_csv(out_dir / "lemma3.csv", {"epsilon", "modes", "sup_l2_error", "t2_error"}, rows);
  write_meta(out_dir, {{"run", "lemma3"},
                       {"sigma", sigma},
                       {"alpha", alpha},
                       {"lambda", 1.0},
                       {"dt", dt},
                       {"t_final", 2.0},
                       {"sample_every", sample_every},
                       {"summary", {{"sup_slope", s.sup_slope},
                                    {"t2_slope", s.t2_slope},
                                    {"predicted_sup_exponent", s.predicted_sup},
                                    {"predicted_t2_exponent", s.predicted_t2}}},
                       {"wall_time_s", clock.seconds()}});
  return s;
}

// ------------------------------------------------------------------ alias

AliasSummary run_alias_check(const std::filesystem::path& out_dir) {
  const Stopwatch clock;
  AliasSummary s;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> index(-64, 64);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);

  std::vector<std::vector<double>> fold_rows;
  s.fold_cases = 100;
  for (std::size_t c = 0; c < s.fold_cases; ++c) {
    ModeMap modes;
    for (int m = 0; m < 20; ++m) modes[index(rng)] += Complex(amp(rng), amp(rng));
    const double e = alias_fold_matches_dft(modes, 16);
    s.fold_max_error = std::max(s.fold_max_error, e);
    fold_rows.push_back({static_cast<double>(c), e});
  }
  write_table_csv(out_dir / "alias_fold.csv", {"case", "max_error"}, fold_rows);

  const ModeMap in_band = {{-7, {0.3, 0.1}}, {-2, {1.0, 0.0}}, {0, {0.5, -0.5}},
                           {5, {0.0, 0.8}}, {31, {0.2, 0.2}}};
  s.band_limited_error = band_limited_exactness(in_band, 1.0 / 150.0, 2.0, 64).sup_error;
  s.out_of_band_error = band_limited_exactness({{33, {1.0, 0.0}}}, 1.0 / 150.0, 2.0, 64).sup_error;
  write_table_csv(out_dir / "band_limited.csv", {"case", "sup_error", "aliased"},
                  {{0.0, s.band_limited_error, 0.0}, {1.0, s.out_of_band_error, 1.0}});

  const GridSpec fine(0.0, 2.0 * kPi, 2048);
  const WaveField g = WaveField::from_function(fine, [](double x) { return gaussian(x - kPi, 2.0); });
  std::vector<std::vector<double>> tail_rows;
  for (std::size_t n : {64u, 128u, 256u, 512u}) {
    const AliasReport r = truncation_tail(g, n);
    s.ladder.push_back(n);
    s.gaussian_tails.push_back(r.tail_sum);
    tail_rows.push_back({static_cast<double>(n), r.alias_l2, r.tail_sum, r.tail_bound_estimate,
                         r.decay_exponent});
  }
  s.gaussian_tail_monotone = true;
  for (std::size_t i = 1; i < s.gaussian_tails.size(); ++i) {
    if (s.gaussian_tails[i] > s.gaussian_tails[i - 1]) s.gaussian_tail_monotone = false;
  }
  write_table_csv(out_dir / "tail_gaussian.csv",
                  {"n_coarse", "alias_l2", "tail_sum", "tail_bound_estimate", "decay_exponent"},
                  tail_rows);

  const GridSpec chirp_grid(0.0, 2.0 * kPi, 4096);
  const WaveField chirp = gaussian_quadratic_profile(kPi).sample(chirp_grid, 1.0 / 150.0);
  const AliasReport r256 = truncation_tail(chirp, 256);
  const AliasReport r1024 = truncation_tail(chirp, 1024);
  s.chirp_tail_ratio = r256.tail_sum / r1024.tail_sum;
  write_table_csv(out_dir / "tail_chirp.csv",
                  {"n_coarse", "alias_l2", "tail_sum", "tail_bound_estimate", "decay_exponent"},
                  {{256.0, r256.alias_l2, r256.tail_sum, r256.tail_bound_estimate, r256.decay_exponent},
                   {1024.0, r1024.alias_l2, r1024.tail_sum, r1024.tail_bound_estimate,
                    r1024.decay_exponent}});

  write_meta(out_dir, {{"run", "alias"},
                       {"seed", 20240601},
                       {"summary", {{"fold_cases", s.fold_cases},
                                    {"fold_max_error", s.fold_max_error},
                                    {"band_limited_error", s.band_limited_error},
                                    {"out_of_band_error", s.out_of_band_error},
                                    {"gaussian_tail_monotone", s.gaussian_tail_monotone},
                                    {"chirp_tail_ratio", s.chirp_tail_ratio}}},
                       {"wall_time_s", clock.seconds()}});
  return s;
}

}  // namespace caustic
