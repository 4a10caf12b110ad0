// Command-line driver for the caustic experiments.
//
//   caustic_cli focal --alpha 2.5 --out runs/focal
//   caustic_cli scatter --sigma 2 --lambda 1 5 25 --jobs 3 --out runs/scatter
//   caustic_cli cusp --preset cusp-alpha3
//   caustic_cli converge | lemma3 | alias | list-presets

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "caustic/errors.hpp"
#include "caustic/experiments.hpp"

using namespace caustic;
using nlohmann::json;

namespace {

struct Common {
  std::string out = "out";
  std::string config;
  std::string preset;
  std::optional<double> dt;
  std::optional<std::size_t> modes;
  std::string scheme;
  std::size_t jobs = 1;
};

Overrides overrides_of(const Common& c) {
  Overrides ov;
  ov.dt = c.dt;
  ov.modes = c.modes;
  if (!c.scheme.empty()) ov.scheme = parse_scheme(c.scheme);
  return ov;
}

std::vector<Preset> resolve(const Common& c, std::vector<Preset> from_flags, PresetKind kind) {
  if (!c.preset.empty()) from_flags.insert(from_flags.begin(), find_preset(c.preset));
  if (from_flags.empty() && c.config.empty()) {
    throw ValidationError("give parameters, --preset or --config");
  }
  if (from_flags.empty()) {
    Preset p;
    p.kind = kind;
    from_flags.push_back(p);
  }
  for (Preset& p : from_flags) {
    if (!c.config.empty()) apply_config_file(p, c.config);
    if (p.kind != kind) throw ValidationError("preset '" + p.name + "' is not a " + std::string(to_string(kind)) + " preset");
    apply_overrides(p, overrides_of(c));
  }
  return from_flags;
}

template <class Summary, class Run, class ToJson>
void run_all(const Common& c, const std::vector<Preset>& presets, Run run, ToJson to_json) {
  std::vector<json> results(presets.size());
  parallel_for(presets.size(), c.jobs, [&](std::size_t i) {
    const std::filesystem::path dir =
        presets.size() == 1 ? std::filesystem::path(c.out) : std::filesystem::path(c.out) / presets[i].name;
    const Summary s = run(presets[i], dir);
    results[i] = to_json(s);
    results[i]["preset"] = presets[i].name;
    results[i]["out"] = dir.string();
  });
  for (const json& r : results) std::cout << r.dump() << '\n';
}

std::string regime_name(Regime r) { return std::string(to_string(r)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step simulations of the semiclassical NLS near caustics"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--out", c.out, "Output directory");
  app.add_option("--config", c.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--preset", c.preset, "Registered preset name");
  app.add_option("--dt", c.dt, "Time step");
  app.add_option("--modes", c.modes, "Number of grid points");
  app.add_option("--scheme", c.scheme, "lie or strang")->check(CLI::IsMember({"lie", "strang"}));
  app.add_option("--jobs", c.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  std::vector<double> focal_alpha, cusp_alpha, scatter_sigma, scatter_lambda;
  double stability_factor = 1.5;
  auto* focal = app.add_subcommand("focal", "Focal-point runs (linear vs nonlinear)");
  focal->add_option("--alpha", focal_alpha, "Nonlinearity exponent(s)");
  auto* scatter = app.add_subcommand("scatter", "Scattering operator runs");
  scatter->add_option("--sigma", scatter_sigma, "Nonlinearity power(s)");
  scatter->add_option("--lambda", scatter_lambda, "Coupling(s)");
  scatter->add_option("--t-stability", stability_factor, "T factor for the stability run (<= 1 skips)");
  auto* cusp = app.add_subcommand("cusp", "Cusp runs (linear vs nonlinear)");
  cusp->add_option("--alpha", cusp_alpha, "Nonlinearity exponent(s)");
  auto* converge = app.add_subcommand("converge", "Lie/Strang self-convergence study");
  auto* lemma3 = app.add_subcommand("lemma3", "Error scaling in eps at the subcritical focus");
  auto* alias = app.add_subcommand("alias", "Aliasing and truncation diagnostics");
  auto* list = app.add_subcommand("list-presets", "Print the registered presets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*focal) {
      std::vector<Preset> ps;
      for (double a : focal_alpha) ps.push_back(focal_preset(a));
      run_all<FocalSummary>(c, resolve(c, ps, PresetKind::Focal), run_focal, [](const FocalSummary& s) {
        return json{{"alpha", s.alpha},
                    {"regime", regime_name(s.regime)},
                    {"sup_density_error", s.sup_density_error},
                    {"l2_error", s.l2_error},
                    {"maslov_im_error", s.maslov_im_error},
                    {"mass_drift", std::max(s.mass_drift_linear, s.mass_drift_nonlinear)}};
      });
    } else if (*scatter) {
      std::vector<Preset> ps;
      if (!scatter_sigma.empty() || !scatter_lambda.empty()) {
        if (scatter_sigma.empty()) scatter_sigma = {2.0};
        if (scatter_lambda.empty()) scatter_lambda = {1.0};
        for (double s : scatter_sigma) {
          for (double l : scatter_lambda) ps.push_back(scatter_preset(s, l));
        }
      }
      run_all<ScatterSummary>(
          c, resolve(c, ps, PresetKind::Scatter),
          [&](const Preset& p, const std::filesystem::path& dir) { return run_scatter(p, dir, stability_factor); },
          [](const ScatterSummary& s) {
            return json{{"sigma", s.sigma},
                        {"lambda", s.lambda},
                        {"T", s.T},
                        {"l2_change", s.l2_change},
                        {"density_change", s.density_change},
                        {"t_stability", s.t_stability},
                        {"max_leak_fraction", s.max_leak},
                        {"mass_drift", s.mass_drift}};
          });
    } else if (*cusp) {
      std::vector<Preset> ps;
      for (double a : cusp_alpha) ps.push_back(cusp_preset(a));
      run_all<CuspSummary>(c, resolve(c, ps, PresetKind::Cusp), run_cusp, [](const CuspSummary& s) {
        return json{{"alpha", s.alpha},
                    {"regime", regime_name(s.regime)},
                    {"sup_relative_density_diff", s.sup_relative_density_diff},
                    {"peak_k_linear", s.peak_k_linear},
                    {"peak_k_nonlinear", s.peak_k_nonlinear},
                    {"out_of_band_fraction", s.out_of_band_fraction}};
      });
    } else if (*converge) {
      const ConvergenceSummary s = run_convergence(c.out, c.modes.value_or(256));
      std::cout << json{{"lie_slope", s.lie_slope}, {"strang_slope", s.strang_slope}, {"out", c.out}}.dump()
                << '\n';
    } else if (*lemma3) {
      const Lemma3Summary s = run_lemma3_scaling(c.out, c.jobs, c.dt.value_or(1e-3));
      std::cout << json{{"sup_slope", s.sup_slope}, {"t2_slope", s.t2_slope},
                        {"predicted", s.predicted_sup}, {"out", c.out}}.dump()
                << '\n';
    } else if (*alias) {
      const AliasSummary s = run_alias_check(c.out);
      std::cout << json{{"fold_max_error", s.fold_max_error},
                        {"band_limited_error", s.band_limited_error},
                        {"gaussian_tail_monotone", s.gaussian_tail_monotone},
                        {"chirp_tail_ratio", s.chirp_tail_ratio},
                        {"out", c.out}}.dump()
                << '\n';
    } else if (*list) {
      for (const Preset& p : preset_registry()) {
        std::printf("%-26s %-8s N=%-5zu eps=%-10.6g sigma=%-4g alpha=%-4g lambda=%-4g t=%-5g dt=%g\n",
                    p.name.c_str(), std::string(to_string(p.kind)).c_str(), p.grid.size(),
                    p.params.epsilon, p.params.sigma, p.params.alpha, p.params.lambda, p.t_final, p.dt);
      }
    }
  } catch (const SimulationError& e) {
    std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
