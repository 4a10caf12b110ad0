#pragma once

// Registered experiment presets and the drivers behind the CLI. Every run
// writes CSV artifacts plus a meta.json sidecar into its output directory and
// returns a summary of the numbers it wrote.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "caustic/propagators.hpp"
#include "caustic/spectral.hpp"
#include "caustic/wkb.hpp"

namespace caustic {

enum class PresetKind { Focal, Scatter, Cusp };

std::string_view to_string(PresetKind kind);

struct Preset {
  std::string name;
  PresetKind kind = PresetKind::Focal;
  GridSpec grid{0.0, 1.0, 4};
  /// Center of the initial envelope; also the sigma-norm center.
  double center = 0.0;
  SemiclassicalParams params;
  SplitScheme scheme = SplitScheme::Strang;
  /// Focal/cusp: final time. Scatter: the sandwich half-length T.
  double t_final = 0.0;
  double dt = 1e-3;
  std::size_t snapshot_every = 10;
  /// Scatter only: BoundaryLeak threshold for the nonlinear stage.
  double leak_tolerance = 1e-6;

  /// Initial datum sampled on grid.
  WaveField initial_field() const;
  void validate() const;
};

Preset focal_preset(double alpha);
Preset scatter_preset(double sigma, double lambda);
Preset cusp_preset(double alpha);

const std::vector<Preset>& preset_registry();
/// Throws ValidationError for an unknown name.
const Preset& find_preset(std::string_view name);

/// Applies a JSON config document (keys: preset, grid{x_min,x_max,num_points},
/// params{epsilon,sigma,alpha,lambda}, scheme, t_final, dt, snapshot_every,
/// leak_tolerance). Unknown keys are rejected with ValidationError.
void apply_config_file(Preset& preset, const std::filesystem::path& path);
void apply_config_text(Preset& preset, std::string_view json_text);

/// Command-line overrides, applied after the config file.
struct Overrides {
  std::optional<double> dt;
  std::optional<std::size_t> modes;
  std::optional<SplitScheme> scheme;
};
void apply_overrides(Preset& preset, const Overrides& ov);

/// Relative change of the L2 norm; runs abort with MassDrift above this.
inline constexpr double kMassDriftLimit = 1e-10;

struct FocalSummary {
  double alpha = 0.0;
  Regime regime = Regime::LinearCaustic_LinearProp;
  double alpha_c = 0.0;
  /// sup | |u|^2 - |v|^2 | at the final time.
  double sup_density_error = 0.0;
  double l2_error = 0.0;
  double sup_error = 0.0;
  /// sup | Im(v e^{-i(x-c)^2/(2 eps)}) + f(-(x-c)) | at t = 2.
  double maslov_im_error = 0.0;
  /// sup | v - focal_asymptotic | at the final time.
  double asymptotic_sup_error = 0.0;
  double mass_drift_linear = 0.0;
  double mass_drift_nonlinear = 0.0;
  double energy_drift_nonlinear = 0.0;
};
FocalSummary run_focal(const Preset& preset, const std::filesystem::path& out_dir);

struct ScatterSummary {
  double sigma = 0.0;
  double lambda = 0.0;
  double T = 0.0;
  double dt = 0.0;
  double mass_drift = 0.0;
  double max_leak = 0.0;
  double t_stability = 0.0;
  /// max | |S psi|^2 - |psi|^2 | and the same for the mixed state.
  double density_change = 0.0;
  double mixed_density_change = 0.0;
  double l2_change = 0.0;
  /// Local maxima of |density_spectrum(S psi)| over k >= 1 above 1% of the
  /// largest k >= 1 magnitude.
  std::size_t spectrum_peaks = 0;
  double min_energy = 0.0;
};
/// t_stability_factor <= 1 skips the extra run.
ScatterSummary run_scatter(const Preset& preset, const std::filesystem::path& out_dir,
                           double t_stability_factor = 1.5);

struct CuspSummary {
  double alpha = 0.0;
  Regime regime = Regime::LinearCaustic_LinearProp;
  double alpha_c = 0.0;
  /// max | rho_nl - rho_lin | / max rho_lin at the final time.
  double sup_relative_density_diff = 0.0;
  long peak_k_linear = 0;
  long peak_k_nonlinear = 0;
  /// Fraction of sum |c_k|^2 of the nonlinear density spectrum outside the
  /// linear run's support band (bins above 1e-3 of its peak, dilated by 2).
  double out_of_band_fraction = 0.0;
  std::size_t band_bins = 0;
  double mass_drift_linear = 0.0;
  double mass_drift_nonlinear = 0.0;
};
CuspSummary run_cusp(const Preset& preset, const std::filesystem::path& out_dir);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceSummary {
  std::vector<double> dts;
  std::vector<double> lie_errors;
  std::vector<double> strang_errors;
  /// Same ladder with lambda = 0 against the exact free flow.
  std::vector<double> linear_errors;
  double lie_slope = 0.0;
  double strang_slope = 0.0;
};
/// eps = 1, sigma = 1, lambda = 1, data exp(-2 (x - pi)^2) on [0, 2 pi), T = 1,
/// dt = 1/10 .. 1/160 against Strang at (1/160)/64.
ConvergenceSummary run_convergence(const std::filesystem::path& out_dir,
                                   std::size_t modes = 256);

struct Lemma3Summary {
  std::vector<double> epsilons;
  std::vector<std::size_t> modes;
  /// max over the sampled times of ||u - v||_{L2}
  std::vector<double> sup_l2_errors;
  std::vector<double> t2_errors;
  double sup_slope = 0.0;
  double t2_slope = 0.0;
  double predicted_sup = 0.0;
  double predicted_t2 = 0.0;
};
/// (sigma, alpha) = (2, 2.5), eps = 1/50 .. 1/400, N = 512 .. 4096, dt = 1e-3,
/// ||u - v|| sampled every 10 steps on (0, 2]. Ladder points run on `jobs` threads.
Lemma3Summary run_lemma3_scaling(const std::filesystem::path& out_dir, std::size_t jobs = 1,
                                 double dt = 1e-3);

struct AliasSummary {
  std::size_t fold_cases = 0;
  double fold_max_error = 0.0;
  double band_limited_error = 0.0;
  double out_of_band_error = 0.0;
  std::vector<std::size_t> ladder;
  std::vector<double> gaussian_tails;
  bool gaussian_tail_monotone = false;
  double chirp_tail_ratio = 0.0;  // tail(N=256) / tail(N=1024)
};
AliasSummary run_alias_check(const std::filesystem::path& out_dir);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; rethrows the
/// first exception.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace caustic
