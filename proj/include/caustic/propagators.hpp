#pragma once

// Split-step integrators for
//
//   i eps u_t + (eps^2/2) u_xx = lambda eps^alpha |u|^{2 sigma} u
//
// Both substeps are exact flows: the free step is a unit-modulus Fourier
// multiplier and the nonlinear step a pointwise phase rotation, so mass is
// conserved to round-off and the only time error is the splitting error.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "caustic/observables.hpp"
#include "caustic/spectral.hpp"

namespace caustic {

struct SemiclassicalParams {
  double epsilon = 1.0;
  double sigma = 1.0;
  double alpha = 1.0;
  double lambda = 1.0;  // > 0 defocusing, < 0 focusing

  /// Throws ValidationError unless epsilon > 0, sigma > 0 and alpha >= 1.
  void validate() const;
  /// lambda * epsilon^(alpha - 1), the rate in the pointwise phase rotation.
  double nonlinear_rate() const;
};

enum class SplitScheme { Lie, Strang };

std::string_view to_string(SplitScheme scheme);
/// Accepts "lie" / "strang" (case-insensitive). Throws ValidationError.
SplitScheme parse_scheme(std::string_view name);

struct RunConfig {
  SemiclassicalParams params;
  SplitScheme scheme = SplitScheme::Strang;
  double t_final = 0.0;
  double dt = 1e-3;
  std::size_t snapshot_every = 1;
  /// Evolution aborts with BlowUp once sup|u| exceeds this multiple of the
  /// initial sup-norm, or any value stops being finite.
  double blowup_factor = 1e6;

  /// Throws ValidationError; t_final/dt must be a whole number to within 1e-9.
  void validate() const;
  std::size_t step_count() const;
};

/// Exact free flow over time t (t may be negative): multiplies the spectrum
/// by exp(-i eps xi^2 t / 2).
WaveField free_step(const WaveField& field, double t, double epsilon);

/// | ||free_step(f)|| - ||f|| | / ||f|| (0 for the zero field).
double free_step_is_unitary_check(const WaveField& field, double t, double epsilon);

/// Exact flow of i eps u_t = lambda eps^alpha |u|^{2 sigma} u over time t:
/// u_j <- u_j exp(-i lambda eps^{alpha-1} |u_j|^{2 sigma} t).
WaveField nonlinear_step(const WaveField& field, double t, const SemiclassicalParams& params);
void nonlinear_step_inplace(WaveField& field, double t, const SemiclassicalParams& params);

/// Step-by-step driver shared by every integrator in the project. One step
/// is U(dt) then V(dt) for Lie and V(dt/2) U(dt) V(dt/2) for Strang.
class SplitStepEvolution {
public:
  /// Validates cfg. Throws ValidationError.
  SplitStepEvolution(WaveField initial, const RunConfig& cfg);

  /// Advances one step; throws BlowUp.
  void step();
  void run_to_end();

  const WaveField& field() const { return field_; }
  double time() const { return static_cast<double>(steps_) * cfg_.dt; }
  std::size_t steps_taken() const { return steps_; }
  std::size_t total_steps() const { return total_; }
  bool done() const { return steps_ >= total_; }
  const RunConfig& config() const { return cfg_; }

private:
  void check_blowup() const;

  RunConfig cfg_;
  WaveField field_;
  SpectralMultiplier free_;
  double guard_;
  std::size_t steps_ = 0;
  std::size_t total_;
};

WaveField lie_evolve(const WaveField& field, RunConfig cfg);
WaveField strang_evolve(const WaveField& field, RunConfig cfg);
/// Dispatches on cfg.scheme.
WaveField evolve(const WaveField& field, const RunConfig& cfg);

using SnapshotSink =
    std::function<void(double t, const WaveField& field, const ObservableRecord& record)>;

/// Runs cfg.scheme and calls sink at t = 0, every snapshot_every steps, and
/// at t_final (never twice for the same step). sigma_center defaults to the
/// domain midpoint. Returns the final field; propagates BlowUp.
WaveField evolve_with_snapshots(const WaveField& field, const RunConfig& cfg,
                                const SnapshotSink& sink,
                                std::optional<double> sigma_center = std::nullopt);

}  // namespace caustic
