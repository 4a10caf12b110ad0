#pragma once

// Numerical scattering operator of
//
//   i psi_t + (1/2) psi_xx = lambda |psi|^{2 sigma} psi
//
// approximated by the sandwich S psi ~ U(-T) U_NL(2T) U(-T) psi on a wide
// periodic grid, plus the mixed state U(-T) U_NL(T) and the Fourier
// conjugate Z = F S F^{-1}.

#include <optional>
#include <span>
#include <vector>

#include "caustic/observables.hpp"
#include "caustic/propagators.hpp"
#include "caustic/spectral.hpp"

namespace caustic {

struct ScatteringConfig {
  GridSpec grid;
  double sigma = 2.0;
  double lambda = 1.0;
  double T = 55.0;
  /// Step of the nonlinear stage; <= 0 selects 2T / 20000.
  double dt = 0.0;
  SplitScheme scheme = SplitScheme::Strang;
  /// BoundaryLeak once more than this fraction of the mass sits in the
  /// outer edge_fraction of the domain during the nonlinear stage.
  double leak_tolerance = 1e-6;
  double edge_fraction = 0.05;
  double blowup_factor = 1e6;
  /// Observables are logged this many times over the nonlinear stage.
  std::size_t log_points = 100;

  explicit ScatteringConfig(GridSpec g) : grid(g) {}

  /// Throws ValidationError. Warns when sigma <= 1.
  void validate() const;
  /// Scattering theory only covers sigma > 1.
  bool non_scattering_regime() const { return sigma <= 1.0; }
  /// dt actually used for a nonlinear stage of length `span`, adjusted to a
  /// whole number of steps.
  double stage_dt(double span) const;
  SemiclassicalParams params() const { return {1.0, sigma, 1.0, lambda}; }
};

struct ScatteringOutcome {
  WaveField field;
  /// Largest edge mass fraction seen during the nonlinear stage.
  double max_leak = 0.0;
  double dt_used = 0.0;
  /// Observables of the nonlinear stage, t measured from its start.
  std::vector<ObservableRecord> log;
};

/// U(-T) U_NL(2T) U(-T) psi_minus. Throws BlowUp, BoundaryLeak.
ScatteringOutcome scattering_run(const WaveField& psi_minus, const ScatteringConfig& cfg);
WaveField scattering_apply(const WaveField& psi_minus, const ScatteringConfig& cfg);

/// U(-T) U_NL(T) psi0.
ScatteringOutcome mixed_state_run(const WaveField& psi0, const ScatteringConfig& cfg);
WaveField mixed_state(const WaveField& psi0, const ScatteringConfig& cfg);

/// ||S_{factor T} psi - S_T psi|| / ||psi||. Requires factor > 1.
double t_stability(const WaveField& psi_minus, const ScatteringConfig& cfg, double factor);

/// (Zf)(p) for each p in `points`: F^{-1} f is sampled on cfg.grid, scattered,
/// and transformed back with the continuous (2 i pi)^{-1/2} transform. f is
/// read on its own grid, which must contain its support.
ComplexVector z_operator_at(const WaveField& f, const ScatteringConfig& cfg,
                            std::span<const double> points);
/// Zf on f's own grid.
WaveField z_operator(const WaveField& f, const ScatteringConfig& cfg);

}  // namespace caustic
