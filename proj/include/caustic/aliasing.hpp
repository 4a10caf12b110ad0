#pragma once

// Aliasing and truncation diagnostics for the collocation scheme on
// [0, 2 pi). Term I is the folding of out-of-band modes onto the grid,
//   f#_k = sum_j fhat_{k + jN},
// term II the mass of the modes the grid cannot represent at all.

#include <cstddef>
#include <map>

#include "caustic/spectral.hpp"

namespace caustic {

/// Fourier-series coefficients indexed by integer mode m (basis e^{i m x}).
using ModeMap = std::map<long, Complex>;

struct AliasReport {
  std::size_t n_modes = 0;
  /// L2 norm of the folding error of the N_coarse DFT against the fine spectrum.
  double alias_l2 = 0.0;
  /// sum over N_coarse/2 < |k| <= N_fine/2 of |c_k|.
  double tail_sum = 0.0;
  /// C N_coarse^{-m} from the fitted ladder.
  double tail_bound_estimate = 0.0;
  /// Fitted m; +inf when the tail is at round-off along the whole ladder.
  double decay_exponent = 0.0;
};

/// Spectrum on the N-point grid of [0, 2 pi) with coeffs[k] = sum_j c[k + jN].
SpectrumField alias_fold(const ModeMap& exact_coeffs, std::size_t n);

/// Samples sum_m c_m e^{i m x} on the N-grid (angles reduced exactly mod N),
/// runs forward_dft and returns max |DFT - alias_fold|.
double alias_fold_matches_dft(const ModeMap& exact_coeffs, std::size_t n);

/// field lives on a fine grid whose size is a multiple of n_coarse and at
/// least 4 n_coarse; throws InsufficientResolution otherwise. The decay
/// exponent is fitted on tail_sum over N = 8, 16, ..., N_fine / 4.
AliasReport truncation_tail(const WaveField& field, std::size_t n_coarse);

struct BandLimitedResult {
  double sup_error = 0.0;
  /// Some mode lies outside [-N/2, N/2); the error is then aliasing, not a bug.
  bool aliased = false;
};

/// Free evolution (free_step) of the sampled superposition on [0, 2 pi)
/// against sum_m c_m e^{i m x - i eps m^2 t / 2}; sup error over the nodes.
BandLimitedResult band_limited_exactness(const ModeMap& modes, double epsilon, double t,
                                         std::size_t n);

}  // namespace caustic
