#pragma once

#include <optional>
#include <vector>

#include "caustic/spectral.hpp"

namespace caustic {

struct SemiclassicalParams;

/// One row of a time series. mass is the L2 norm (not its square).
struct ObservableRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double sup_norm = 0.0;
  double sigma_norm = 0.0;
};

struct ErrorNorms {
  double l2 = 0.0;
  double sup = 0.0;
};

/// (1/2)||eps u_x||^2 + lambda eps^alpha / (sigma+1) ||u||_{2 sigma + 2}^{2 sigma + 2},
/// derivative taken spectrally.
double energy(const WaveField& field, const SemiclassicalParams& params);

/// ||f|| + ||(x - center) f|| + ||f_x||. center defaults to the domain midpoint.
double sigma_norm(const WaveField& field, std::optional<double> center = std::nullopt);

std::vector<double> position_density(const WaveField& field);

/// forward_dft of |u|^2; Hermitian because the density is real.
SpectrumField density_spectrum(const WaveField& field);

/// u_j * exp(sign * i (x_j - center)^2 / (2 eps)). sign must be +1 or -1.
ComplexVector maslov_adjusted(const WaveField& field, double epsilon, int sign, double center);

/// L2 and sup norms of a - b. Throws GridMismatch.
ErrorNorms error_norms(const WaveField& a, const WaveField& b);

ObservableRecord observe(const WaveField& field, const SemiclassicalParams& params, double t,
                         std::optional<double> sigma_center = std::nullopt);

}  // namespace caustic
