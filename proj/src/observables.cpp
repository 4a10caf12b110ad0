#include "caustic/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "caustic/errors.hpp"
#include "caustic/propagators.hpp"

namespace caustic {

double energy(const WaveField& field, const SemiclassicalParams& params) {
  const WaveField du = spectral_derivative(field);
  const double dx = field.grid().dx();
  double kinetic = 0.0;
  double potential = 0.0;
  for (std::size_t j = 0; j < field.size(); ++j) {
    kinetic += std::norm(du[j]);
    potential += std::pow(std::norm(field[j]), params.sigma + 1.0);
  }
  kinetic *= 0.5 * params.epsilon * params.epsilon * dx;
  potential *= params.lambda * std::pow(params.epsilon, params.alpha) / (params.sigma + 1.0) * dx;
  return kinetic + potential;
}

double sigma_norm(const WaveField& field, std::optional<double> center) {
  const double c = center.value_or(field.grid().midpoint());
  WaveField weighted = field;
  for (std::size_t j = 0; j < field.size(); ++j) {
    weighted[j] *= field.grid().node(j) - c;
  }
  return l2_norm(field) + l2_norm(weighted) + l2_norm(spectral_derivative(field));
}

std::vector<double> position_density(const WaveField& field) {
  std::vector<double> rho(field.size());
  for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = std::norm(field[j]);
  return rho;
}

SpectrumField density_spectrum(const WaveField& field) {
  ComplexVector rho(field.size());
  for (std::size_t j = 0; j < rho.size(); ++j) rho[j] = std::norm(field[j]);
  return forward_dft(WaveField(field.grid(), std::move(rho)));
}

ComplexVector maslov_adjusted(const WaveField& field, double epsilon, int sign, double center) {
  if (sign != 1 && sign != -1) throw ValidationError("maslov_adjusted: sign must be +1 or -1");
  ComplexVector out(field.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double y = field.grid().node(j) - center;
    out[j] = field[j] * std::polar(1.0, sign * y * y / (2.0 * epsilon));
  }
  return out;
}

ErrorNorms error_norms(const WaveField& a, const WaveField& b) {
  const WaveField d = a - b;
  return {l2_norm(d), sup_norm(d)};
}

ObservableRecord observe(const WaveField& field, const SemiclassicalParams& params, double t,
                         std::optional<double> sigma_center) {
  return {t, l2_norm(field), energy(field, params), sup_norm(field),
          sigma_norm(field, sigma_center)};
}

}  // namespace caustic
