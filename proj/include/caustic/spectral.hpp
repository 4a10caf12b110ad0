#pragma once

// Periodic grids, wave fields and the discrete/continuous Fourier transforms
// every other module is built on.
//
// Index convention: a SpectrumField stores coefficients in centered order,
// slot i <-> wavenumber index k = i - N/2, k in [-N/2, N/2). The forward DFT
// carries the 1/N factor so that a pure mode e^{i m theta} has coefficient 1:
//
//   c_k = (1/N) sum_j u_j exp(-i k theta_j),  theta_j = 2 pi (x_j - x_min) / L.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace caustic {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Uniform periodic grid on [x_min, x_max); the right endpoint is excluded.
class GridSpec {
public:
  /// Throws ValidationError unless N is even, N >= 4 and x_max > x_min.
  GridSpec(double x_min, double x_max, std::size_t num_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t size() const { return n_; }
  double length() const { return x_max_ - x_min_; }
  double dx() const { return length() / static_cast<double>(n_); }
  double midpoint() const { return 0.5 * (x_min_ + x_max_); }
  double node(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx(); }
  std::vector<double> nodes() const;

  /// Lowest and one-past-highest wavenumber index, i.e. -N/2 and N/2.
  long k_min() const { return -static_cast<long>(n_ / 2); }
  long k_end() const { return static_cast<long>(n_ / 2); }

  bool operator==(const GridSpec&) const = default;

private:
  double x_min_;
  double x_max_;
  std::size_t n_;
};

/// Complex samples of a wave function on a GridSpec.
class WaveField {
public:
  explicit WaveField(GridSpec grid);  // zero field
  WaveField(GridSpec grid, ComplexVector values);

  static WaveField from_function(const GridSpec& grid,
                                 const std::function<Complex(double)>& fn);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const ComplexVector& values() const { return values_; }
  ComplexVector& values() { return values_; }
  Complex operator[](std::size_t j) const { return values_[j]; }
  Complex& operator[](std::size_t j) { return values_[j]; }

  bool all_finite() const;

  WaveField& operator*=(Complex a);
  friend WaveField operator*(Complex a, WaveField f) { return f *= a; }
  /// Throws GridMismatch.
  friend WaveField operator-(const WaveField& a, const WaveField& b);

private:
  GridSpec grid_;
  ComplexVector values_;
};

/// Fourier coefficients of a WaveField in centered order.
class SpectrumField {
public:
  SpectrumField(GridSpec grid, ComplexVector centered_coeffs);
  explicit SpectrumField(GridSpec grid);  // all-zero spectrum

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }
  const ComplexVector& coeffs() const { return coeffs_; }
  ComplexVector& coeffs() { return coeffs_; }

  /// Coefficient of wavenumber index k in [-N/2, N/2); throws std::out_of_range.
  Complex at(long k) const;
  Complex& at(long k);
  long index_to_k(std::size_t i) const { return static_cast<long>(i) + grid_.k_min(); }

private:
  std::size_t slot(long k) const;

  GridSpec grid_;
  ComplexVector coeffs_;
};

SpectrumField forward_dft(const WaveField& field);
WaveField inverse_dft(const SpectrumField& spectrum);

/// xi_k = 2 pi k / L for k = -N/2 .. N/2-1 (centered order).
std::vector<double> physical_wavenumbers(const GridSpec& grid);

/// Rectangle-rule L2 norm sqrt(sum |u_j|^2 dx).
double l2_norm(const WaveField& field);
double sup_norm(const WaveField& field);

/// d/dx by multiplication with i xi_k in Fourier space.
WaveField spectral_derivative(const WaveField& field);

/// Fraction of the L2 mass sitting within band_fraction * L / 2 of either end
/// of the domain (band_fraction of the domain in total). Zero field -> 0.
double boundary_mass_fraction(const WaveField& field, double band_fraction = 0.05);

/// Quadrature of F phi(xi) = (2 i pi)^{-1/2} int exp(-i x xi) phi(x) dx, with
/// the principal branch (2 i pi)^{-1/2} = (2 pi)^{-1/2} e^{-i pi/4}.
/// Warns when more than 1e-10 of the mass sits near the domain ends.
ComplexVector continuous_fourier(const WaveField& field, std::span<const double> xi);

/// Inverse of continuous_fourier: the field holds samples g(xi_j) on its grid
/// (read as a frequency grid) and the result is
///   F^{-1} g(x) = (2 i pi)^{1/2} / (2 pi) int exp(i x xi) g(xi) dxi.
ComplexVector continuous_inverse_fourier(const WaveField& spectrum_samples,
                                         std::span<const double> x);

/// A Fourier multiplier m(xi) applied as inverse_dft(m * forward_dft(u)).
/// The multiplier table is built once; apply() is cheap to call repeatedly.
/// Each thread reuses its own FFT plan for a given N.
class SpectralMultiplier {
public:
  SpectralMultiplier(const GridSpec& grid, const std::function<Complex(double)>& symbol);

  const GridSpec& grid() const { return grid_; }
  /// Throws GridMismatch if field.grid() != grid().
  void apply(WaveField& field) const;

private:
  GridSpec grid_;
  ComplexVector natural_order_;  // includes the 1/N normalisation
};

}  // namespace caustic
