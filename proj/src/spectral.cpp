#include "caustic/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "caustic/diagnostics.hpp"
#include "caustic/errors.hpp"

namespace caustic {

namespace {

constexpr double kPi = std::numbers::pi;

// In-place forward/backward plans over an FFTW-aligned scratch buffer. The
// FFTW planner is not thread-safe, so plan creation and destruction are
// serialised; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
public:
  explicit FftPlan(std::size_t n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    buffer_ = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    forward_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  Complex* data() { return reinterpret_cast<Complex*>(buffer_); }
  std::size_t size() const { return n_; }
  void forward() { fftw_execute(forward_); }
  void backward() { fftw_execute(backward_); }

private:
  std::size_t n_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

FftPlan& plan_for(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

// Natural FFT order slot for wavenumber index k.
std::size_t natural_slot(long k, std::size_t n) {
  const long nl = static_cast<long>(n);
  return static_cast<std::size_t>(((k % nl) + nl) % nl);
}

}  // namespace

// ---------------------------------------------------------------- GridSpec

GridSpec::GridSpec(double x_min, double x_max, std::size_t num_points)
    : x_min_(x_min), x_max_(x_max), n_(num_points) {
  if (num_points < 4 || num_points % 2 != 0) {
    throw ValidationError("grid: num_points must be even and >= 4, got " +
                          std::to_string(num_points));
  }
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw ValidationError("grid: need finite x_max > x_min");
  }
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

// --------------------------------------------------------------- WaveField

WaveField::WaveField(GridSpec grid) : grid_(grid), values_(grid.size()) {}

WaveField::WaveField(GridSpec grid, ComplexVector values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("wave field: " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.size()));
  }
}

WaveField WaveField::from_function(const GridSpec& grid,
                                   const std::function<Complex(double)>& fn) {
  ComplexVector v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(grid.node(j));
  return WaveField(grid, std::move(v));
}

bool WaveField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

WaveField& WaveField::operator*=(Complex a) {
  for (auto& z : values_) z *= a;
  return *this;
}

WaveField operator-(const WaveField& a, const WaveField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("fields live on different grids");
  WaveField out(a.grid());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
  return out;
}

// ----------------------------------------------------------- SpectrumField

SpectrumField::SpectrumField(GridSpec grid, ComplexVector centered_coeffs)
    : grid_(grid), coeffs_(std::move(centered_coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw ValidationError("spectrum: coefficient count does not match grid");
  }
}

SpectrumField::SpectrumField(GridSpec grid) : grid_(grid), coeffs_(grid.size()) {}

std::size_t SpectrumField::slot(long k) const {
  if (k < grid_.k_min() || k >= grid_.k_end()) {
    throw std::out_of_range("spectrum: wavenumber index " + std::to_string(k) +
                            " outside [-N/2, N/2)");
  }
  return static_cast<std::size_t>(k - grid_.k_min());
}

Complex SpectrumField::at(long k) const { return coeffs_[slot(k)]; }
Complex& SpectrumField::at(long k) { return coeffs_[slot(k)]; }

// ------------------------------------------------------------- transforms

SpectrumField forward_dft(const WaveField& field) {
  const std::size_t n = field.size();
  FftPlan& plan = plan_for(n);
  std::copy(field.values().begin(), field.values().end(), plan.data());
  plan.forward();

  const double scale = 1.0 / static_cast<double>(n);
  SpectrumField out(field.grid());
  const long half = static_cast<long>(n / 2);
  for (long k = -half; k < half; ++k) {
    out.at(k) = plan.data()[natural_slot(k, n)] * scale;
  }
  return out;
}

WaveField inverse_dft(const SpectrumField& spectrum) {
  const std::size_t n = spectrum.size();
  FftPlan& plan = plan_for(n);
  const long half = static_cast<long>(n / 2);
  for (long k = -half; k < half; ++k) {
    plan.data()[natural_slot(k, n)] = spectrum.at(k);
  }
  plan.backward();
  return WaveField(spectrum.grid(), ComplexVector(plan.data(), plan.data() + n));
}

std::vector<double> physical_wavenumbers(const GridSpec& grid) {
  std::vector<double> xi(grid.size());
  const double base = 2.0 * kPi / grid.length();
  for (std::size_t i = 0; i < xi.size(); ++i) {
    xi[i] = base * static_cast<double>(static_cast<long>(i) + grid.k_min());
  }
  return xi;
}

double l2_norm(const WaveField& field) {
  double s = 0.0;
  for (Complex z : field.values()) s += std::norm(z);
  return std::sqrt(s * field.grid().dx());
}

double sup_norm(const WaveField& field) {
  double m = 0.0;
  for (Complex z : field.values()) m = std::max(m, std::abs(z));
  return m;
}

WaveField spectral_derivative(const WaveField& field) {
  const SpectralMultiplier ddx(field.grid(), [](double xi) { return Complex(0.0, xi); });
  WaveField out = field;
  ddx.apply(out);
  return out;
}

double boundary_mass_fraction(const WaveField& field, double band_fraction) {
  const GridSpec& g = field.grid();
  const double band = 0.5 * band_fraction * g.length();
  double edge = 0.0;
  double total = 0.0;
  for (std::size_t j = 0; j < field.size(); ++j) {
    const double x = g.node(j);
    const double m = std::norm(field[j]);
    total += m;
    if (x - g.x_min() < band || g.x_max() - x <= band) edge += m;
  }
  return total > 0.0 ? edge / total : 0.0;
}

ComplexVector continuous_fourier(const WaveField& field, std::span<const double> xi) {
  const double leak = boundary_mass_fraction(field);
  if (leak > 1e-10) {
    warn("continuous_fourier: " + std::to_string(leak) +
         " of the mass is near the domain ends; the periodic quadrature "
         "may not approximate the line integral");
  }
  const GridSpec& g = field.grid();
  const Complex prefactor = std::polar(1.0 / std::sqrt(2.0 * kPi), -kPi / 4.0);
  const double dx = g.dx();
  ComplexVector out(xi.size());
  for (std::size_t m = 0; m < xi.size(); ++m) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < field.size(); ++j) {
      acc += std::polar(1.0, -g.node(j) * xi[m]) * field[j];
    }
    out[m] = prefactor * acc * dx;
  }
  return out;
}

ComplexVector continuous_inverse_fourier(const WaveField& spectrum_samples,
                                         std::span<const double> x) {
  const double leak = boundary_mass_fraction(spectrum_samples);
  if (leak > 1e-10) {
    warn("continuous_inverse_fourier: " + std::to_string(leak) +
         " of the mass is near the ends of the frequency grid");
  }
  const GridSpec& g = spectrum_samples.grid();
  // (2 i pi)^{1/2} / (2 pi) = (2 pi)^{-1/2} e^{i pi/4}
  const Complex prefactor = std::polar(1.0 / std::sqrt(2.0 * kPi), kPi / 4.0);
  const double dxi = g.dx();
  ComplexVector out(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < spectrum_samples.size(); ++j) {
      acc += std::polar(1.0, g.node(j) * x[m]) * spectrum_samples[j];
    }
    out[m] = prefactor * acc * dxi;
  }
  return out;
}

// ------------------------------------------------------ SpectralMultiplier

SpectralMultiplier::SpectralMultiplier(const GridSpec& grid,
                                       const std::function<Complex(double)>& symbol)
    : grid_(grid), natural_order_(grid.size()) {
  const std::size_t n = grid.size();
  const auto xi = physical_wavenumbers(grid);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i) + grid.k_min();
    natural_order_[natural_slot(k, n)] = symbol(xi[i]) * scale;
  }
}

void SpectralMultiplier::apply(WaveField& field) const {
  if (!(field.grid() == grid_)) throw GridMismatch("multiplier applied on a different grid");
  const std::size_t n = field.size();
  FftPlan& plan = plan_for(n);
  Complex* buf = plan.data();
  std::copy(field.values().begin(), field.values().end(), buf);
  plan.forward();
  for (std::size_t i = 0; i < n; ++i) buf[i] *= natural_order_[i];
  plan.backward();
  std::copy(buf, buf + n, field.values().begin());
}

}  // namespace caustic
