#include "caustic/wkb.hpp"

#include <cmath>
#include <string>

#include "caustic/diagnostics.hpp"
#include "caustic/errors.hpp"

namespace caustic {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string_view to_string(CausticGeometry geom) {
  return geom == CausticGeometry::FocalPoint ? "focal_point" : "cusp_1d";
}

CausticScales caustic_scales(CausticGeometry geom, int n) {
  if (n < 1) throw ValidationError("dimension n must be >= 1");
  if (geom == CausticGeometry::FocalPoint) return {1.0, 0.5 * n};
  if (n != 1) throw UnsupportedDimension("the cusp caustic is only modelled for n = 1");
  return {2.0 / 3.0, 1.0 / 3.0};
}

Complex InitialProfile::datum(double x, double epsilon) const {
  const double y = x - center;
  return f(y) * std::polar(1.0, phi0(y) / epsilon);
}

WaveField InitialProfile::sample(const GridSpec& grid, double epsilon) const {
  return WaveField::from_function(grid, [&](double x) { return datum(x, epsilon); });
}

InitialProfile gaussian_quadratic_profile(double center, double width_coeff) {
  return {[width_coeff](double y) { return Complex(std::exp(-width_coeff * y * y), 0.0); },
          [](double y) { return -0.5 * y * y; }, center};
}

InitialProfile gaussian_cosine_profile(double center, double width_coeff) {
  return {[width_coeff](double y) { return Complex(std::exp(-width_coeff * y * y), 0.0); },
          [](double y) { return std::cos(y); }, center};
}

WkbSample quadratic_wkb(double t, double x, const InitialProfile& profile, int n) {
  if (std::abs(t - 1.0) < 1e-12) throw AtCaustic("quadratic phase is singular at t = 1");
  if (n < 1) throw ValidationError("dimension n must be >= 1");
  const double y = x - profile.center;
  const double s = 1.0 - t;
  const Complex scale = std::pow(Complex(s, 0.0), -0.5 * n);
  return {y * y / (2.0 * (t - 1.0)), scale * profile.f(y / s)};
}

WaveField focal_asymptotic(double t, double epsilon, const InitialProfile& profile,
                           const GridSpec& grid, FocalAsymptoticOptions opts) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (opts.n < 1) throw ValidationError("dimension n must be >= 1");
  if (std::abs(t - 1.0) <= opts.focus_window) {
    throw TooCloseToFocus("t = " + std::to_string(t) + " lies within " +
                          std::to_string(opts.focus_window) + " of the focus");
  }
  const double s = 1.0 - t;
  const double n = opts.n;
  // t > 1 picks up the Maslov factor e^{-i n pi / 2}
  const Complex prefactor = t < 1.0 ? Complex(std::pow(s, -0.5 * n), 0.0)
                                    : std::polar(std::pow(-s, -0.5 * n), -0.5 * n * kPi);
  WaveField out = WaveField::from_function(grid, [&](double x) {
    const double y = x - profile.center;
    return prefactor * std::polar(1.0, y * y / (2.0 * epsilon * (t - 1.0))) * profile.f(y / s);
  });
  const double edge = boundary_mass_fraction(out);
  if (edge > 1e-10) {
    warn("focal_asymptotic: envelope image reaches the domain ends (edge mass fraction " +
         std::to_string(edge) + ")");
  }
  return out;
}

double criticality_index(CausticGeometry geom, int n, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be > 0");
  caustic_scales(geom, n);  // validates (geom, n)
  // 1 + 2 ell sigma - k, written so that integer cases come out exact
  return geom == CausticGeometry::FocalPoint ? n * sigma : (2.0 * sigma + 1.0) / 3.0;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::LinearCaustic_LinearProp: return "linear_caustic_linear_propagation";
    case Regime::LinearCaustic_NonlinearProp: return "linear_caustic_nonlinear_propagation";
    case Regime::NonlinearCaustic_LinearProp: return "nonlinear_caustic_linear_propagation";
    case Regime::NonlinearCaustic_NonlinearProp: return "nonlinear_caustic_nonlinear_propagation";
    case Regime::Supercritical: return "supercritical";
  }
  return "unknown";
}

bool is_linear_caustic(Regime regime) {
  return regime == Regime::LinearCaustic_LinearProp ||
         regime == Regime::LinearCaustic_NonlinearProp;
}

bool is_nonlinear_caustic(Regime regime) {
  return regime == Regime::NonlinearCaustic_LinearProp ||
         regime == Regime::NonlinearCaustic_NonlinearProp;
}

Regime classify_regime(double alpha, CausticGeometry geom, int n, double sigma) {
  if (!(alpha >= 1.0)) throw ValidationError("alpha must be >= 1");
  const double alpha_c = criticality_index(geom, n, sigma);
  const double tol = 1e-9 * std::max(1.0, std::abs(alpha_c));
  const bool nonlinear_prop = std::abs(alpha - 1.0) <= 1e-9;
  if (std::abs(alpha - alpha_c) <= tol) {
    return nonlinear_prop ? Regime::NonlinearCaustic_NonlinearProp
                          : Regime::NonlinearCaustic_LinearProp;
  }
  if (alpha > alpha_c) {
    return nonlinear_prop ? Regime::LinearCaustic_NonlinearProp
                          : Regime::LinearCaustic_LinearProp;
  }
  return Regime::Supercritical;
}

bool cusp_caustic_contains(double t, double x, double tol, CuspScanOptions opts) {
  if (!(t > 0.0)) throw ValidationError("cusp caustic membership needs t > 0");
  if (t < 1.0) return false;
  const double base = std::acos(1.0 / t);
  const long m_max = static_cast<long>(std::ceil(opts.y_max / (2.0 * kPi))) + 1;
  for (long m = -m_max; m <= m_max; ++m) {
    for (double y : {base + 2.0 * kPi * m, -base + 2.0 * kPi * m}) {
      if (std::abs(y) > opts.y_max) continue;
      if (std::abs(y - t * std::sin(y) - x) <= tol) return true;
    }
  }
  return false;
}

Lemma3Exponents lemma3_error_prediction(double epsilon, double alpha, double sigma) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (!(alpha > std::max(1.0, sigma))) {
    throw HypothesisViolated("the error estimate needs alpha > max(1, sigma); got alpha=" +
                             std::to_string(alpha) + ", sigma=" + std::to_string(sigma));
  }
  const double gap = alpha - sigma;
  return {gap, std::min(1.0, gap)};
}

}  // namespace caustic
