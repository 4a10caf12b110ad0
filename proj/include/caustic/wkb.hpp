#pragma once

// Closed-form geometric-optics references for the two caustic geometries
// studied here (focal point from a quadratic phase, 1-D cusp from a cosine
// phase), the criticality index of the nonlinearity at a caustic, and the
// error exponents predicted for the subcritical focal point.

#include <functional>
#include <numbers>
#include <string_view>

#include "caustic/spectral.hpp"

namespace caustic {

enum class CausticGeometry { FocalPoint, Cusp1D };

std::string_view to_string(CausticGeometry geom);

/// Caustic boundary-layer scales: amplitude eps^{-ell} in a layer of size
/// eps^{k}. FocalPoint: k = 1, ell = n/2. Cusp1D: k = 2/3, ell = 1/3.
struct CausticScales {
  double k;
  double ell;
};
CausticScales caustic_scales(CausticGeometry geom, int n);

/// Initial datum f(x - center) exp(i phi0(x - center) / eps).
struct InitialProfile {
  std::function<Complex(double)> f;
  std::function<double(double)> phi0;
  double center = 0.0;

  Complex datum(double x, double epsilon) const;
  WaveField sample(const GridSpec& grid, double epsilon) const;
};

/// f(y) = exp(-width_coeff y^2) with the focusing phase phi0(y) = -y^2/2.
InitialProfile gaussian_quadratic_profile(double center, double width_coeff = 2.0);
/// f(y) = exp(-width_coeff y^2) with phi0(y) = cos(y). Centered at pi this is
/// the cusp datum exp(-2 (x - pi)^2 - i cos(x) / eps), since cos(x - pi) = -cos x.
InitialProfile gaussian_cosine_profile(double center, double width_coeff = 2.0);

struct WkbSample {
  double phase;
  Complex amplitude;
};

/// Eikonal/transport solution for phi0(y) = -|y|^2/2:
///   phase(t, x) = |x - c|^2 / (2 (t - 1)),
///   amplitude(t, x) = (1 - t)^{-n/2} f((x - c) / (1 - t)),
/// with the principal complex branch of (1 - t)^{-n/2} for t > 1.
/// Throws AtCaustic when |t - 1| < 1e-12.
WkbSample quadratic_wkb(double t, double x, const InitialProfile& profile, int n = 1);

struct FocalAsymptoticOptions {
  int n = 1;
  /// Half-width of the excluded window around the focus t = 1.
  double focus_window = 0.05;
};

/// Leading-order asymptotic profile of the free solution with quadratic
/// initial phase, sampled on `grid`:
///   t < 1: e^{i|y|^2 / (2 eps (t-1))} (1-t)^{-n/2} f(y / (1-t))
///   t > 1: e^{-i n pi/2} e^{i|y|^2 / (2 eps (t-1))} (t-1)^{-n/2} f(y / (1-t))
/// with y = x - center. Throws TooCloseToFocus inside the focus window; warns
/// when the focal image of the envelope reaches the domain ends.
WaveField focal_asymptotic(double t, double epsilon, const InitialProfile& profile,
                           const GridSpec& grid, FocalAsymptoticOptions opts = {});

/// alpha_c = 1 + 2 ell sigma - k: n sigma for a focal point, (2 sigma + 1)/3
/// for a cusp. Throws UnsupportedDimension for a cusp with n != 1 and
/// ValidationError for sigma <= 0 or n < 1.
double criticality_index(CausticGeometry geom, int n, double sigma);

enum class Regime {
  LinearCaustic_LinearProp,
  LinearCaustic_NonlinearProp,
  NonlinearCaustic_LinearProp,
  NonlinearCaustic_NonlinearProp,
  Supercritical,
};

std::string_view to_string(Regime regime);
bool is_linear_caustic(Regime regime);
bool is_nonlinear_caustic(Regime regime);

/// alpha = 1 is the propagation threshold, alpha_c the caustic one;
/// alpha < alpha_c is Supercritical. Equality is tested with a 1e-9
/// relative tolerance. Throws ValidationError for alpha < 1.
Regime classify_regime(double alpha, CausticGeometry geom, int n, double sigma);

struct CuspScanOptions {
  /// Branches of cos y = 1/t are scanned for |y| <= y_max.
  double y_max = 4.0 * std::numbers::pi;
};

/// Whether (t, x) lies within tol of the cusp caustic set
/// { exists y : (y - x)/t = sin y and 1/t = cos y }. Always false for t < 1.
/// Throws ValidationError for t <= 0.
bool cusp_caustic_contains(double t, double x, double tol, CuspScanOptions opts = {});

struct Lemma3Exponents {
  double l2_exponent;  // sup over [0, 2] of ||u - v||_{L2} ~ eps^{alpha - sigma}
  double t2_exponent;  // error at t = 2 ~ eps^{min(1, alpha - sigma)}
};

/// Throws HypothesisViolated unless alpha > max(1, sigma).
Lemma3Exponents lemma3_error_prediction(double epsilon, double alpha, double sigma);

}  // namespace caustic
