#include <doctest.h>

#include <cmath>

#include "caustic/diagnostics.hpp"
#include "caustic/errors.hpp"
#include "caustic/propagators.hpp"
#include "caustic/wkb.hpp"
#include "oracles.hpp"

using namespace caustic;
using oracle::pi;

namespace {

double f_env(double y) { return std::exp(-2 * y * y); }

}  // namespace

TEST_CASE("caustic scales and criticality index") {
  CHECK(caustic_scales(CausticGeometry::FocalPoint, 3).ell == doctest::Approx(1.5));
  CHECK(caustic_scales(CausticGeometry::Cusp1D, 1).k == doctest::Approx(2.0 / 3));
  CHECK(criticality_index(CausticGeometry::FocalPoint, 1, 2.0) == doctest::Approx(2.0));
  CHECK(criticality_index(CausticGeometry::FocalPoint, 3, 2.0) == doctest::Approx(6.0));
  CHECK(criticality_index(CausticGeometry::Cusp1D, 1, 4.0) == doctest::Approx(3.0));
  CHECK(criticality_index(CausticGeometry::Cusp1D, 1, 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(criticality_index(CausticGeometry::Cusp1D, 2, 1.0), UnsupportedDimension);
  CHECK_THROWS_AS(criticality_index(CausticGeometry::FocalPoint, 1, 0.0), ValidationError);
  for (auto geom : {CausticGeometry::FocalPoint, CausticGeometry::Cusp1D}) {
    double prev = -1.0;
    for (double s = 0.25; s < 6.0; s += 0.25) {
      const double a = criticality_index(geom, 1, s);
      CHECK(a > prev);
      prev = a;
    }
  }
}

TEST_CASE("regime classification") {
  const auto F = CausticGeometry::FocalPoint;
  CHECK(classify_regime(2.5, F, 1, 2.0) == Regime::LinearCaustic_LinearProp);
  CHECK(classify_regime(2.0, F, 1, 2.0) == Regime::NonlinearCaustic_LinearProp);
  CHECK(classify_regime(1.5, F, 1, 2.0) == Regime::Supercritical);
  CHECK(classify_regime(1.0, F, 1, 1.0) == Regime::NonlinearCaustic_NonlinearProp);
  CHECK(classify_regime(1.0, F, 1, 0.4) == Regime::LinearCaustic_NonlinearProp);
  CHECK_THROWS_AS(classify_regime(0.9, F, 1, 2.0), ValidationError);
  for (auto geom : {CausticGeometry::FocalPoint, CausticGeometry::Cusp1D}) {
    for (double s : {1.0, 2.0, 3.5, 4.0}) {
      const double ac = criticality_index(geom, 1, s);
      CHECK(is_linear_caustic(classify_regime(ac + 0.1, geom, 1, s)));
      CHECK(is_nonlinear_caustic(classify_regime(ac, geom, 1, s)));
    }
  }
}

TEST_CASE("quadratic wkb solution") {
  const InitialProfile p = gaussian_quadratic_profile(pi);
  const double x = pi + 0.3;
  const WkbSample s0 = quadratic_wkb(0.0, x, p);
  CHECK(s0.phase == doctest::Approx(-0.045));
  CHECK(std::abs(s0.amplitude - f_env(0.3)) < 1e-15);

  const WkbSample half = quadratic_wkb(0.5, x, p);
  CHECK(std::abs(half.amplitude - std::sqrt(2.0) * f_env(0.6)) < 1e-14);

  const WkbSample two = quadratic_wkb(2.0, x, p);
  CHECK(two.phase == doctest::Approx(0.045));
  CHECK(std::abs(two.amplitude) == doctest::Approx(f_env(-0.3)));
  // principal branch of (1 - t)^{-1/2} at t = 2 is -i
  CHECK(std::abs(two.amplitude - Complex(0, -1) * f_env(-0.3)) < 1e-15);

  CHECK_THROWS_AS(quadratic_wkb(1.0, x, p), AtCaustic);
  CHECK_NOTHROW(quadratic_wkb(1.0 + 1e-9, x, p));
}

TEST_CASE("quadratic wkb conserves the amplitude mass") {
  const InitialProfile p = gaussian_quadratic_profile(0.0);
  const double m0 = oracle::integrate([](double y) { return f_env(y) * f_env(y); }, -30, 30);
  for (double t : {0.2, 0.7, 0.95, 1.3, 2.0, 3.0}) {
    const double m = oracle::integrate([&](double x) { return std::norm(quadratic_wkb(t, x, p).amplitude); },
                                       -30, 30);
    CHECK(std::abs(m - m0) < 1e-8);
  }
}

TEST_CASE("focal asymptotic profile") {
  const double eps = 1.0 / 150;
  const GridSpec g(0.0, 2 * pi, 1024);
  const InitialProfile p = gaussian_quadratic_profile(pi);
  const WaveField two = focal_asymptotic(2.0, eps, p, g);
  for (std::size_t j = 0; j < g.size(); j += 17) {
    const double y = g.node(j) - pi;
    const Complex ref = Complex(0, -1) * std::polar(1.0, y * y / (2 * eps)) * f_env(-y);
    CHECK(std::abs(two[j] - ref) < 1e-12);
  }
  // t -> 0 reproduces the datum
  const WaveField tiny = focal_asymptotic(1e-9, eps, p, g);
  const WaveField datum = p.sample(g, eps);
  CHECK(sup_norm(tiny - datum) < 1e-5);

  // |v(1 - s, x)| = |v(1 + s, -x)| about the center
  const GridSpec sym(-pi, pi, 256);
  const InitialProfile p0 = gaussian_quadratic_profile(0.0);
  for (double s : {0.1, 0.5, 0.9}) {
    const WaveField a = focal_asymptotic(1 - s, eps, p0, sym);
    const WaveField b = focal_asymptotic(1 + s, eps, p0, sym);
    for (std::size_t j = 1; j < 256; ++j) CHECK(std::abs(a[j]) == doctest::Approx(std::abs(b[256 - j])).epsilon(1e-14));
  }

  CHECK_THROWS_AS(focal_asymptotic(1.04, eps, p, g), TooCloseToFocus);
  FocalAsymptoticOptions narrow;
  narrow.focus_window = 0.01;
  CHECK_NOTHROW(focal_asymptotic(1.04, eps, p, g, narrow));
}

TEST_CASE("focal asymptotic warns when the image reaches the boundary") {
  const InitialProfile p = gaussian_quadratic_profile(pi);
  ScopedWarningCapture cap;
  focal_asymptotic(4.0, 0.01, p, GridSpec(0.0, 2 * pi, 256));
  CHECK(cap.messages().size() == 1);
}

TEST_CASE("lemma 2 profile against the free evolution") {
  // the exact Gaussian differs from the leading-order profile by O(eps)
  const InitialProfile p = gaussian_quadratic_profile(pi);
  double prev = 1e9;
  for (double eps : {1.0 / 75, 1.0 / 150, 1.0 / 300}) {
    const GridSpec g(0.0, 2 * pi, static_cast<std::size_t>(std::lround(1024 / (150 * eps))));
    const WaveField v = free_step(p.sample(g, eps), 2.0, eps);
    const double d = sup_norm(v - focal_asymptotic(2.0, eps, p, g));
    CHECK(d < 5.0 * eps);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("cusp caustic membership") {
  CHECK_THROWS_AS(cusp_caustic_contains(0.0, 1.0, 1e-3), ValidationError);
  for (double x = -10; x <= 10; x += 0.01) CHECK_FALSE(cusp_caustic_contains(0.99, x, 1e-2));

  // t = 1: tips at x in 2 pi Z
  CHECK(cusp_caustic_contains(1.0, 0.0, 1e-9));
  CHECK(cusp_caustic_contains(1.0, 2 * pi, 1e-9));
  CHECK(cusp_caustic_contains(1.0, -4 * pi, 1e-9));
  CHECK_FALSE(cusp_caustic_contains(1.0, pi, 1e-3));
  CHECK_FALSE(cusp_caustic_contains(1.0, 0.01, 1e-3));

  const double y = std::acos(0.5);
  const double x = y - 2 * std::sin(y);
  CHECK(cusp_caustic_contains(2.0, x, 1e-9));
  CHECK(cusp_caustic_contains(2.0, -x, 1e-9));
  CHECK(cusp_caustic_contains(2.0, x + 2 * pi, 1e-9));
  CHECK_FALSE(cusp_caustic_contains(2.0, x + 0.3, 1e-3));

  for (double t : {1.2, 1.7, 2.5, 3.5}) {
    for (double xx = -8; xx <= 8; xx += 0.173) {
      CHECK(cusp_caustic_contains(t, xx, 1e-2) == cusp_caustic_contains(t, -xx, 1e-2));
    }
  }
}

TEST_CASE("lemma 3 exponents") {
  const Lemma3Exponents a = lemma3_error_prediction(0.01, 2.5, 2.0);
  CHECK(a.l2_exponent == doctest::Approx(0.5));
  CHECK(a.t2_exponent == doctest::Approx(0.5));
  const Lemma3Exponents b = lemma3_error_prediction(0.01, 3.5, 2.0);
  CHECK(b.l2_exponent == doctest::Approx(1.5));
  CHECK(b.t2_exponent == doctest::Approx(1.0));
  CHECK_THROWS_AS(lemma3_error_prediction(0.01, 2.0, 2.0), HypothesisViolated);
  CHECK_THROWS_AS(lemma3_error_prediction(0.01, 1.0, 0.5), HypothesisViolated);
}

TEST_CASE("cusp datum") {
  const double eps = 1.0 / 150;
  const InitialProfile p = gaussian_cosine_profile(pi);
  for (double x : {0.5, 2.0, pi, 4.4}) {
    const Complex ref = std::exp(Complex(-2 * (x - pi) * (x - pi), -std::cos(x) / eps));
    CHECK(std::abs(p.datum(x, eps) - ref) < 1e-9);
  }
}
