#include <doctest.h>

#include <cmath>

#include "caustic/diagnostics.hpp"
#include "caustic/errors.hpp"
#include "caustic/scattering.hpp"
#include "oracles.hpp"

using namespace caustic;
using oracle::pi;

namespace {

ScatteringConfig small_config(double lambda, double sigma = 2.0) {
  ScatteringConfig cfg(GridSpec(-50 * pi, 50 * pi, 4096));
  cfg.sigma = sigma;
  cfg.lambda = lambda;
  cfg.T = 10.0;
  cfg.dt = 0.01;
  cfg.leak_tolerance = 1e-3;
  return cfg;
}

WaveField bump(const GridSpec& g, double width = 5.0) {
  return WaveField::from_function(g, [width](double x) { return Complex(std::exp(-width * x * x)); });
}

double rel(const WaveField& a, const WaveField& b) { return l2_norm(a - b) / l2_norm(b); }

}  // namespace

TEST_CASE("config") {
  ScatteringConfig cfg = small_config(1.0);
  CHECK(cfg.stage_dt(20.0) == doctest::Approx(0.01));
  cfg.dt = 0.0;
  CHECK(cfg.stage_dt(20.0) == doctest::Approx(20.0 / 20000));
  cfg.dt = 0.03;
  const double d = cfg.stage_dt(20.0);
  CHECK(std::abs(20.0 / d - std::round(20.0 / d)) < 1e-9);
  CHECK_FALSE(cfg.non_scattering_regime());
  ScatteringConfig weak = small_config(1.0, 1.0);
  CHECK(weak.non_scattering_regime());
  ScopedWarningCapture cap;
  weak.validate();
  CHECK(cap.messages().size() == 1);
  cfg.T = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("lambda = 0 is the identity") {
  const ScatteringConfig cfg = small_config(0.0);
  const WaveField psi = bump(cfg.grid);
  CHECK(l2_norm(scattering_apply(psi, cfg) - psi) < 1e-10);
  CHECK(l2_norm(mixed_state(psi, cfg) - psi) < 1e-10);
  CHECK(t_stability(psi, cfg, 1.5) < 1e-10);
}

TEST_CASE("T = 0 mixed state is the identity") {
  ScatteringConfig cfg = small_config(1.0);
  cfg.T = 0.0;
  const WaveField psi = bump(cfg.grid);
  CHECK(l2_norm(mixed_state(psi, cfg) - psi) == 0.0);
}

TEST_CASE("mass invariance and gauge covariance") {
  const ScatteringConfig cfg = small_config(1.0);
  const WaveField psi = bump(cfg.grid);
  const ScatteringOutcome out = scattering_run(psi, cfg);
  CHECK(std::abs(l2_norm(out.field) - l2_norm(psi)) / l2_norm(psi) < 1e-10);
  CHECK(std::abs(l2_norm(mixed_state(psi, cfg)) - l2_norm(psi)) / l2_norm(psi) < 1e-10);
  CHECK(l2_norm(out.field - psi) > 1e-3);  // not the identity
  CHECK(out.log.size() == 101);
  CHECK(out.max_leak < cfg.leak_tolerance);

  const Complex phase = std::polar(1.0, 0.7);
  const WaveField rotated = scattering_apply(phase * psi, cfg);
  CHECK(l2_norm(rotated - phase * out.field) < 1e-10);
}

TEST_CASE("boundary leak") {
  ScatteringConfig cfg(GridSpec(-20.0, 20.0, 512));
  cfg.T = 10.0;
  cfg.dt = 0.01;
  const WaveField psi = bump(cfg.grid);
  CHECK_THROWS_AS(scattering_apply(psi, cfg), BoundaryLeak);
  cfg.leak_tolerance = 0.5;
  CHECK_NOTHROW(scattering_apply(psi, cfg));
}

TEST_CASE("blow-up guard relative to the dispersed state") {
  ScatteringConfig cfg = small_config(-1.0);
  cfg.blowup_factor = 1.5;  // refocusing at the stage midpoint alone exceeds this
  CHECK_THROWS_AS(scattering_apply(bump(cfg.grid), cfg), BlowUp);
}

TEST_CASE("t stability") {
  const ScatteringConfig cfg = small_config(1.0);
  CHECK_THROWS_AS(t_stability(bump(cfg.grid), cfg, 1.0), ValidationError);
  const double v = t_stability(bump(cfg.grid), cfg, 1.5);
  CHECK(v > 0.0);
  CHECK(v < 0.01);
}

TEST_CASE("Z operator") {
  const GridSpec fg(-8.0, 8.0, 256);
  const WaveField f = WaveField::from_function(fg, [](double x) { return Complex(std::exp(-2 * x * x)); });

  const ScatteringConfig linear = small_config(0.0);
  CHECK(sup_norm(z_operator(f, linear) - f) < 1e-8);

  const ScatteringConfig cfg = small_config(1.0);
  const WaveField zf = z_operator(f, cfg);
  CHECK(std::abs(l2_norm(zf) - l2_norm(f)) < 1e-8);
  const WaveField z2f = z_operator(Complex(2.0) * f, cfg);
  CHECK(rel(z2f, Complex(2.0) * zf) > 1e-3);

  const std::vector<double> pts = {fg.node(100), fg.node(128)};
  const ComplexVector at = z_operator_at(f, cfg, pts);
  CHECK(std::abs(at[0] - zf[100]) < 1e-14);
  CHECK(std::abs(at[1] - zf[128]) < 1e-14);
}
