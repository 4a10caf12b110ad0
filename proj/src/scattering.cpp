#include "caustic/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "caustic/diagnostics.hpp"
#include "caustic/errors.hpp"

namespace caustic {

void ScatteringConfig::validate() const {
  params().validate();
  if (!(T >= 0.0) || !std::isfinite(T)) throw ValidationError("T must be >= 0");
  if (!std::isfinite(dt)) throw ValidationError("dt must be finite");
  if (!(leak_tolerance > 0.0)) throw ValidationError("leak_tolerance must be > 0");
  if (!(edge_fraction > 0.0 && edge_fraction < 1.0)) {
    throw ValidationError("edge_fraction must lie in (0, 1)");
  }
  if (!(blowup_factor > 1.0)) throw ValidationError("blowup_factor must be > 1");
  if (non_scattering_regime()) {
    warn("NonScatteringRegime: sigma = " + std::to_string(sigma) +
         " <= 1, the wave operators are not expected to exist");
  }
}

double ScatteringConfig::stage_dt(double span) const {
  const double base = dt > 0.0 ? dt : 2.0 * T / 20000.0;
  const double steps = std::max(1.0, std::round(span / base));
  return span / steps;
}

namespace {

ScatteringOutcome sandwich(const WaveField& psi, const ScatteringConfig& cfg, double pre,
                           double span) {
  cfg.validate();
  ScatteringOutcome out{free_step(psi, -pre, 1.0), 0.0, cfg.stage_dt(span), {}};
  if (span > 0.0) {
    RunConfig rc;
    rc.params = cfg.params();
    rc.scheme = cfg.scheme;
    rc.t_final = span;
    rc.dt = out.dt_used;
    rc.blowup_factor = cfg.blowup_factor;
    SplitStepEvolution ev(out.field, rc);
    const std::size_t every = std::max<std::size_t>(1, ev.total_steps() / cfg.log_points);
    auto check = [&] {
      const double leak = boundary_mass_fraction(ev.field(), cfg.edge_fraction);
      out.max_leak = std::max(out.max_leak, leak);
      if (leak > cfg.leak_tolerance) {
        throw BoundaryLeak("edge mass fraction " + std::to_string(leak) + " exceeds " +
                           std::to_string(cfg.leak_tolerance) + " at stage time " +
                           std::to_string(ev.time()));
      }
    };
    check();
    out.log.push_back(observe(ev.field(), rc.params, 0.0));
    while (!ev.done()) {
      ev.step();
      check();
      if (ev.steps_taken() % every == 0 || ev.done()) {
        out.log.push_back(observe(ev.field(), rc.params, ev.time()));
      }
    }
    out.field = ev.field();
  }
  out.field = free_step(out.field, -(span - pre), 1.0);
  return out;
}

}  // namespace

ScatteringOutcome scattering_run(const WaveField& psi_minus, const ScatteringConfig& cfg) {
  return sandwich(psi_minus, cfg, cfg.T, 2.0 * cfg.T);
}

WaveField scattering_apply(const WaveField& psi_minus, const ScatteringConfig& cfg) {
  return scattering_run(psi_minus, cfg).field;
}

ScatteringOutcome mixed_state_run(const WaveField& psi0, const ScatteringConfig& cfg) {
  return sandwich(psi0, cfg, 0.0, cfg.T);
}

WaveField mixed_state(const WaveField& psi0, const ScatteringConfig& cfg) {
  return mixed_state_run(psi0, cfg).field;
}

double t_stability(const WaveField& psi_minus, const ScatteringConfig& cfg, double factor) {
  if (!(factor > 1.0)) throw ValidationError("t_stability factor must be > 1");
  const double norm = l2_norm(psi_minus);
  if (norm == 0.0) return 0.0;
  ScatteringConfig longer = cfg;
  longer.T = factor * cfg.T;
  if (cfg.dt > 0.0) longer.dt = cfg.dt;
  const WaveField a = scattering_apply(psi_minus, cfg);
  const WaveField b = scattering_apply(psi_minus, longer);
  return l2_norm(b - a) / norm;
}

ComplexVector z_operator_at(const WaveField& f, const ScatteringConfig& cfg,
                            std::span<const double> points) {
  // sampling f at spacing dxi makes the quadrature for F^{-1} f periodic in x
  // with period 2 pi / dxi; outside that window it is an alias, set to zero
  const double half_window = std::numbers::pi / f.grid().dx();
  std::vector<double> inside;
  std::vector<std::size_t> slots;
  for (std::size_t j = 0; j < cfg.grid.size(); ++j) {
    const double x = cfg.grid.node(j);
    if (std::abs(x) < half_window) {
      inside.push_back(x);
      slots.push_back(j);
    }
  }
  const ComplexVector gi = continuous_inverse_fourier(f, inside);
  WaveField g(cfg.grid);
  double total = 0.0, rim = 0.0;
  for (std::size_t i = 0; i < gi.size(); ++i) {
    g[slots[i]] = gi[i];
    total += std::norm(gi[i]);
    if (std::abs(inside[i]) > 0.95 * half_window) rim += std::norm(gi[i]);
  }
  if (total > 0.0 && rim > 1e-10 * total) {
    warn("z_operator: F^{-1} f does not decay inside |x| < " + std::to_string(half_window) +
         "; sample f more finely");
  }
  const WaveField sg = scattering_apply(g, cfg);
  return continuous_fourier(sg, points);
}

WaveField z_operator(const WaveField& f, const ScatteringConfig& cfg) {
  const std::vector<double> xi = f.grid().nodes();
  return WaveField(f.grid(), z_operator_at(f, cfg, xi));
}

}  // namespace caustic
