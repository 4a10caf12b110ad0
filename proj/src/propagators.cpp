#include "caustic/propagators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "caustic/errors.hpp"

namespace caustic {

namespace {

SpectralMultiplier free_multiplier(const GridSpec& grid, double t, double epsilon) {
  return SpectralMultiplier(grid, [=](double xi) {
    return std::polar(1.0, -0.5 * epsilon * xi * xi * t);
  });
}

}  // namespace

void SemiclassicalParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon must be > 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ValidationError("sigma must be > 0");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be >= 1");
  if (!std::isfinite(lambda)) throw ValidationError("lambda must be finite");
}

double SemiclassicalParams::nonlinear_rate() const {
  return lambda * std::pow(epsilon, alpha - 1.0);
}

std::string_view to_string(SplitScheme scheme) {
  return scheme == SplitScheme::Lie ? "lie" : "strang";
}

SplitScheme parse_scheme(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "lie") return SplitScheme::Lie;
  if (lower == "strang") return SplitScheme::Strang;
  throw ValidationError("unknown scheme '" + std::string(name) + "' (expected lie|strang)");
}

void RunConfig::validate() const {
  params.validate();
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ValidationError("t_final must be >= 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be > 0");
  if (snapshot_every < 1) throw ValidationError("snapshot_every must be >= 1");
  if (!(blowup_factor > 1.0)) throw ValidationError("blowup_factor must be > 1");
  const double ratio = t_final / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw ValidationError("t_final / dt = " + std::to_string(ratio) +
                          " is not a whole number of steps");
  }
}

std::size_t RunConfig::step_count() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

WaveField free_step(const WaveField& field, double t, double epsilon) {
  WaveField out = field;
  if (t != 0.0) free_multiplier(field.grid(), t, epsilon).apply(out);
  return out;
}

double free_step_is_unitary_check(const WaveField& field, double t, double epsilon) {
  const double before = l2_norm(field);
  if (before == 0.0) return 0.0;
  return std::abs(l2_norm(free_step(field, t, epsilon)) - before) / before;
}

void nonlinear_step_inplace(WaveField& field, double t, const SemiclassicalParams& params) {
  const double rate = params.nonlinear_rate() * t;
  if (rate == 0.0) return;
  for (Complex& z : field.values()) {
    z *= std::polar(1.0, -rate * std::pow(std::norm(z), params.sigma));
  }
}

WaveField nonlinear_step(const WaveField& field, double t, const SemiclassicalParams& params) {
  WaveField out = field;
  nonlinear_step_inplace(out, t, params);
  return out;
}

// ------------------------------------------------------ SplitStepEvolution

SplitStepEvolution::SplitStepEvolution(WaveField initial, const RunConfig& cfg)
    : cfg_((cfg.validate(), cfg)),
      field_(std::move(initial)),
      free_(free_multiplier(field_.grid(), cfg.dt, cfg.params.epsilon)),
      guard_(cfg.blowup_factor * sup_norm(field_)),
      total_(cfg.step_count()) {
  if (!field_.all_finite()) throw ValidationError("initial field has non-finite values");
}

void SplitStepEvolution::step() {
  const double dt = cfg_.dt;
  if (cfg_.scheme == SplitScheme::Lie) {
    free_.apply(field_);
    nonlinear_step_inplace(field_, dt, cfg_.params);
  } else {
    nonlinear_step_inplace(field_, 0.5 * dt, cfg_.params);
    free_.apply(field_);
    nonlinear_step_inplace(field_, 0.5 * dt, cfg_.params);
  }
  ++steps_;
  check_blowup();
}

void SplitStepEvolution::run_to_end() {
  while (!done()) step();
}

void SplitStepEvolution::check_blowup() const {
  double sup = 0.0;
  for (Complex z : field_.values()) {
    const double a = std::abs(z);
    if (!std::isfinite(a)) {
      throw BlowUp("non-finite value at t=" + std::to_string(time()));
    }
    sup = std::max(sup, a);
  }
  if (guard_ > 0.0 && sup > guard_) {
    throw BlowUp("sup-norm " + std::to_string(sup) + " exceeds guard " +
                 std::to_string(guard_) + " at t=" + std::to_string(time()));
  }
}

WaveField lie_evolve(const WaveField& field, RunConfig cfg) {
  cfg.scheme = SplitScheme::Lie;
  SplitStepEvolution ev(field, cfg);
  ev.run_to_end();
  return ev.field();
}

WaveField strang_evolve(const WaveField& field, RunConfig cfg) {
  cfg.scheme = SplitScheme::Strang;
  SplitStepEvolution ev(field, cfg);
  ev.run_to_end();
  return ev.field();
}

WaveField evolve(const WaveField& field, const RunConfig& cfg) {
  SplitStepEvolution ev(field, cfg);
  ev.run_to_end();
  return ev.field();
}

WaveField evolve_with_snapshots(const WaveField& field, const RunConfig& cfg,
                                const SnapshotSink& sink, std::optional<double> sigma_center) {
  SplitStepEvolution ev(field, cfg);
  auto emit = [&] {
    if (sink) sink(ev.time(), ev.field(), observe(ev.field(), cfg.params, ev.time(), sigma_center));
  };
  emit();
  while (!ev.done()) {
    ev.step();
    if (ev.steps_taken() % cfg.snapshot_every == 0 || ev.done()) emit();
  }
  return ev.field();
}

}  // namespace caustic
