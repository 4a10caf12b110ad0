#include "caustic/aliasing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "caustic/diagnostics.hpp"
#include "caustic/errors.hpp"
#include "caustic/propagators.hpp"

namespace caustic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

GridSpec torus(std::size_t n) { return GridSpec(0.0, kTwoPi, n); }

long fold_index(long m, long n) {
  long r = ((m % n) + n) % n;
  return r >= n / 2 ? r - n : r;
}

// e^{i m x_j} with x_j = 2 pi j / N, the angle reduced exactly.
Complex mode_at(long m, std::size_t j, std::size_t n) {
  const long nl = static_cast<long>(n);
  const long r = ((m % nl) * static_cast<long>(j % n)) % nl;
  return std::polar(1.0, kTwoPi * static_cast<double>((r + nl) % nl) / static_cast<double>(n));
}

WaveField sample_modes(const ModeMap& modes, std::size_t n) {
  WaveField f(torus(n));
  for (std::size_t j = 0; j < n; ++j) {
    Complex acc = 0.0;
    for (const auto& [m, c] : modes) acc += c * mode_at(m, j, n);
    f[j] = acc;
  }
  return f;
}

double tail_of(const SpectrumField& fine, std::size_t n_coarse) {
  const long half = static_cast<long>(n_coarse / 2);
  double sum = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const long k = fine.index_to_k(i);
    if (std::abs(k) > half) sum += std::abs(fine.coeffs()[i]);
  }
  return sum;
}

}  // namespace

SpectrumField alias_fold(const ModeMap& exact_coeffs, std::size_t n) {
  SpectrumField out(torus(n));
  for (const auto& [m, c] : exact_coeffs) out.at(fold_index(m, static_cast<long>(n))) += c;
  return out;
}

double alias_fold_matches_dft(const ModeMap& exact_coeffs, std::size_t n) {
  const SpectrumField dft = forward_dft(sample_modes(exact_coeffs, n));
  const SpectrumField fold = alias_fold(exact_coeffs, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(dft.coeffs()[i] - fold.coeffs()[i]));
  }
  return worst;
}

AliasReport truncation_tail(const WaveField& field, std::size_t n_coarse) {
  const std::size_t n_fine = field.size();
  if (n_coarse < 4 || n_coarse % 2 != 0) {
    throw ValidationError("n_coarse must be even and >= 4");
  }
  if (n_fine < 4 * n_coarse || n_fine % n_coarse != 0) {
    throw InsufficientResolution("fine grid of " + std::to_string(n_fine) +
                                 " points needs to be a multiple of and >= 4x n_coarse = " +
                                 std::to_string(n_coarse));
  }
  const SpectrumField fine = forward_dft(field);
  AliasReport rep;
  rep.n_modes = n_coarse;
  rep.tail_sum = tail_of(fine, n_coarse);

  // term I: coarse DFT of the subsampled field against the fine coefficients
  const std::size_t stride = n_fine / n_coarse;
  const GridSpec& g = field.grid();
  WaveField coarse(GridSpec(g.x_min(), g.x_max(), n_coarse));
  for (std::size_t j = 0; j < n_coarse; ++j) coarse[j] = field[j * stride];
  const SpectrumField cc = forward_dft(coarse);
  double alias2 = 0.0;
  for (std::size_t i = 0; i < n_coarse; ++i) {
    alias2 += std::norm(cc.coeffs()[i] - fine.at(cc.index_to_k(i)));
  }
  rep.alias_l2 = std::sqrt(alias2 * g.length());

  // log-log fit of the tail over the dyadic ladder, skipping round-off levels
  double scale = 0.0;
  for (Complex c : fine.coeffs()) scale += std::abs(c);
  std::vector<double> lx, ly;
  for (std::size_t n = 8; n <= n_fine / 4; n *= 2) {
    const double tail = tail_of(fine, n);
    if (tail > 1e-13 * scale) {
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(tail));
    }
  }
  if (lx.size() < 2) {
    rep.decay_exponent = std::numeric_limits<double>::infinity();
    rep.tail_bound_estimate = rep.tail_sum;
    return rep;
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  rep.decay_exponent = -slope;
  rep.tail_bound_estimate = std::exp(my + slope * (std::log(double(n_coarse)) - mx));
  return rep;
}

BandLimitedResult band_limited_exactness(const ModeMap& modes, double epsilon, double t,
                                         std::size_t n) {
  BandLimitedResult res;
  const long half = static_cast<long>(n / 2);
  for (const auto& entry : modes) {
    if (entry.first < -half || entry.first >= half) res.aliased = true;
  }
  if (res.aliased) warn("band_limited_exactness: out-of-band mode, aliasing expected");
  const WaveField evolved = free_step(sample_modes(modes, n), t, epsilon);
  for (std::size_t j = 0; j < n; ++j) {
    Complex exact = 0.0;
    for (const auto& [m, c] : modes) {
      const double md = static_cast<double>(m);
      exact += c * mode_at(m, j, n) * std::polar(1.0, -std::fmod(0.5 * epsilon * md * md * t, kTwoPi));
    }
    res.sup_error = std::max(res.sup_error, std::abs(evolved[j] - exact));
  }
  return res;
}

}  // namespace caustic
