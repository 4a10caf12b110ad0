#pragma once

// Reference computations that share no code with the library: a direct
// O(N^2) DFT, Gauss-Kronrod quadrature, and closed-form free Gaussians.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

using Complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// c_k = (1/N) sum_j u_j e^{-i k 2 pi j / N}, k = -N/2 .. N/2-1.
inline std::vector<Complex> naive_dft(const std::vector<Complex>& u) {
  const long n = static_cast<long>(u.size());
  std::vector<Complex> c(u.size());
  for (long k = -n / 2; k < n / 2; ++k) {
    Complex acc = 0.0;
    for (long j = 0; j < n; ++j) {
      const long r = ((k * j) % n + n) % n;
      acc += u[j] * std::polar(1.0, -2.0 * pi * static_cast<double>(r) / static_cast<double>(n));
    }
    c[k + n / 2] = acc / static_cast<double>(n);
  }
  return c;
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

inline Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b) {
  return {integrate([&](double x) { return f(x).real(); }, a, b),
          integrate([&](double x) { return f(x).imag(); }, a, b)};
}

// Solution of i eps u_t + (eps^2/2) u_xx = 0 on the line with
// u(0, y) = exp(-a y^2), a complex with Re a > 0:
//   u(t, y) = (1 + 2 i eps a t)^{-1/2} exp(-a y^2 / (1 + 2 i eps a t)).
inline Complex free_gaussian(Complex a, double eps, double t, double y) {
  const Complex d = 1.0 + Complex(0.0, 2.0 * eps * t) * a;
  return std::exp(-a * y * y / d) / std::sqrt(d);
}

}  // namespace oracle
