#pragma once

// Helpers shared by the unit tests: tolerance checks, seeded generators for
// property tests, and brute-force oracles that do not touch the library's
// quadrature engine.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace lpm::test {

using Complex = std::complex<double>;

inline double rel_err(Complex actual, Complex expected) {
  return std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
}

inline double mixed_err(Complex actual, Complex expected) {
  return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  Complex complex_in(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }
  /// z = 1 + r e^{i theta} off the cut with |z| >= min_modulus.
  Complex cut_plane_point(double min_modulus = 1.1) {
    for (;;) {
      const double r = uniform(0.1, 5.0);
      const double theta = uniform(-std::numbers::pi + 0.2, std::numbers::pi - 0.2);
      const Complex z = 1.0 + std::polar(r, theta);
      if (std::abs(z) >= min_modulus) return z;
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Composite Simpson rule with `panels` (even) panels, in long double.
inline std::complex<long double> simpson(
    const std::function<std::complex<long double>(long double)>& f, long double a,
    long double b, long panels) {
  const long double h = (b - a) / panels;
  std::complex<long double> sum = f(a) + f(b);
  for (long k = 1; k < panels; ++k) {
    sum += f(a + k * h) * static_cast<long double>(k % 2 == 1 ? 4 : 2);
  }
  return sum * (h / 3.0L);
}

/// int_1^inf (w^2-1)^(nu-1) dw for real 0 < nu < 1/2 with w = cosh(u^k),
/// k = 1/(2 nu): the integrand k u^(k-1) sinh(u^k)^(2nu-1) tends to k at
/// u = 0, so dense Simpson converges at its full order.
inline double wing_by_cosh_substitution(double nu) {
  const long double k = 1.0L / (2.0L * nu);
  const long double p = 2.0L * nu - 1.0L;
  const long double end = std::pow(45.0L / (1.0L - 2.0L * nu), 1.0L / k);
  auto f = [&](long double u) -> std::complex<long double> {
    if (u == 0.0L) return k;
    const long double uk = std::pow(u, k);
    return k * std::pow(u, k - 1.0L) * std::pow(std::sinh(uk), p);
  };
  return static_cast<double>(simpson(f, 0.0L, end, 400000).real());
}

/// int_0^1 (1-w^2)^(nu-1) dw = int_0^(pi/2) cos(theta)^(2nu-1) dtheta for
/// real nu > 0, with pi/2 - theta = v^k, k = 1/(2 nu) below nu = 1/2.
inline double cap_by_sine_substitution(double nu) {
  const long double k = nu < 0.5 ? 1.0L / (2.0L * nu) : 1.0L;
  const long double p = 2.0L * nu - 1.0L;
  const long double end = std::pow(std::numbers::pi_v<long double> / 2.0L, 1.0L / k);
  auto f = [&](long double v) -> std::complex<long double> {
    if (v == 0.0L) return nu < 0.5 ? k : (nu == 0.5 ? 1.0L : 0.0L);
    const long double vk = std::pow(v, k);
    return k * std::pow(v, k - 1.0L) * std::pow(std::sin(vk), p);
  };
  return static_cast<double>(simpson(f, 0.0L, end, 400000).real());
}

/// Direct 2F1 series in long double with compensated summation, used as the
/// extended-precision oracle for the double-precision engine.
inline std::complex<long double> series_2f1_long(Complex a, Complex b, Complex c,
                                                 Complex z, long terms) {
  using L = std::complex<long double>;
  const L la(a), lb(b), lc(c), lz(z);
  L sum = 1.0L, comp = 0.0L, term = 1.0L;
  for (long n = 0; n < terms; ++n) {
    const long double k = static_cast<long double>(n);
    term *= (la + k) * (lb + k) / ((lc + k) * (k + 1.0L)) * lz;
    const L y = term - comp;
    const L t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace lpm::test
