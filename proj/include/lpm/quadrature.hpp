#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>

#include "lpm/types.hpp"

namespace lpm::quadrature {

/// A quadrature node. `from_a` and `from_b` are the distances to the
/// interval endpoints, computed without cancellation so that integrands
/// with endpoint power singularities can be evaluated accurately. On a ray,
/// `from_b` is +infinity.
struct Abscissa {
  double t;
  double from_a;
  double from_b;
};

using Integrand = std::function<Complex(const Abscissa&)>;

struct FiniteInterval {
  double a;
  double b;
};

/// [a, +inf). The integrand must behave like t^decay_exponent at infinity
/// with Re(decay_exponent) < -1. The ray is compactified with
/// t = a + scale * s / (1 - s), s in [0, 1).
struct RayInterval {
  double a;
  Complex decay_exponent;
  double scale = 1.0;
};

struct Tolerance {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

struct QuadratureSpec {
  Integrand integrand;
  std::variant<FiniteInterval, RayInterval> interval;
  /// Declared endpoint behaviour |t - endpoint|^p; selects the
  /// double-exponential rule on segments touching that endpoint.
  std::optional<Complex> singular_exponent_at_a;
  std::optional<Complex> singular_exponent_at_b;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  /// Return an unconverged result instead of throwing QuadratureFailure.
  bool allow_unconverged = false;
};

struct QuadratureResult {
  Complex value{};
  double err_estimate = 0.0;
  std::int64_t evaluations = 0;
  bool converged = false;
};

/// Adaptive integration of spec.integrand over spec.interval.
///
/// Throws NonIntegrable when a declared exponent (or ray decay) is not
/// integrable, DomainError for malformed specs, and QuadratureFailure when
/// the subdivision budget runs out (unless allow_unconverged is set).
QuadratureResult integrate(const QuadratureSpec& spec);

/// Integral of f(start + t * direction) * direction over t in [0, inf).
QuadratureResult integrate_ray(const std::function<Complex(Complex)>& f,
                               Complex start, Complex direction,
                               Complex decay_exponent,
                               const Tolerance& tol = {}, double scale = 1.0);

}  // namespace lpm::quadrature
