#include "lpm/ferrers.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lpm/hypergeometric.hpp"

namespace lpm::ferrers {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
const double kSqrtPi = std::sqrt(std::numbers::pi);

double rounding(Complex value) { return 64.0 * kEps * std::abs(value); }

Complex pow2(Complex exponent) { return std::exp(exponent * std::numbers::ln2); }

// (1 - x^2)^alpha with 1 - x^2 formed as (1 - x)(1 + x).
Complex cap_power(double x, Complex alpha) {
  const double base = (1.0 - x) * (1.0 + x);
  return std::exp(alpha * std::log(base));
}

EvalResult scaled(const EvalResult& base, Complex factor) {
  EvalResult out = base;
  out.value = base.value * factor;
  out.abs_err = base.abs_err * std::abs(factor) + rounding(out.value);
  return out;
}

Complex inverse_gamma_half_shift(Complex nu) {
  if (is_nonpositive_integer(nu + 0.5)) {
    throw PoleError("Gamma(nu + 1/2) has a pole");
  }
  return 1.0 / gamma(nu + 0.5);
}

}  // namespace

CutInterval::CutInterval(double x) : x_(x) {
  if (!(x > -1.0 && x < 1.0)) {
    throw DomainError("Ferrers argument must lie strictly inside (-1, 1)");
  }
}

EvalResult kernel_integral(Complex nu, const CutInterval& point, Method method) {
  require_finite(nu, "degree");
  const double x = point.value();
  if (method == Method::Closed) {
    if (x * x > kRadiusGuard) {
      throw DomainError("series form needs x^2 <= 0.95; use the integral path");
    }
    return scaled(gauss_2f1(0.5, nu + 1.0, 1.5, x * x), x);
  }
  if (x == 0.0) return EvalResult{0.0, 0.0, 0, true};
  // The integrand is even, so integrate over [0, |x|] and restore the sign.
  const double end = std::abs(x);
  const Complex exponent = -(nu + 1.0);
  quadrature::QuadratureSpec spec;
  spec.integrand = [=](const quadrature::Abscissa& w) {
    return std::exp(exponent * std::log((1.0 - w.t) * (1.0 + w.t)));
  };
  spec.interval = quadrature::FiniteInterval{0.0, end};
  spec.rel_tol = kIntegralTolerance.rel_tol;
  spec.abs_tol = kIntegralTolerance.abs_tol;
  spec.max_subdivisions = kIntegralTolerance.max_subdivisions;
  const auto q = quadrature::integrate(spec);
  const double sign = x < 0.0 ? -1.0 : 1.0;
  return EvalResult{sign * q.value, q.err_estimate, q.evaluations, q.converged};
}

EvalResult ferrers_q_neg_nu(Complex nu, const CutInterval& x) {
  const Complex prefactor = kSqrtPi * cap_power(x.value(), nu / 2.0) *
                            inverse_gamma_half_shift(nu) / pow2(nu);
  return scaled(kernel_integral(nu, x, Method::Closed), prefactor);
}

EvalResult ferrers_q_neg_nu_integral(Complex nu, const CutInterval& x) {
  const Complex prefactor = kSqrtPi * cap_power(x.value(), nu / 2.0) *
                            inverse_gamma_half_shift(nu) / pow2(nu);
  return scaled(kernel_integral(nu, x, Method::Integral), prefactor);
}

EvalResult ferrers_p_neg_nu(Complex nu, const CutInterval& x) {
  require_finite(nu, "degree");
  if (is_nonpositive_integer(nu + 1.0)) {
    throw PoleError("Gamma(nu + 1) has a pole");
  }
  const Complex value = cap_power(x.value(), nu / 2.0) / (pow2(nu) * gamma(nu + 1.0));
  return EvalResult{value, rounding(value), 0, true};
}

EvalResult ferrers_p_nu(Complex nu, const CutInterval& x, Method method) {
  require_finite(nu, "degree");
  const Complex power = cap_power(x.value(), nu / 2.0);
  const Complex outer = pow2(nu) * power / kSqrtPi;
  const Complex constant = gamma(nu + 0.5) * std::cos(std::numbers::pi * nu);
  const Complex slope =
      2.0 * gamma(nu + 1.0) / kSqrtPi * std::sin(std::numbers::pi * nu);
  const EvalResult integral = kernel_integral(nu, x, method);
  EvalResult out = scaled(integral, outer * slope);
  out.value += outer * constant;
  out.abs_err += rounding(outer * constant) + rounding(out.value);
  return out;
}

EvalResult ferrers_q_nu(Complex nu, const CutInterval& x, Method method) {
  require_finite(nu, "degree");
  const Complex power = cap_power(x.value(), nu / 2.0);
  const Complex constant = -pow2(nu - 1.0) * kSqrtPi * gamma(nu + 0.5) *
                           std::sin(std::numbers::pi * nu) * power;
  const Complex slope =
      pow2(nu) * gamma(nu + 1.0) * std::cos(std::numbers::pi * nu) * power;
  const EvalResult integral = kernel_integral(nu, x, method);
  EvalResult out = scaled(integral, slope);
  out.value += constant;
  out.abs_err += rounding(constant) + rounding(out.value);
  return out;
}

Complex definite_integral_cap(Complex nu) {
  if (!(nu.real() > 0.0)) {
    throw DomainError("cap integral requires Re nu > 0");
  }
  return kSqrtPi * gamma(nu) / (2.0 * gamma(nu + 0.5));
}

EvalResult cap_integral_quadrature(Complex nu, const quadrature::Tolerance& tol) {
  if (!(nu.real() > 0.0)) {
    throw DomainError("cap integral requires Re nu > 0");
  }
  const Complex exponent = nu - 1.0;
  quadrature::QuadratureSpec spec;
  // 1 - w^2 = (1 - w)(1 + w) with 1 - w taken from the exact offset.
  spec.integrand = [=](const quadrature::Abscissa& w) {
    return std::exp(exponent * (std::log(w.from_b) + std::log(2.0 - w.from_b)));
  };
  spec.interval = quadrature::FiniteInterval{0.0, 1.0};
  spec.singular_exponent_at_b = exponent;
  spec.rel_tol = tol.rel_tol;
  spec.abs_tol = tol.abs_tol;
  spec.max_subdivisions = tol.max_subdivisions;
  const auto q = quadrature::integrate(spec);
  return EvalResult{q.value, q.err_estimate, q.evaluations, q.converged};
}

}  // namespace lpm::ferrers
