#include "lpm/legendre.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lpm/hypergeometric.hpp"

namespace lpm::legendre {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kHalfIntegerTolerance = 1e-12;
const double kSqrtPi = std::sqrt(std::numbers::pi);
const Complex kI{0.0, 1.0};

// Relative rounding budget for the elementary prefactors.
double prefactor_rounding(Complex value) { return 64.0 * kEps * std::abs(value); }

Complex split_power_unchecked(Complex z, Complex alpha) {
  return std::exp(alpha * std::log(z + 1.0)) * std::exp(alpha * std::log(z - 1.0));
}

Complex phase(Complex nu_pi_multiple) { return std::exp(kI * std::numbers::pi * nu_pi_multiple); }

Complex pow2(Complex exponent) { return std::exp(exponent * std::numbers::ln2); }

EvalResult scaled(const EvalResult& base, Complex factor) {
  EvalResult out = base;
  out.value = base.value * factor;
  out.abs_err = base.abs_err * std::abs(factor) + prefactor_rounding(out.value);
  return out;
}

void require_theorem_degree(const DegreeParam& nu) {
  if (nu.near_negative_half_integer()) {
    throw PoleError("degree is a negative half-integer");
  }
}

void require_integral_degree(const DegreeParam& nu) {
  if (!(nu.nu.real() > -0.5)) {
    throw DomainError("integral representation requires Re nu > -1/2");
  }
}

EvalResult from_quadrature(const quadrature::QuadratureResult& q) {
  return EvalResult{q.value, q.err_estimate, q.evaluations, q.converged};
}

}  // namespace

DegreeParam::DegreeParam(Complex value) : nu(value) {
  require_finite(value, "degree");
}

bool DegreeParam::near_negative_half_integer() const {
  if (std::abs(nu.imag()) > kHalfIntegerTolerance) return false;
  const double shifted = nu.real() + 0.5;
  if (shifted > kHalfIntegerTolerance) return false;
  return std::abs(shifted - std::round(shifted)) <= kHalfIntegerTolerance;
}

CutPlanePoint::CutPlanePoint(Complex z) : z_(z) {
  require_finite(z, "point");
  if (z.imag() == 0.0 && z.real() <= 1.0) {
    throw CutError("point lies on the cut (-inf, 1]");
  }
}

Complex split_power(const CutPlanePoint& z, Complex alpha) {
  require_finite(alpha, "exponent");
  return split_power_unchecked(z.value(), alpha);
}

EvalResult q_nu_mu(Complex nu, Complex mu, const CutPlanePoint& point) {
  require_finite(nu, "degree");
  require_finite(mu, "order");
  const Complex z = point.value();
  const Complex inv_z2 = 1.0 / (z * z);
  if (std::abs(inv_z2) > kRadiusGuard) {
    throw DomainError("closed form needs |1/z^2| <= 0.95; move z outward or "
                      "use the integral representation");
  }
  const Complex s = nu + mu;
  if (is_nonpositive_integer(s + 1.0)) {
    throw PoleError("Q_nu^mu: nu + mu is a negative integer");
  }
  const EvalResult series =
      gauss_2f1((s + 2.0) / 2.0, (s + 1.0) / 2.0, nu + 1.5, inv_z2);
  const Complex prefactor = kSqrtPi * phase(mu) * gamma(s + 1.0) *
                            split_power(point, mu / 2.0) /
                            (pow2(nu + 1.0) * gamma(nu + 1.5) *
                             std::exp((s + 1.0) * std::log(z)));
  return scaled(series, prefactor);
}

EvalResult q_nu_nu(const DegreeParam& nu, const CutPlanePoint& z) {
  require_theorem_degree(nu);
  return q_nu_mu(nu.nu, nu.nu, z);
}

EvalResult antiderivative(const DegreeParam& nu, const CutPlanePoint& point) {
  require_theorem_degree(nu);
  const Complex z = point.value();
  const Complex inv_z2 = 1.0 / (z * z);
  if (std::abs(inv_z2) > kRadiusGuard) {
    throw DomainError("antiderivative needs |1/z^2| <= 0.95");
  }
  const Complex v = nu.nu;
  const EvalResult series = gauss_2f1(v + 0.5, v + 1.0, v + 1.5, inv_z2);
  const Complex prefactor =
      -1.0 / ((2.0 * v + 1.0) * std::exp((2.0 * v + 1.0) * std::log(z)));
  return scaled(series, prefactor);
}

EvalResult antiderivative_via_q(const DegreeParam& nu, const CutPlanePoint& z) {
  const Complex v = nu.nu;
  const EvalResult q = q_nu_nu(nu, z);
  const Complex factor =
      -pow2(-v) * phase(-v) / (gamma(v + 1.0) * split_power(z, v / 2.0));
  return scaled(q, factor);
}

EvalResult ray_integral(const DegreeParam& nu, const CutPlanePoint& point,
                        const quadrature::Tolerance& tol) {
  require_integral_degree(nu);
  const Complex z = point.value();
  const Complex exponent = -(nu.nu + 1.0);
  const Complex z_minus_one = z - 1.0;
  // The integrand varies on the scale |z - 1| near the start of the ray.
  const double scale = std::max(std::abs(z_minus_one), 1e-8);
  quadrature::QuadratureSpec spec;
  spec.integrand = [=](const quadrature::Abscissa& x) {
    const Complex w_minus_one = z_minus_one + x.from_a;
    return std::exp(exponent * (std::log(w_minus_one + 2.0) + std::log(w_minus_one)));
  };
  spec.interval = quadrature::RayInterval{0.0, 2.0 * exponent, scale};
  spec.rel_tol = tol.rel_tol;
  spec.abs_tol = tol.abs_tol;
  spec.max_subdivisions = tol.max_subdivisions;
  return from_quadrature(quadrature::integrate(spec));
}

EvalResult integrate_q_rep(const DegreeParam& nu, const CutPlanePoint& z,
                           const quadrature::Tolerance& tol) {
  require_integral_degree(nu);
  const Complex v = nu.nu;
  const EvalResult integral = ray_integral(nu, z, tol);
  const Complex prefactor =
      pow2(v) * gamma(v + 1.0) * phase(v) * split_power(z, v / 2.0);
  return scaled(integral, prefactor);
}

EvalResult q_nu_neg_nu(const DegreeParam& nu, const CutPlanePoint& z,
                       Method method) {
  require_theorem_degree(nu);
  const Complex v = nu.nu;
  if (method == Method::Closed) return q_nu_mu(v, -v, z);
  require_integral_degree(nu);
  const EvalResult integral = ray_integral(nu, z);
  const Complex prefactor =
      kSqrtPi * phase(-v) * split_power(z, v / 2.0) / (pow2(v) * gamma(v + 0.5));
  return scaled(integral, prefactor);
}

EvalResult p_nu_nu(const DegreeParam& nu, const CutPlanePoint& z, Method method) {
  require_theorem_degree(nu);
  const Complex v = nu.nu;
  const Complex power = split_power(z, v / 2.0);
  const Complex first = pow2(v) * gamma(v + 0.5) / kSqrtPi * power;
  const Complex sine = std::sin(std::numbers::pi * v);

  EvalResult second;
  if (method == Method::Closed) {
    second = scaled(q_nu_nu(nu, z), 2.0 / std::numbers::pi * sine * phase(-v));
  } else {
    require_integral_degree(nu);
    const Complex factor =
        pow2(v + 1.0) * gamma(v + 1.0) * power / std::numbers::pi * sine;
    second = scaled(ray_integral(nu, z), factor);
  }
  EvalResult out = second;
  out.value = first + second.value;
  out.abs_err = second.abs_err + prefactor_rounding(first) +
                prefactor_rounding(out.value);
  return out;
}

EvalResult p_nu_neg_nu(const DegreeParam& nu, const CutPlanePoint& z) {
  const Complex v = nu.nu;
  if (is_nonpositive_integer(v + 1.0)) {
    throw PoleError("P_nu^-nu: Gamma(nu+1) has a pole");
  }
  const Complex value = split_power(z, v / 2.0) / (pow2(v) * gamma(v + 1.0));
  return EvalResult{value, prefactor_rounding(value), 0, true};
}

EvalResult p_order_equals_degree_series(Complex lambda, const CutPlanePoint& point) {
  require_finite(lambda, "degree");
  const Complex w = point.value();
  const Complex x = (1.0 - w) / 2.0;
  if (std::abs(x) > kRadiusGuard) {
    throw DomainError("P_lambda^lambda series needs |1 - w|/2 <= 0.95");
  }
  if (is_nonpositive_integer(1.0 - lambda)) {
    throw PoleError("P_lambda^lambda series: 1 - lambda is a nonpositive integer");
  }
  const EvalResult series = gauss_2f1(lambda + 1.0, -lambda, 1.0 - lambda, x);
  const Complex prefactor =
      std::pow((w + 1.0) / (w - 1.0), lambda / 2.0) / gamma(1.0 - lambda);
  return scaled(series, prefactor);
}

Complex whipple_argument(const CutPlanePoint& z) {
  return z.value() / split_power(z, 0.5);
}

EvalResult whipple_q_from_p(const DegreeParam& nu, const CutPlanePoint& z) {
  require_theorem_degree(nu);
  if (!(z.value().real() > 0.0)) {
    throw DomainError("Whipple relation requires Re z > 0");
  }
  const Complex v = nu.nu;
  const CutPlanePoint w(whipple_argument(z));
  const EvalResult p = p_order_equals_degree_series(-v - 0.5, w);
  const Complex factor = std::sqrt(std::numbers::pi / 2.0) * gamma(2.0 * v + 1.0) *
                         split_power(z, -0.25) * phase(v);
  return scaled(p, factor);
}

Complex definite_integral_wing(Complex nu) {
  if (!(nu.real() > 0.0 && nu.real() < 0.5)) {
    throw DomainError("wing integral requires 0 < Re nu < 1/2");
  }
  return gamma(nu) * gamma(0.5 - nu) / (2.0 * kSqrtPi);
}

EvalResult wing_integral_quadrature(Complex nu, const quadrature::Tolerance& tol) {
  if (!(nu.real() > 0.0 && nu.real() < 0.5)) {
    throw DomainError("wing integral requires 0 < Re nu < 1/2");
  }
  const Complex exponent = nu - 1.0;
  quadrature::QuadratureSpec spec;
  // w = 1 + u, so w^2 - 1 = u (2 + u) with u exact.
  spec.integrand = [=](const quadrature::Abscissa& x) {
    const double u = x.from_a;
    return std::exp(exponent * (std::log(u) + std::log(2.0 + u)));
  };
  spec.interval = quadrature::RayInterval{1.0, 2.0 * exponent, 1.0};
  spec.singular_exponent_at_a = exponent;
  spec.rel_tol = tol.rel_tol;
  spec.abs_tol = tol.abs_tol;
  spec.max_subdivisions = tol.max_subdivisions;
  return from_quadrature(quadrature::integrate(spec));
}

}  // namespace lpm::legendre
