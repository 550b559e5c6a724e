#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpm/hypergeometric.hpp"
#include "lpm/quadrature.hpp"
#include "support.hpp"

using lpm::Complex;
using lpm::quadrature::Abscissa;
using lpm::quadrature::FiniteInterval;
using lpm::quadrature::QuadratureSpec;
using lpm::quadrature::RayInterval;
using lpm::quadrature::integrate;
using lpm::quadrature::integrate_ray;
using lpm::test::rel_err;

namespace {

const double kHalfLog3 = 0.5 * std::log(3.0);
const double kWingQuarter = 3.7081493546027438369;  // Gamma(1/4)^2 / (2 sqrt(pi))

QuadratureSpec finite(std::function<Complex(double)> f, double a, double b) {
  QuadratureSpec spec;
  spec.integrand = [f](const Abscissa& x) { return f(x.t); };
  spec.interval = FiniteInterval{a, b};
  return spec;
}

QuadratureSpec wing_spec(double nu) {
  QuadratureSpec spec;
  const double p = nu - 1.0;
  spec.integrand = [p](const Abscissa& x) {
    return Complex(std::pow(x.from_a * (2.0 + x.from_a), p));
  };
  spec.interval = RayInterval{1.0, 2.0 * p};
  spec.singular_exponent_at_a = p;
  return spec;
}

}  // namespace

TEST_CASE("integrate: constant on the unit interval") {
  const auto r = integrate(finite([](double) { return Complex(1.0); }, 0.0, 1.0));
  CHECK(std::abs(r.value - 1.0) <= 1e-14);
  CHECK(r.err_estimate <= 1e-14);
  CHECK(r.converged);
  CHECK(r.evaluations > 0);
}

TEST_CASE("integrate: ray with algebraic decay") {
  QuadratureSpec spec;
  spec.integrand = [](const Abscissa& x) { return Complex(1.0 / (x.t * x.t - 1.0)); };
  spec.interval = RayInterval{2.0, -2.0};
  const auto r = integrate(spec);
  CHECK(std::abs(r.value - kHalfLog3) < 1e-12);
  CHECK(r.converged);
}

TEST_CASE("integrate: wing integral with an endpoint singularity") {
  const double oracle = lpm::test::wing_by_cosh_substitution(0.25);
  CHECK(std::abs(oracle - kWingQuarter) < 1e-10);
  const auto r = integrate(wing_spec(0.25));
  CHECK(rel_err(r.value, kWingQuarter) < 1e-12);
  CHECK(rel_err(r.value, oracle) < 1e-10);
}

TEST_CASE("integrate_ray: examples") {
  const auto inverse_square = integrate_ray([](Complex w) { return 1.0 / (w * w); }, 1.0, 1.0, -2.0);
  CHECK(std::abs(inverse_square.value - 1.0) < 1e-12);

  const auto log3 = integrate_ray([](Complex w) { return 1.0 / (w * w - 1.0); }, 2.0, 1.0, -2.0);
  CHECK(std::abs(log3.value - kHalfLog3) < 1e-12);

  // (w^2 - 1)^-1.3 in the split-power convention, from 2+i to the right.
  auto f = [](Complex w) {
    return std::exp(-1.3 * (std::log(w + 1.0) + std::log(w - 1.0)));
  };
  const auto r = integrate_ray(f, Complex(2.0, 1.0), 1.0, -2.6);
  // mpmath at 40 digits.
  const Complex expected(0.12221832444928842395, -0.13761936939541594818);
  CHECK(rel_err(r.value, expected) < 1e-11);

  // Independent oracle: t = s/(1-s) and dense Simpson in long double.
  auto mapped = [&](long double s) -> std::complex<long double> {
    if (s >= 1.0L) return 0.0L;
    const long double t = s / (1.0L - s);
    const std::complex<long double> w(2.0L + t, 1.0L);
    const auto v = std::exp(-1.3L * (std::log(w + 1.0L) + std::log(w - 1.0L)));
    return v / ((1.0L - s) * (1.0L - s));
  };
  const Complex dense(lpm::test::simpson(mapped, 0.0L, 1.0L, 200000));
  CHECK(rel_err(r.value, dense) < 1e-7);

  // Rotated direction: the integral of 1/w^2 from 1 along e^{i pi/4}.
  const Complex dir = std::polar(1.0, std::numbers::pi / 4.0);
  const auto rotated = integrate_ray([](Complex w) { return 1.0 / (w * w); }, 1.0, dir, -2.0);
  CHECK(std::abs(rotated.value - 1.0) < 1e-12);
  CHECK_THROWS_AS(integrate_ray([](Complex w) { return w; }, 1.0, 2.0, -2.0), lpm::DomainError);
}

TEST_CASE("integrate: declared power singularities") {
  for (double p : {-0.9, -0.5, -0.1, 0.5}) {
    CAPTURE(p);
    QuadratureSpec spec;
    spec.integrand = [p](const Abscissa& x) { return Complex(std::pow(x.from_a, p)); };
    spec.interval = FiniteInterval{0.0, 1.0};
    spec.singular_exponent_at_a = p;
    const auto r = integrate(spec);
    CHECK(rel_err(r.value, 1.0 / (p + 1.0)) <= spec.rel_tol);
  }
  // A singularity declared at b, with complex exponent.
  const Complex p(-0.6, 0.8);
  QuadratureSpec spec;
  spec.integrand = [p](const Abscissa& x) { return std::pow(Complex(x.from_b), p); };
  spec.interval = FiniteInterval{-1.0, 2.0};
  spec.singular_exponent_at_b = p;
  const auto r = integrate(spec);
  CHECK(rel_err(r.value, std::pow(Complex(3.0), p + 1.0) / (p + 1.0)) < 1e-10);
}

TEST_CASE("integrate: linearity and interval additivity") {
  lpm::test::Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const Complex alpha = rng.complex_in(-2.0, 2.0, -2.0, 2.0);
    const Complex beta = rng.complex_in(-2.0, 2.0, -2.0, 2.0);
    const double k = rng.uniform(0.5, 6.0);
    const double a = rng.uniform(-2.0, 0.0);
    const double b = rng.uniform(0.5, 3.0);
    auto f = [k](double t) { return Complex(std::cos(k * t), std::exp(-t * t)); };
    auto g = [](double t) { return Complex(1.0 / (1.0 + t * t), t * t * t); };

    const auto rf = integrate(finite(f, a, b));
    const auto rg = integrate(finite(g, a, b));
    const auto rc = integrate(finite([&](double t) { return alpha * f(t) + beta * g(t); }, a, b));
    const double combined =
        rc.err_estimate + std::abs(alpha) * rf.err_estimate + std::abs(beta) * rg.err_estimate;
    CHECK(std::abs(rc.value - (alpha * rf.value + beta * rg.value)) <= 10.0 * combined + 1e-15);

    const double c = rng.uniform(a, b);
    const auto left = integrate(finite(f, a, c));
    const auto right = integrate(finite(f, c, b));
    const double sum_err = rf.err_estimate + left.err_estimate + right.err_estimate;
    CHECK(std::abs(left.value + right.value - rf.value) <= 10.0 * sum_err + 1e-15);
  }
}

TEST_CASE("integrate: error estimates are honest on a corpus with known values") {
  struct Known {
    QuadratureSpec spec;
    Complex exact;
  };
  std::vector<Known> corpus;
  corpus.push_back({finite([](double) { return Complex(1.0); }, 0.0, 1.0), 1.0});
  {
    QuadratureSpec s;
    s.integrand = [](const Abscissa& x) { return Complex(1.0 / (x.t * x.t - 1.0)); };
    s.interval = RayInterval{2.0, -2.0};
    corpus.push_back({s, kHalfLog3});
  }
  corpus.push_back({wing_spec(0.25), kWingQuarter});
  {
    QuadratureSpec s;
    s.integrand = [](const Abscissa& x) { return Complex(1.0 / (x.t * x.t)); };
    s.interval = RayInterval{1.0, -2.0};
    corpus.push_back({s, 1.0});
  }
  for (double nu : {0.1, 0.2, 0.3, 0.4}) {
    const Complex exact = lpm::gamma(nu) * lpm::gamma(0.5 - nu) / (2.0 * std::sqrt(std::numbers::pi));
    corpus.push_back({wing_spec(nu), exact});
  }
  for (double nu : {0.25, 0.5, 1.0, 2.5}) {
    QuadratureSpec s;
    const double p = nu - 1.0;
    s.integrand = [p](const Abscissa& x) {
      return Complex(std::pow(x.from_b * (2.0 - x.from_b), p));
    };
    s.interval = FiniteInterval{0.0, 1.0};
    s.singular_exponent_at_b = p;
    const Complex exact = std::sqrt(std::numbers::pi) * lpm::gamma(nu) / (2.0 * lpm::gamma(nu + 0.5));
    corpus.push_back({s, exact});
  }
  for (double p : {-0.9, -0.5, -0.1, 0.5}) {
    QuadratureSpec s;
    s.integrand = [p](const Abscissa& x) { return Complex(std::pow(x.from_a, p)); };
    s.interval = FiniteInterval{0.0, 1.0};
    s.singular_exponent_at_a = p;
    corpus.push_back({s, 1.0 / (p + 1.0)});
  }

  int honest = 0;
  for (const auto& k : corpus) {
    const auto r = integrate(k.spec);
    // A zero estimate cannot be honest unless the error is exactly zero.
    if (std::abs(r.value - k.exact) <= 10.0 * r.err_estimate + 4e-16 * std::abs(k.exact)) ++honest;
  }
  CHECK(static_cast<double>(honest) >= 0.95 * static_cast<double>(corpus.size()));
}

TEST_CASE("integrate: argument validation and failures") {
  auto one = finite([](double) { return Complex(1.0); }, 0.0, 1.0);

  auto bad = one;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate(bad), lpm::DomainError);
  bad = one;
  bad.max_subdivisions = 0;
  CHECK_THROWS_AS(integrate(bad), lpm::DomainError);

  auto non_integrable = one;
  non_integrable.singular_exponent_at_a = -1.2;
  CHECK_THROWS_AS(integrate(non_integrable), lpm::NonIntegrable);

  QuadratureSpec slow_ray;
  slow_ray.integrand = [](const Abscissa& x) { return Complex(1.0 / x.t); };
  slow_ray.interval = RayInterval{1.0, -1.0};
  CHECK_THROWS_AS(integrate(slow_ray), lpm::NonIntegrable);

  // An undeclared endpoint singularity cannot be resolved with one split.
  auto hard = finite([](double t) { return Complex(1.0 / std::sqrt(t)); }, 0.0, 1.0);
  hard.max_subdivisions = 1;
  CHECK_THROWS_AS(integrate(hard), lpm::QuadratureFailure);
  hard.allow_unconverged = true;
  const auto partial = integrate(hard);
  CHECK_FALSE(partial.converged);
  CHECK(partial.err_estimate > std::max(hard.abs_tol, hard.rel_tol * std::abs(partial.value)));

  // Given enough room the same integrand converges without a declaration.
  hard.max_subdivisions = 2000;
  hard.allow_unconverged = false;
  CHECK(std::abs(integrate(hard).value - 2.0) < 1e-8);

  auto empty = one;
  empty.interval = FiniteInterval{0.5, 0.5};
  CHECK(integrate(empty).value == Complex(0.0));
}

TEST_CASE("integrate: deterministic") {
  const auto a = integrate(wing_spec(0.3));
  const auto b = integrate(wing_spec(0.3));
  CHECK(a.value == b.value);
  CHECK(a.err_estimate == b.err_estimate);
  CHECK(a.evaluations == b.evaluations);
}
