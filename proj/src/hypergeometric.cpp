#include "lpm/hypergeometric.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lpm {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << z.real() << ',' << z.imag() << ')';
  return os.str();
}

// Gamma for Re z >= 1/2, evaluated in log form so that |z| ~ 50 stays finite.
Complex gamma_right(Complex z) {
  z -= 1.0;
  Complex series = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    series += kLanczosCoef[i] / (z + static_cast<double>(i));
  }
  const Complex t = z + kLanczosG + 0.5;
  const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return std::exp(half_log_two_pi + (z + 0.5) * std::log(t) - t) * series;
}

// sin(pi z) with the real part reduced modulo 2 first.
Complex sin_pi(Complex z) {
  const double reduced = z.real() - 2.0 * std::round(z.real() / 2.0);
  return std::sin(std::numbers::pi * Complex(reduced, z.imag()));
}

}  // namespace

bool is_nonpositive_integer(Complex z, double tol) {
  if (std::abs(z.imag()) > tol || z.real() > tol) return false;
  return std::abs(z.real() - std::round(z.real())) <= tol;
}

Complex gamma(Complex z) {
  require_finite(z, "gamma argument");
  if (is_nonpositive_integer(z)) {
    throw PoleError("gamma: pole at " + describe(z));
  }
  if (z.real() < 0.5) {
    return std::numbers::pi / (sin_pi(z) * gamma_right(1.0 - z));
  }
  return gamma_right(z);
}

Complex pochhammer(Complex z, unsigned n) {
  Complex product = 1.0;
  for (unsigned i = 0; i < n; ++i) product *= z + static_cast<double>(i);
  return product;
}

EvalResult gauss_2f1(Complex a, Complex b, Complex c, Complex z,
                     const SeriesOptions& options) {
  require_finite(a, "2F1 parameter a");
  require_finite(b, "2F1 parameter b");
  require_finite(c, "2F1 parameter c");
  require_finite(z, "2F1 argument");
  if (is_nonpositive_integer(c)) {
    throw PoleError("2F1: c is a nonpositive integer " + describe(c));
  }
  const double radius = std::abs(z);
  if (radius > kRadiusGuard) {
    throw DomainError("2F1: |z| = " + std::to_string(radius) +
                      " exceeds the series radius guard 0.95");
  }

  // Neumaier-compensated sum, componentwise.
  Complex sum = 1.0;
  Complex compensation = 0.0;
  Complex term = 1.0;
  double abs_sum = 1.0;
  int quiet_run = 0;
  std::int64_t n = 0;
  while (n < options.max_terms) {
    const double k = static_cast<double>(n);
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    ++n;
    const Complex next = sum + term;
    auto compensate = [](double s, double t, double s_new) {
      return std::abs(s) >= std::abs(t) ? (s - s_new) + t : (t - s_new) + s;
    };
    compensation += Complex(compensate(sum.real(), term.real(), next.real()),
                            compensate(sum.imag(), term.imag(), next.imag()));
    sum = next;
    abs_sum += std::abs(term);
    if (std::abs(term) <= kEps * std::abs(sum + compensation)) {
      if (++quiet_run == 3) break;
    } else {
      quiet_run = 0;
    }
  }

  EvalResult result;
  result.value = sum + compensation;
  result.terms_used = n;
  result.converged = quiet_run == 3;
  if (!result.converged) {
    result.abs_err = std::abs(term);
    if (options.throw_on_no_convergence) {
      throw NoConvergence("2F1: no convergence after " +
                          std::to_string(options.max_terms) + " terms");
    }
    return result;
  }
  const double tail = std::abs(term) * radius / (1.0 - radius);
  result.abs_err = 3.0 * tail + 4.0 * kEps * abs_sum;
  return result;
}

EvalResult gauss_2f1_derivative(Complex a, Complex b, Complex c, Complex z,
                                const SeriesOptions& options) {
  if (is_nonpositive_integer(c)) {
    throw PoleError("2F1': c is a nonpositive integer " + describe(c));
  }
  EvalResult shifted = gauss_2f1(a + 1.0, b + 1.0, c + 1.0, z, options);
  const Complex factor = a * b / c;
  shifted.value *= factor;
  shifted.abs_err *= std::abs(factor);
  return shifted;
}

Complex gauss_sum(Complex a, Complex b, Complex c) {
  const Complex excess = c - a - b;
  if (!(excess.real() > 0.0)) {
    throw DomainError("gauss_sum: requires Re(c - a - b) > 0");
  }
  return gamma(c) * gamma(excess) / (gamma(c - a) * gamma(c - b));
}

}  // namespace lpm
