#pragma once

#include <cstdint>

#include "lpm/types.hpp"

namespace lpm {

/// Largest |z| at which the plain 2F1 series is evaluated.
inline constexpr double kRadiusGuard = 0.95;

/// Distance below which an argument counts as a nonpositive integer.
inline constexpr double kPoleTolerance = 1e-14;

struct SeriesOptions {
  std::int64_t max_terms = 20000;
  /// When false, a series that hits max_terms returns converged = false
  /// instead of throwing NoConvergence.
  bool throw_on_no_convergence = true;
};

bool is_nonpositive_integer(Complex z, double tol = kPoleTolerance);

/// Complex Gamma function (Lanczos, g = 7, with reflection for Re z < 1/2).
/// Throws PoleError at z = 0, -1, -2, ...
Complex gamma(Complex z);

/// Rising factorial (z)_n; (z)_0 = 1.
Complex pochhammer(Complex z, unsigned n);

/// Gauss 2F1(a, b; c; z) summed directly for |z| <= kRadiusGuard.
///
/// Summation stops once |term| <= eps * |sum| for three consecutive terms.
/// The error estimate combines a geometric bound on the tail with the
/// accumulated rounding of the partial sums.
EvalResult gauss_2f1(Complex a, Complex b, Complex c, Complex z,
                     const SeriesOptions& options = {});

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
EvalResult gauss_2f1_derivative(Complex a, Complex b, Complex c, Complex z,
                                const SeriesOptions& options = {});

/// 2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
/// valid for Re(c - a - b) > 0.
Complex gauss_sum(Complex a, Complex b, Complex c);

}  // namespace lpm
