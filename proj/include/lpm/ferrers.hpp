#pragma once

#include "lpm/quadrature.hpp"
#include "lpm/types.hpp"

// Ferrers functions (Legendre functions on the cut) of complex degree nu
// and order +nu or -nu, for real x in (-1, 1). (1 - x^2)^alpha is the
// principal power of a positive base.

namespace lpm::ferrers {

/// A point of the open interval (-1, 1). Construction throws DomainError
/// otherwise.
class CutInterval {
 public:
  CutInterval(double x);  // NOLINT(google-explicit-constructor)
  double value() const { return x_; }

 private:
  double x_;
};

inline constexpr quadrature::Tolerance kIntegralTolerance{1e-12, 1e-14, 4000};

/// int_0^x dw / (1 - w^2)^(nu+1). Closed: x 2F1(1/2, nu+1; 3/2; x^2), which
/// needs x^2 <= 0.95. Integral: adaptive quadrature.
EvalResult kernel_integral(Complex nu, const CutInterval& x,
                           Method method = Method::Integral);

/// Q_nu^-nu(x) = sqrt(pi) x (1-x^2)^(nu/2) / (2^nu Gamma(nu+1/2))
///               2F1(1/2, nu+1; 3/2; x^2).
EvalResult ferrers_q_neg_nu(Complex nu, const CutInterval& x);

/// Q_nu^-nu(x) with the hypergeometric factor replaced by the integral.
EvalResult ferrers_q_neg_nu_integral(Complex nu, const CutInterval& x);

/// P_nu^-nu(x) = (1-x^2)^(nu/2) / (2^nu Gamma(nu+1)).
EvalResult ferrers_p_neg_nu(Complex nu, const CutInterval& x);

/// P_nu^nu(x) = 2^nu (1-x^2)^(nu/2) / sqrt(pi)
///   [Gamma(nu+1/2) cos(nu pi) + 2 Gamma(nu+1)/sqrt(pi) sin(nu pi) I(x)],
/// I = kernel_integral evaluated with `method`.
EvalResult ferrers_p_nu(Complex nu, const CutInterval& x,
                        Method method = Method::Integral);

/// Q_nu^nu(x) = -2^(nu-1) sqrt(pi) Gamma(nu+1/2) sin(nu pi) (1-x^2)^(nu/2)
///            + 2^nu Gamma(nu+1) cos(nu pi) (1-x^2)^(nu/2) I(x).
EvalResult ferrers_q_nu(Complex nu, const CutInterval& x,
                        Method method = Method::Integral);

/// int_0^1 (1-w^2)^(nu-1) dw = sqrt(pi) Gamma(nu) / (2 Gamma(nu+1/2)),
/// Re nu > 0.
Complex definite_integral_cap(Complex nu);

/// The same integral by singular quadrature.
EvalResult cap_integral_quadrature(
    Complex nu, const quadrature::Tolerance& tol = kIntegralTolerance);

}  // namespace lpm::ferrers
