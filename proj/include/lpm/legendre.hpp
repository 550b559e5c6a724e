#pragma once

#include "lpm/quadrature.hpp"
#include "lpm/types.hpp"

// Associated Legendre functions P and Q of complex degree nu with order
// +nu or -nu, on the plane cut along (-inf, 1].
//
// (z^2 - 1)^alpha always means (z + 1)^alpha (z - 1)^alpha with principal
// branches on each factor. Closed forms are evaluated with the direct 2F1
// series and therefore need |1/z^2| <= 0.95 (|z| >= ~1.026); the integral
// forms integrate along the horizontal ray w = z + t, t >= 0.

namespace lpm::legendre {

/// Degree nu. Checks are operation specific, see the helpers.
struct DegreeParam {
  Complex nu;

  DegreeParam(Complex value);  // NOLINT(google-explicit-constructor)
  DegreeParam(double value) : DegreeParam(Complex(value)) {}  // NOLINT

  /// True when nu is within 1e-12 of -1/2, -3/2, -5/2, ...
  bool near_negative_half_integer() const;
};

/// A point of C \ (-inf, 1]. Construction throws CutError on the cut.
class CutPlanePoint {
 public:
  CutPlanePoint(Complex z);  // NOLINT(google-explicit-constructor)
  CutPlanePoint(double z) : CutPlanePoint(Complex(z)) {}  // NOLINT
  Complex value() const { return z_; }

 private:
  Complex z_;
};

/// Quadrature tolerances used by the integral representations.
inline constexpr quadrature::Tolerance kIntegralTolerance{1e-12, 1e-14, 4000};

/// (z+1)^alpha (z-1)^alpha, principal branch on each factor.
Complex split_power(const CutPlanePoint& z, Complex alpha);

/// Q_nu^mu(z) from its 2F1 definition in powers of 1/z^2.
EvalResult q_nu_mu(Complex nu, Complex mu, const CutPlanePoint& z);

/// Q_nu^nu(z).
EvalResult q_nu_nu(const DegreeParam& nu, const CutPlanePoint& z);

/// The antiderivative of 1/(z^2-1)^(nu+1) that vanishes at infinity:
/// -1/((2nu+1) z^(2nu+1)) 2F1(nu+1/2, nu+1; nu+3/2; 1/z^2).
EvalResult antiderivative(const DegreeParam& nu, const CutPlanePoint& z);

/// The same antiderivative written through Q_nu^nu:
/// -2^-nu e^(-i pi nu) Q_nu^nu(z) / (Gamma(nu+1) (z^2-1)^(nu/2)).
EvalResult antiderivative_via_q(const DegreeParam& nu, const CutPlanePoint& z);

/// int_z^inf dw / (w^2-1)^(nu+1) along w = z + t. Needs Re nu > -1/2.
EvalResult ray_integral(const DegreeParam& nu, const CutPlanePoint& z,
                        const quadrature::Tolerance& tol = kIntegralTolerance);

/// Q_nu^nu(z) = 2^nu Gamma(nu+1) e^(i nu pi) (z^2-1)^(nu/2) int_z^inf ...
EvalResult integrate_q_rep(const DegreeParam& nu, const CutPlanePoint& z,
                           const quadrature::Tolerance& tol = kIntegralTolerance);

/// Q_nu^-nu(z). Closed: the 2F1 definition at mu = -nu. Integral:
/// sqrt(pi) e^(-i nu pi) (z^2-1)^(nu/2) / (2^nu Gamma(nu+1/2)) int_z^inf ...
EvalResult q_nu_neg_nu(const DegreeParam& nu, const CutPlanePoint& z,
                       Method method = Method::Closed);

/// P_nu^nu(z) = 2^nu Gamma(nu+1/2)/sqrt(pi) (z^2-1)^(nu/2)
///            + (2/pi) sin(nu pi) e^(-i nu pi) Q_nu^nu(z),
/// with Q_nu^nu taken from the closed form or from its ray integral.
EvalResult p_nu_nu(const DegreeParam& nu, const CutPlanePoint& z,
                   Method method = Method::Closed);

/// P_nu^-nu(z) = (z^2-1)^(nu/2) / (2^nu Gamma(nu+1)).
EvalResult p_nu_neg_nu(const DegreeParam& nu, const CutPlanePoint& z);

/// P_lambda^lambda(w) = ((w+1)/(w-1))^(lambda/2)
///                     2F1(lambda+1, -lambda; 1-lambda; (1-w)/2) / Gamma(1-lambda).
/// Needs |1 - w| / 2 <= 0.95.
EvalResult p_order_equals_degree_series(Complex lambda, const CutPlanePoint& w);

/// Q_nu^nu(z) through the Whipple relation,
/// sqrt(pi/2) Gamma(2nu+1) (z^2-1)^(-1/4) e^(i nu pi) P_{-nu-1/2}^{-nu-1/2}(w),
/// w = z / sqrt(z^2-1). The relation holds for Re z > 0 only.
EvalResult whipple_q_from_p(const DegreeParam& nu, const CutPlanePoint& z);

/// z / sqrt(z^2 - 1), the argument the Whipple relation maps to.
Complex whipple_argument(const CutPlanePoint& z);

/// int_1^inf (w^2-1)^(nu-1) dw = Gamma(nu) Gamma(1/2-nu) / (2 sqrt(pi)),
/// 0 < Re nu < 1/2.
Complex definite_integral_wing(Complex nu);

/// The same integral by quadrature.
EvalResult wing_integral_quadrature(
    Complex nu, const quadrature::Tolerance& tol = kIntegralTolerance);

}  // namespace lpm::legendre
