#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lpm {

using Complex = std::complex<double>;

/// A computed value with an absolute error estimate. When `converged` is
/// false, `abs_err` is only the magnitude of the last term or panel and
/// should be treated as untrusted.
struct EvalResult {
  Complex value{};
  double abs_err = 0.0;
  std::int64_t terms_used = 0;
  bool converged = true;
};

enum class ErrorKind {
  Pole,
  Domain,
  NoConvergence,
  Cut,
  QuadratureFailure,
  NonIntegrable,
  UnknownIdentity,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define LPM_DEFINE_ERROR(Name, Kind)                                 \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(Kind, what) {}    \
  };

LPM_DEFINE_ERROR(PoleError, ErrorKind::Pole)
LPM_DEFINE_ERROR(DomainError, ErrorKind::Domain)
LPM_DEFINE_ERROR(NoConvergence, ErrorKind::NoConvergence)
LPM_DEFINE_ERROR(CutError, ErrorKind::Cut)
LPM_DEFINE_ERROR(QuadratureFailure, ErrorKind::QuadratureFailure)
LPM_DEFINE_ERROR(NonIntegrable, ErrorKind::NonIntegrable)
LPM_DEFINE_ERROR(UnknownIdentity, ErrorKind::UnknownIdentity)

#undef LPM_DEFINE_ERROR

/// Throws DomainError if either component is NaN or infinite.
void require_finite(Complex z, std::string_view what);

/// Which route an evaluation takes: the hypergeometric closed form or the
/// integral representation.
enum class Method { Closed, Integral };

std::string_view to_string(Method method);

}  // namespace lpm
