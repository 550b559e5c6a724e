#include "lpm/types.hpp"

#include <cmath>

namespace lpm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Cut: return "CutError";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::UnknownIdentity: return "UnknownIdentity";
  }
  return "Error";
}

std::string_view to_string(Method method) {
  return method == Method::Closed ? "closed" : "integral";
}

void require_finite(Complex z, std::string_view what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

}  // namespace lpm
