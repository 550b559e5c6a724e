#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "lpm/types.hpp"

namespace lpm::cli {

/// Parses `RE`, `RE+IMi` or `RE-IMi` (decimal floats, no spaces).
std::optional<Complex> parse_complex(std::string_view text);

/// The eight functions with order equal to plus or minus the degree.
enum class Selector { Qnn, Qnmn, Pnn, Pnmn, FQnn, FQnmn, FPnn, FPnmn };

std::optional<Selector> parse_selector(std::string_view name);
std::string_view to_string(Selector selector);
bool is_ferrers(Selector selector);

struct Evaluation {
  EvalResult result;
  Method method;
  /// True when a closed-form request fell back to the integral path.
  bool fallback = false;
};

/// Evaluates `selector` at `point` (real part only for Ferrers selectors).
/// A closed-form request that raises DomainError is retried with the
/// integral representation.
Evaluation evaluate(Selector selector, Complex nu, Complex point, Method method);

/// Runs the command line; returns the process exit code
/// (0 success, 1 verification failure, 2 usage or domain error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpm::cli
