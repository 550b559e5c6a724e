#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lpm/types.hpp"

namespace lpm::verifier {

/// One evaluation point: the degree and, depending on the identity, a point
/// of the cut plane, a real x in (-1, 1) (stored as x + 0i), or nothing.
struct Sample {
  Complex nu;
  Complex point;
};

enum class PointKind { CutPlane, Interval, None };

struct IdentityInfo {
  std::string_view id;
  PointKind point_kind;
  double default_tolerance;
};

/// The fixed registry, in report order.
const std::vector<IdentityInfo>& registry();

/// Throws UnknownIdentity.
const IdentityInfo& lookup(std::string_view identity_id);

struct IdentityCase {
  std::string identity_id;
  std::vector<Sample> parameter_sample;
  double tolerance;
};

struct Failure {
  Sample parameters;
  double residual;
  /// Empty unless the evaluation threw.
  std::string error;
};

struct IdentityReport {
  std::string identity_id;
  std::int64_t samples_run = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  std::vector<Failure> failures;
  bool passed = false;
};

/// LHS and RHS of one identity at one sample.
struct Sides {
  Complex lhs;
  Complex rhs;
};

/// Evaluates both sides of `identity_id` at `sample`. Evaluation errors
/// propagate as exceptions.
Sides evaluate_sides(std::string_view identity_id, const Sample& sample);

/// |lhs - rhs| / max(1, |rhs|).
double residual(const Sides& sides);

/// True when `sample` lies inside the identity's sampling domain.
bool admissible(std::string_view identity_id, const Sample& sample);

/// `count` samples drawn for `identity_id`, deterministic in (seed, id).
std::vector<Sample> draw_samples(std::string_view identity_id,
                                 std::uint64_t seed, std::int64_t count);

IdentityReport run_identity(const IdentityCase& identity_case);

using ToleranceMap = std::map<std::string, double, std::less<>>;

/// Runs every registry identity. Identities run concurrently; the result is
/// in registry order and depends only on the arguments.
std::vector<IdentityReport> run_suite(std::uint64_t seed,
                                      std::int64_t samples_per_identity,
                                      const ToleranceMap& tolerances = {});

bool all_passed(const std::vector<IdentityReport>& reports);

/// 17-significant-digit decimal rendering used in every report.
std::string format_real(double value);

/// "RE", "RE+IMi" or "RE-IMi" with 17 significant digits.
std::string format_complex(Complex value);

std::string reports_to_json(const std::vector<IdentityReport>& reports);
std::string reports_to_csv(const std::vector<IdentityReport>& reports);

}  // namespace lpm::verifier
